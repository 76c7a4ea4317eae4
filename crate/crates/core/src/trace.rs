//! Audit trail of raising-operator applications.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{Generator, Tag};
use crate::error::{Error, Result};
use crate::scalar::FieldScalar;
use crate::verma::{ModuleVector, VermaModule};

/// Which stage of a reduction produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    /// Lowering the number of L-factors with `I_x`.
    StripL,
    /// Contracting I-factors against a nonzero `c_I`.
    ContractI,
    /// The shift `L_{q_1 − y}` before the L-ladder.
    Shift,
    /// `L_z` removing the largest I-factor.
    Ladder,
    /// `L_{z − x'}` replacing an entry that would give a zero scalar.
    Detour,
    /// `I_ε` converting L-factors outside `ℤa`.
    Epsilon,
    /// `L_{q'_s − a}` moving one I-factor into `ℤa`.
    Descend,
    /// Verified greedy step lowering the weight outside `ℤa`.
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub phase: Phase,
    pub op: Tag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<FieldScalar>,
    /// Digest of the vector after this step.
    pub digest: String,
}

impl TraceStep {
    pub fn generator(&self) -> Generator {
        Generator::from_parts(self.op, self.index.clone()).expect("trace steps hold valid generators")
    }
}

/// Steps from `input` to `outcome`; replaying them reproduces `outcome`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub input: ModuleVector,
    pub steps: Vec<TraceStep>,
    pub outcome: ModuleVector,
}

/// First 16 hex digits of the SHA-256 of the canonical text.
pub fn digest(v: &ModuleVector) -> String {
    let hash = Sha256::digest(v.canonical_text().as_bytes());
    hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

impl ReductionTrace {
    pub fn new(input: ModuleVector) -> Self {
        ReductionTrace { outcome: input.clone(), input, steps: Vec::new() }
    }

    /// Applies `g` to the current outcome and records the step.
    pub fn apply(&mut self, module: &VermaModule, phase: Phase, g: &Generator) -> Result<&ModuleVector> {
        self.outcome = module.act(g, &self.outcome)?;
        self.steps.push(TraceStep {
            phase,
            op: g.tag(),
            index: g.index().cloned(),
            digest: digest(&self.outcome),
        });
        Ok(&self.outcome)
    }

    /// Records an application computed elsewhere.
    pub(crate) fn record(&mut self, phase: Phase, g: &Generator, result: ModuleVector) {
        self.steps.push(TraceStep { phase, op: g.tag(), index: g.index().cloned(), digest: digest(&result) });
        self.outcome = result;
    }

    /// Appends a trace that starts where this one ends.
    pub fn extend(&mut self, next: ReductionTrace) {
        debug_assert_eq!(self.outcome, next.input);
        self.steps.extend(next.steps);
        self.outcome = next.outcome;
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.steps.iter().map(TraceStep::generator).collect()
    }

    pub fn count(&self, phase: Phase) -> usize {
        self.steps.iter().filter(|s| s.phase == phase).count()
    }

    /// Re-executes every step from the input, checking each digest and the outcome.
    pub fn replay(&self, module: &VermaModule) -> Result<()> {
        let mut v = self.input.clone();
        for (i, step) in self.steps.iter().enumerate() {
            v = module.act(&step.generator(), &v)?;
            let d = digest(&v);
            if d != step.digest {
                return Err(Error::Inconsistent(format!(
                    "replay step {i} ({}) digest {d} differs from recorded {}",
                    step.generator(),
                    step.digest
                )));
            }
        }
        if v != self.outcome {
            return Err(Error::Inconsistent("replay does not reproduce the outcome".into()));
        }
        Ok(())
    }
}
