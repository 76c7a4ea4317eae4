//! Irreducibility verdicts for Verma modules.
//!
//! Dense orders: irreducible exactly when `(c_I, c_LI) ≠ (0, 0)`. When both
//! vanish and `h_I = 0`, the I-monomials span a proper submodule.
//!
//! Discrete orders with minimal positive `a`: irreducibility over `ℒ[G]` is
//! that of `U(ℒ[ℤa])v_h` over `ℒ[ℤa]`, which is searched for singular
//! vectors level by level after transporting the highest weight to `ℒ[ℤ]`.
//! Finding none up to the bound proves nothing, so the answer is then
//! [`Verdict::UnknownUpToLevel`].

use std::fmt;

use crate::algebra::{transport_highest_weight, Generator};
use crate::error::{Error, Result};
use crate::group::{OrderClass, OrderedGroup};
use crate::reduction::reduce_dense;
use crate::sample::VectorSampler;
use crate::scalar::FieldScalar;
use crate::singular::{is_singular, singular_search};
use crate::trace::ReductionTrace;
use crate::verma::{ModuleVector, VermaModule};

/// Default level bound for singular-vector searches.
pub const DEFAULT_MAX_LEVEL: i64 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A singular vector of `U(ℒ[ℤa])v_h`.
    Singular(ModuleVector),
    /// A vector generating a proper submodule, with the reason.
    ProperSubmodule { generator: ModuleVector, description: String },
}

impl Witness {
    pub fn vector(&self) -> &ModuleVector {
        match self {
            Witness::Singular(v) => v,
            Witness::ProperSubmodule { generator, .. } => generator,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible { reason: String },
    Reducible { witness: Witness, level: Option<i64> },
    UnknownUpToLevel { level: i64 },
    ClaimedReducibleNoWitness { note: String },
}

impl Verdict {
    /// Short machine name.
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Irreducible { .. } => "irreducible",
            Verdict::Reducible { .. } => "reducible",
            Verdict::UnknownUpToLevel { .. } => "unknown-up-to-level",
            Verdict::ClaimedReducibleNoWitness { .. } => "claimed-reducible-no-witness",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Reducible { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Irreducible { reason } => write!(f, "irreducible: {reason}"),
            Verdict::Reducible { witness, level } => {
                write!(f, "reducible")?;
                if let Some(n) = level {
                    write!(f, " at level {n}")?;
                }
                match witness {
                    Witness::Singular(v) => write!(f, ", singular vector {v}"),
                    Witness::ProperSubmodule { generator, description } => {
                        write!(f, ", {generator} generates a proper submodule ({description})")
                    }
                }
            }
            Verdict::UnknownUpToLevel { level } => write!(f, "no singular vector up to level {level}"),
            Verdict::ClaimedReducibleNoWitness { note } => write!(f, "reducible without a witness: {note}"),
        }
    }
}

/// A verdict with the reduction traces that support it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub traces: Vec<ReductionTrace>,
}

/// Decides (ir)reducibility, searching singular vectors up to `max_level`
/// for discrete orders.
pub fn decide(module: &VermaModule, max_level: i64) -> Result<Decision> {
    if max_level < 1 {
        return Err(Error::precondition("the level bound must be at least 1"));
    }
    let verdict = match module.group().classify() {
        OrderClass::Dense => decide_dense(module, max_level)?,
        OrderClass::Discrete(a) => decide_discrete(module, &a, max_level)?,
    };
    Ok(Decision { verdict, traces: Vec::new() })
}

/// [`decide`], plus constructive reductions of `samples` random weight
/// vectors when the dense verdict is irreducible.
pub fn decide_with_samples(module: &VermaModule, max_level: i64, seed: u64, samples: usize) -> Result<Decision> {
    let mut decision = decide(module, max_level)?;
    if matches!(decision.verdict, Verdict::Irreducible { .. }) && module.group().is_dense() {
        let mut sampler = VectorSampler::new(module, seed);
        for _ in 0..samples {
            let v = sampler.next_vector()?;
            decision.traces.push(reduce_dense(module, &v)?.trace);
        }
    }
    Ok(decision)
}

fn decide_dense(module: &VermaModule, depth: i64) -> Result<Verdict> {
    let hw = module.hw();
    if !hw.c_i.is_zero() || !hw.c_li.is_zero() {
        return Ok(Verdict::Irreducible {
            reason: "dense order with (c_I, c_LI) ≠ (0, 0): every weight vector reduces to a multiple of v_h".into(),
        });
    }
    if !hw.h_i.is_zero() {
        return Ok(Verdict::ClaimedReducibleNoWitness {
            note: format!(
                "c_I = c_LI = 0 but h_I = {} ≠ 0: I_0 v_h = h_I v_h, so the span of the I-monomials is not a proper submodule",
                hw.h_i
            ),
        });
    }
    let group = module.group();
    let x = first_positive(group)?;
    let generator = module.monomial_vector(vec![x], Vec::new())?;
    check_i_submodule(module, &generator, depth)?;
    Ok(Verdict::Reducible {
        witness: Witness::ProperSubmodule {
            generator,
            description: format!(
                "c_I = c_LI = h_I = 0: raising operators never remove the last I-factor (checked for words of length ≤ {})",
                depth.min(2)
            ),
        },
        level: None,
    })
}

fn first_positive(group: &OrderedGroup) -> Result<FieldScalar> {
    group
        .elements_up_to_height(1)
        .find(|x| group.is_positive(x))
        .ok_or_else(|| Error::precondition("group has no positive element of height 1"))
}

/// Applies raising words of length `≤ min(depth, 2)` with indices of height
/// `≤ 2` and checks every result keeps at least one I-factor per monomial.
fn check_i_submodule(module: &VermaModule, generator: &ModuleVector, depth: i64) -> Result<()> {
    let group = module.group();
    let ops: Vec<Generator> = group
        .elements_up_to_height(2)
        .filter(|x| group.is_positive(x))
        .flat_map(|x| [Generator::L(x.clone()), Generator::I(x)])
        .collect();
    let mut frontier = vec![generator.clone()];
    for _ in 0..depth.min(2) {
        let mut next = Vec::new();
        for v in &frontier {
            for g in &ops {
                let w = module.act(g, v)?;
                if w.monomials().any(|m| m.ps().is_empty()) {
                    return Err(Error::Inconsistent(format!("{g} maps {v} to {w}, which leaves the I-span")));
                }
                if !w.is_zero() {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Ok(())
}

fn decide_discrete(module: &VermaModule, a: &FieldScalar, max_level: i64) -> Result<Verdict> {
    let group = module.group();
    let transported = transport_highest_weight(&group.element(a.clone())?, module.hw())?;
    let normalized = VermaModule::new(OrderedGroup::integers(), transported)?;
    for level in singular_search(&normalized, &FieldScalar::one(), max_level)? {
        if let Some(v) = level.kernel.into_iter().next() {
            let witness = pull_back(module, a, &v)?;
            if !is_singular(module, a, &witness)? {
                return Err(Error::Inconsistent(format!("transported kernel vector {witness} is not singular")));
            }
            return Ok(Verdict::Reducible { witness: Witness::Singular(witness), level: Some(level.level) });
        }
    }
    Ok(Verdict::UnknownUpToLevel { level: max_level })
}

/// Image of a vector of the `ℒ[ℤ]`-module under `θ_a`: each lowering
/// factor `X_{-n}` becomes `a⁻¹X_{-na}`.
pub fn pull_back(module: &VermaModule, a: &FieldScalar, v: &ModuleVector) -> Result<ModuleVector> {
    let inv = a.inv();
    let mut out = ModuleVector::zero();
    for (m, c) in v.terms() {
        let scale = |xs: &[FieldScalar]| xs.iter().map(|x| x * a).collect::<Vec<_>>();
        let image = module.monomial(scale(m.ps()), scale(m.js()))?;
        out.add_term(image, c * &inv.pow(m.len() as u32));
    }
    Ok(out)
}
