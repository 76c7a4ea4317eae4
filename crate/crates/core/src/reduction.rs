//! Constructive reductions of weight vectors by raising operators.
//!
//! Dense orders: [`strip_l_part`] removes L-factors, then
//! [`reduce_dense_case1`] (`c_I ≠ 0`) or [`reduce_dense_case2`]
//! (`c_I = 0 ≠ c_LI`) reaches a nonzero multiple of `v_h`.
//!
//! Discrete orders with minimal positive `a`: [`reduce_discrete`] reaches a
//! nonzero vector of `U(ℒ[ℤa])v_h`.
//!
//! Every step is checked. A step that the construction guarantees to be
//! nonzero but is not yields [`Error::ProofViolation`] carrying the trace.

use std::cmp::Ordering;

use crate::algebra::Generator;
use crate::error::{Error, Result};
use crate::group::{OrderClass, OrderedGroup};
use crate::scalar::FieldScalar;
use crate::trace::{Phase, ReductionTrace};
use crate::verma::{Monomial, ModuleVector, VermaModule};

fn violation(message: impl Into<String>, trace: &ReductionTrace) -> Error {
    Error::ProofViolation { message: message.into(), trace: Box::new(trace.clone()) }
}

fn require_weight_vector(module: &VermaModule, u: &ModuleVector) -> Result<()> {
    if u.is_zero() {
        return Err(Error::precondition("the vector is zero"));
    }
    if module.weight_of(u).is_none() {
        return Err(Error::precondition("not a weight vector"));
    }
    Ok(())
}

fn require_not_vacuum(u: &ModuleVector) -> Result<()> {
    if u.vacuum_multiple().is_some() {
        return Err(Error::precondition("the vector is a multiple of v_h"));
    }
    Ok(())
}

/// Order on finite multisets of positive elements: sort each descending,
/// pad the shorter with zeros, and compare position by position.
pub fn compare_multisets(group: &OrderedGroup, p: &[FieldScalar], q: &[FieldScalar]) -> Ordering {
    let desc = |v: &[FieldScalar]| {
        let mut v = v.to_vec();
        v.sort_by(|a, b| group.cmp(b, a));
        v
    };
    let (p, q) = (desc(p), desc(q));
    let zero = FieldScalar::zero();
    for i in 0..p.len().max(q.len()) {
        let ord = group.cmp(p.get(i).unwrap_or(&zero), q.get(i).unwrap_or(&zero));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// The maximum of a nonempty family of multisets under [`compare_multisets`].
pub fn max_monomial(group: &OrderedGroup, family: &[Vec<FieldScalar>]) -> Result<Vec<FieldScalar>> {
    family
        .iter()
        .max_by(|a, b| compare_multisets(group, a, b))
        .cloned()
        .ok_or_else(|| Error::precondition("max_monomial of an empty family"))
}

fn min_monomial(group: &OrderedGroup, family: &[Vec<FieldScalar>]) -> Option<Vec<FieldScalar>> {
    family.iter().min_by(|a, b| compare_multisets(group, a, b)).cloned()
}

/// Largest number of L-factors in the support.
pub fn max_l_count(u: &ModuleVector) -> usize {
    u.monomials().map(|m| m.js().len()).max().unwrap_or(0)
}

fn require_dense(module: &VermaModule) -> Result<()> {
    if module.group().is_dense() {
        Ok(())
    } else {
        Err(Error::precondition("this reduction needs a dense order"))
    }
}

/// Applies `I_x` until no L-factor is left.
///
/// Each round takes `x ≺ j_1` for every monomial with the most L-factors,
/// `x` different from every I-entry, and `j − x` different from every
/// I-entry for every L-entry `j` of those monomials. Then the leading part of
/// `I_x u` replaces exactly one L-factor by an I-factor, injectively, so the
/// largest L-count drops by exactly one.
pub fn strip_l_part(module: &VermaModule, u0: &ModuleVector) -> Result<ReductionTrace> {
    require_dense(module)?;
    require_weight_vector(module, u0)?;
    require_not_vacuum(u0)?;
    let group = module.group();
    let mut trace = ReductionTrace::new(u0.clone());
    loop {
        let r = max_l_count(&trace.outcome);
        if r == 0 {
            return Ok(trace);
        }
        let top: Vec<&Monomial> = trace.outcome.monomials().filter(|m| m.js().len() == r).collect();
        let bound = top
            .iter()
            .map(|m| &m.js()[0])
            .min_by(|a, b| group.cmp(a, b))
            .expect("r ≥ 1")
            .clone();
        let forbidden: Vec<FieldScalar> =
            trace.outcome.monomials().flat_map(|m| m.ps().iter().cloned()).collect();
        let offsets: Vec<FieldScalar> = top.iter().flat_map(|m| m.js().iter().cloned()).collect();
        let x = group.find_positive_below(&bound, &forbidden, &offsets)?;
        trace.apply(module, Phase::StripL, &Generator::I(x))?;
        let now = max_l_count(&trace.outcome);
        if trace.outcome.is_zero() || now + 1 != r {
            return Err(violation(
                format!("I-stripping took the L-count from {r} to {now} (vector {})", trace.outcome),
                &trace,
            ));
        }
    }
}

fn require_i_only(u: &ModuleVector) -> Result<()> {
    if max_l_count(u) != 0 {
        return Err(Error::precondition("expected a combination of I-monomials only"));
    }
    Ok(())
}

fn i_family(u: &ModuleVector) -> Vec<Vec<FieldScalar>> {
    u.monomials().map(|m| m.ps().to_vec()).collect()
}

/// Result of a reduction to `b·v_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseReduction {
    pub trace: ReductionTrace,
    /// `b ≠ 0` with `trace.outcome = b·v_h`.
    pub scalar: FieldScalar,
    /// Number of detour steps taken by the L-ladder.
    pub detours: usize,
}

fn finish(trace: ReductionTrace, detours: usize) -> Result<DenseReduction> {
    match trace.outcome.vacuum_multiple() {
        Some(b) if !b.is_zero() => Ok(DenseReduction { scalar: b, trace, detours }),
        _ => Err(violation(format!("reduction ended at {} instead of b·v_h", trace.outcome), &trace)),
    }
}

/// `c_I ≠ 0`: applies `I_{q_1}⋯I_{q_k}` for the largest I-multiset `q`.
pub fn reduce_dense_case1(module: &VermaModule, u: &ModuleVector) -> Result<DenseReduction> {
    require_weight_vector(module, u)?;
    require_i_only(u)?;
    if module.hw().c_i.is_zero() {
        return Err(Error::precondition("case 1 needs c_I ≠ 0"));
    }
    let q = max_monomial(module.group(), &i_family(u))?;
    let mut trace = ReductionTrace::new(u.clone());
    for x in &q {
        trace.apply(module, Phase::ContractI, &Generator::I(x.clone()))?;
        if trace.outcome.is_zero() {
            return Err(violation(format!("I_{x} gave zero"), &trace));
        }
    }
    finish(trace, 0)
}

/// `c_I = 0 ≠ c_LI`: shifts the largest entry down with `L_{q_1 − y}`, then
/// removes the largest I-entry with `L_z` until `v_h` is reached.
///
/// `L_z` on `I_{-z}` contributes `z(h_I − (z+1)c_LI)`, which vanishes when
/// `z = h_I/c_LI − 1`. Such an entry is first replaced by a smaller `x'`
/// with `L_{z − x'}`.
pub fn reduce_dense_case2(module: &VermaModule, u: &ModuleVector) -> Result<DenseReduction> {
    require_weight_vector(module, u)?;
    require_i_only(u)?;
    let hw = module.hw();
    if !hw.c_i.is_zero() || hw.c_li.is_zero() {
        return Err(Error::precondition("case 2 needs c_I = 0 and c_LI ≠ 0"));
    }
    let group = module.group();
    let bad = &(&hw.h_i / &hw.c_li) - &FieldScalar::one();
    let mut trace = ReductionTrace::new(u.clone());
    let mut detours = 0;

    if u.vacuum_multiple().is_none() {
        let q = max_monomial(group, &i_family(u))?;
        let q1 = q.iter().max_by(|a, b| group.cmp(a, b)).expect("nonempty").clone();
        let y = group.find_positive_below(&gap_bound(group, u, &q1), &[], &[])?;
        trace.apply(module, Phase::Shift, &Generator::L(&q1 - &y))?;
        if trace.outcome.is_zero() {
            return Err(violation(format!("L_{{q1-y}} with q1 = {q1}, y = {y} gave zero"), &trace));
        }
    }

    while trace.outcome.vacuum_multiple().is_none() {
        let m = largest_entry(group, &trace.outcome);
        let (phase, op) = if m == bad {
            let x = group.find_positive_below(&gap_bound(group, &trace.outcome, &m), &[], &[])?;
            detours += 1;
            (Phase::Detour, Generator::L(&m - &x))
        } else {
            (Phase::Ladder, Generator::L(m.clone()))
        };
        trace.apply(module, phase, &op)?;
        if trace.outcome.is_zero() {
            return Err(violation(format!("{op} gave zero"), &trace));
        }
    }
    finish(trace, detours)
}

fn largest_entry(group: &OrderedGroup, u: &ModuleVector) -> FieldScalar {
    u.monomials()
        .flat_map(|m| m.ps().iter())
        .max_by(|a, b| group.cmp(a, b))
        .expect("a non-vacuum I-vector has an entry")
        .clone()
}

/// `min({top} ∪ {top − e : e ≺ top an entry})`: any positive `y` below it
/// leaves no entry in `[top − y, top)`.
fn gap_bound(group: &OrderedGroup, u: &ModuleVector, top: &FieldScalar) -> FieldScalar {
    u.monomials()
        .flat_map(|m| m.ps().iter())
        .filter(|e| group.cmp(e, top) == Ordering::Less)
        .map(|e| top - e)
        .fold(top.clone(), |acc, d| group.min(&acc, &d).clone())
}

/// Full dense reduction of a weight vector `u0 ∉ 𝔽v_h` to `b·v_h`.
pub fn reduce_dense(module: &VermaModule, u0: &ModuleVector) -> Result<DenseReduction> {
    let hw = module.hw();
    if hw.c_i.is_zero() && hw.c_li.is_zero() {
        return Err(Error::precondition("(c_I, c_LI) = (0, 0): v_h is not reachable"));
    }
    let mut trace = strip_l_part(module, u0)?;
    let tail = if hw.c_i.is_zero() {
        reduce_dense_case2(module, &trace.outcome)?
    } else {
        reduce_dense_case1(module, &trace.outcome)?
    };
    trace.extend(tail.trace);
    Ok(DenseReduction { trace, scalar: tail.scalar, detours: tail.detours })
}

/// Result of a discrete reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteReduction {
    pub trace: ReductionTrace,
    /// The minimal positive element.
    pub a: FieldScalar,
}

impl DiscreteReduction {
    pub fn outcome(&self) -> &ModuleVector {
        &self.trace.outcome
    }
}

/// Coordinate of the weight offset outside `ℤa`; zero exactly on `U(ℒ[ℤa])v_h`.
fn excess(group: &OrderedGroup, u: &ModuleVector) -> Result<i64> {
    let m = u.monomials().next().ok_or_else(|| Error::precondition("the vector is zero"))?;
    group.major_coordinate(m.offset())
}

fn is_above(group: &OrderedGroup, x: &FieldScalar) -> bool {
    group.major_coordinate(x).map(|c| c > 0).unwrap_or(false)
}

/// Every index of every monomial lies in `ℤa`.
pub fn supported_on(u: &ModuleVector, a: &FieldScalar) -> bool {
    u.monomials().all(|m| m.indices_in(a))
}

/// Reduces a weight vector `u0 ∉ 𝔽v_h` to a nonzero vector with all indices
/// in `ℤa`, using raising operators only.
pub fn reduce_discrete(module: &VermaModule, u0: &ModuleVector) -> Result<DiscreteReduction> {
    let group = module.group();
    let a = match group.classify() {
        OrderClass::Discrete(a) => a,
        OrderClass::Dense => return Err(Error::precondition("this reduction needs a discrete order")),
    };
    require_weight_vector(module, u0)?;
    require_not_vacuum(u0)?;
    let mut trace = ReductionTrace::new(u0.clone());
    if excess(group, u0)? != 0 {
        if module.hw().c_i.is_zero() {
            discrete_without_heisenberg(module, &a, &mut trace)?;
        } else {
            discrete_with_heisenberg(module, &a, &mut trace)?;
        }
    }
    if trace.outcome.is_zero() || !supported_on(&trace.outcome, &a) {
        return Err(violation(format!("ended at {} outside U(ℒ[ℤa])v_h", trace.outcome), &trace));
    }
    Ok(DiscreteReduction { trace, a })
}

/// `c_I ≠ 0`: contract the largest I-multiset among monomials with the most
/// L-factors, then lower the excess with verified greedy steps.
fn discrete_with_heisenberg(module: &VermaModule, a: &FieldScalar, trace: &mut ReductionTrace) -> Result<()> {
    let group = module.group();
    let r = max_l_count(&trace.outcome);
    let family: Vec<Vec<FieldScalar>> = trace
        .outcome
        .monomials()
        .filter(|m| m.js().len() == r && !m.ps().is_empty())
        .map(|m| m.ps().to_vec())
        .collect();
    if !family.is_empty() {
        let q = max_monomial(group, &family)?;
        for x in &q {
            trace.apply(module, Phase::ContractI, &Generator::I(x.clone()))?;
            if trace.outcome.is_zero() {
                return Err(violation(format!("I_{x} gave zero"), trace));
            }
        }
    }
    greedy_descent(module, a, trace)
}

/// Tries `L_x` then `I_x` for `x ⪯ offset` outside `ℤa` in height order and
/// keeps the first nonzero result, until the excess is zero.
fn greedy_descent(module: &VermaModule, a: &FieldScalar, trace: &mut ReductionTrace) -> Result<()> {
    let group = module.group();
    while excess(group, &trace.outcome)? > 0 {
        let u = trace.outcome.clone();
        let offset = u.monomials().next().expect("nonzero").offset().clone();
        let reach = u
            .monomials()
            .flat_map(|m| m.ps().iter().chain(m.js()))
            .map(|x| group.height(x))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(1) as i64
            + 1;
        let mut step = None;
        'search: for x in group.elements_up_to_height(reach) {
            if !is_above(group, &x) || group.cmp(&x, &offset) == Ordering::Greater {
                continue;
            }
            for op in [Generator::L(x.clone()), Generator::I(x.clone())] {
                let v = module.act(&op, &u)?;
                if !v.is_zero() {
                    step = Some((op, v));
                    break 'search;
                }
            }
        }
        match step {
            Some((op, v)) => trace.record(Phase::Greedy, &op, v),
            None => {
                return Err(Error::StripExhausted {
                    message: format!("no raising operator of height ≤ {reach} keeps {u} nonzero (a = {a})"),
                    trace: Box::new(trace.clone()),
                })
            }
        }
    }
    Ok(())
}

/// `c_I = 0`: `I_ε^{n_0}` turns every L-factor outside `ℤa` into an
/// I-factor; then `L_{q'_s − a}` moves the I-factors of the smallest
/// I-multiset into `ℤa` one at a time.
fn discrete_without_heisenberg(module: &VermaModule, a: &FieldScalar, trace: &mut ReductionTrace) -> Result<()> {
    let group = module.group();
    let above = |x: &FieldScalar| is_above(group, x);

    let n0 = trace.outcome.monomials().map(|m| m.js().iter().filter(|j| above(j)).count()).max().unwrap_or(0);
    if n0 > 0 {
        let u = &trace.outcome;
        let high_l: Vec<FieldScalar> =
            u.monomials().flat_map(|m| m.js().iter().filter(|j| above(j)).cloned()).collect();
        let j0 = high_l.iter().min_by(|x, y| group.cmp(x, y)).expect("n0 > 0").clone();
        let i_entries: Vec<FieldScalar> = u.monomials().flat_map(|m| m.ps().iter().cloned()).collect();
        // Every shifted entry must avoid every I-entry; the shifts move by a
        // with m, so a finite forbidden set is cleared eventually.
        let mut m = 1i64;
        let eps = loop {
            let eps = &j0 - &(&FieldScalar::from_int(m) * a);
            if high_l.iter().all(|j| !i_entries.contains(&(j - &eps))) {
                break eps;
            }
            m += 1;
            if m > i64::from(group.height_cap()) {
                return Err(Error::SearchExhausted { what: "no admissible ε".into(), cap: group.height_cap() });
            }
        };
        for _ in 0..n0 {
            trace.apply(module, Phase::Epsilon, &Generator::I(eps.clone()))?;
            if trace.outcome.is_zero() {
                return Err(violation(format!("I_{eps} gave zero"), trace));
            }
        }
        if trace.outcome.monomials().any(|m| m.js().iter().any(&above)) {
            return Err(violation("L-factors outside ℤa survived I_ε", trace));
        }
    }

    let high_i = |m: &Monomial| -> Vec<FieldScalar> { m.ps().iter().filter(|p| above(p)).cloned().collect() };
    let t = trace.outcome.monomials().map(|m| high_i(m).len()).min().unwrap_or(0);
    if t == 0 {
        return Ok(());
    }
    let family: Vec<Vec<FieldScalar>> =
        trace.outcome.monomials().map(high_i).filter(|p| p.len() == t).collect();
    let mut q = min_monomial(group, &family).expect("t ≥ 1");
    q.sort_by(|x, y| group.cmp(x, y));
    for s in 0..t {
        trace.apply(module, Phase::Descend, &Generator::L(&q[s] - a))?;
        let rest = &q[s + 1..];
        let survives = trace.outcome.monomials().any(|m| {
            let h = high_i(m);
            h.len() == rest.len() && h.iter().zip(rest).all(|(x, y)| x == y)
        });
        if !survives {
            return Err(violation(
                format!("after L_{{q'_{} - a}} the I-multiset {:?} does not survive", s + 1, rest),
                trace,
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HighestWeight;

    fn s(x: &str) -> FieldScalar {
        x.parse().unwrap()
    }

    fn ms(v: &[&str]) -> Vec<FieldScalar> {
        v.iter().map(|x| s(x)).collect()
    }

    #[test]
    fn multiset_order_examples() {
        let z = OrderedGroup::integers();
        assert_eq!(max_monomial(&z, &[ms(&["1"])]).unwrap(), ms(&["1"]));
        assert_eq!(max_monomial(&z, &[ms(&["2", "1"]), ms(&["1", "1"])]).unwrap(), ms(&["2", "1"]));
        assert_eq!(max_monomial(&z, &[ms(&["1", "3"]), ms(&["1", "2"])]).unwrap(), ms(&["1", "3"]));
        assert_eq!(compare_multisets(&z, &ms(&["2", "1"]), &ms(&["2"])), Ordering::Greater);
        assert!(max_monomial(&z, &[]).is_err());
    }

    fn dense(hw: &str) -> VermaModule {
        VermaModule::new(OrderedGroup::zsqrt2_real(), hw.parse::<HighestWeight>().unwrap()).unwrap()
    }

    #[test]
    fn strip_examples() {
        let m = dense("1,2,3,1,1");
        let i1 = m.parse_vector("I[-1] v").unwrap();
        assert!(strip_l_part(&m, &i1).unwrap().is_empty());
        let l = m.parse_vector("L[-√2] v").unwrap();
        let t = strip_l_part(&m, &l).unwrap();
        assert_eq!(t.len(), 1);
        // x = 1 comes first in height order, and [I_x, L_{-√2}] = x I_{x−√2}
        assert_eq!(t.outcome, m.parse_vector("I[1-√2] v").unwrap());
        let il = m.parse_vector("I[-1] L[-√2] v").unwrap();
        let t = strip_l_part(&m, &il).unwrap();
        assert_eq!(max_l_count(&t.outcome), 0);
        assert_eq!(t.outcome.len(), 1);
        assert!(strip_l_part(&m, &ModuleVector::vacuum()).is_err());
    }

    #[test]
    fn case1_examples() {
        let m = dense("0,0,0,1,0");
        let r = reduce_dense_case1(&m, &m.parse_vector("I[-1] v").unwrap()).unwrap();
        assert_eq!(r.scalar, s("1"));
        let r = reduce_dense_case1(&m, &m.parse_vector("I[-1] I[-1] v").unwrap()).unwrap();
        assert_eq!(r.scalar, s("2"));
        assert!(reduce_dense_case1(&m, &m.parse_vector("I[-1] v + I[-√2] v").unwrap()).is_err());
    }

    #[test]
    fn case2_examples() {
        let m = dense("0,5,0,0,1");
        let r = reduce_dense_case2(&m, &m.parse_vector("I[-1] v").unwrap()).unwrap();
        // y = √2 − 1, then y(h_I − (y+1)c_LI)
        assert_eq!(r.scalar, s("-7+6√2"));
        assert_eq!(r.detours, 0);
        let bad = dense("0,2,0,0,1");
        let r = reduce_dense_case2(&bad, &bad.parse_vector("I[-1] I[-1] v").unwrap()).unwrap();
        assert_eq!(r.detours, 1);
        r.trace.replay(&bad).unwrap();
        assert!(reduce_dense_case2(&m, &ModuleVector::zero()).is_err());
    }

    fn lex(hw: &str) -> VermaModule {
        VermaModule::new(OrderedGroup::zsqrt2_lex(), hw.parse::<HighestWeight>().unwrap()).unwrap()
    }

    #[test]
    fn discrete_examples() {
        let m = lex("1,2,3,0,1");
        let i1 = m.parse_vector("I[-1] v").unwrap();
        let r = reduce_discrete(&m, &i1).unwrap();
        assert!(r.trace.is_empty());
        assert_eq!(r.outcome(), &i1);

        let l = m.parse_vector("L[-√2] v").unwrap();
        let r = reduce_discrete(&m, &l).unwrap();
        assert_eq!(r.trace.count(Phase::Epsilon), 1);
        assert_eq!(r.trace.steps[0].index, Some(s("-1+√2")));
        assert_eq!(r.trace.count(Phase::Descend), 0);
        assert!(supported_on(r.outcome(), &r.a));

        let heis = lex("1,2,3,1,0");
        let u = heis.parse_vector("I[-√2] v").unwrap();
        let r = reduce_discrete(&heis, &u).unwrap();
        assert_eq!(r.outcome(), &ModuleVector::vacuum().scaled(&s("√2")));
    }
}
