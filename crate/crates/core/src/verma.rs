//! Verma modules `M̃(h, h_I, c, c_I, c_LI)` in PBW normal form.
//!
//! A basis vector is `I_{-p_s}⋯I_{-p_1} L_{-j_1}⋯L_{-j_k} v_h` with
//! `0 ≺ p_s ⪯ ⋯ ⪯ p_1` and `0 ≺ j_1 ⪯ ⋯ ⪯ j_k`. Both parts are stored in
//! ascending group order, which is also the written order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{bracket_generators, split_sum, theta, transport_highest_weight, write_sum};
use crate::algebra::{AlgebraElement, Generator, HighestWeight};
use crate::error::{Error, Result};
use crate::group::{OrderClass, OrderedGroup};
use crate::scalar::FieldScalar;

/// A normal-form word `I_{-p} L_{-j}` applied to `v_h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    // Field order gives the canonical order: total weight, then parts.
    offset: FieldScalar,
    ps: Vec<FieldScalar>,
    js: Vec<FieldScalar>,
}

impl Monomial {
    /// The highest weight vector `v_h`.
    pub fn vacuum() -> Self {
        Monomial { offset: FieldScalar::zero(), ps: Vec::new(), js: Vec::new() }
    }

    fn from_sorted(ps: Vec<FieldScalar>, js: Vec<FieldScalar>) -> Self {
        let offset = ps.iter().chain(&js).fold(FieldScalar::zero(), |acc, x| acc + x);
        Monomial { offset, ps, js }
    }

    /// I-part indices `p_s ⪯ ⋯ ⪯ p_1` (ascending).
    pub fn ps(&self) -> &[FieldScalar] {
        &self.ps
    }

    /// L-part indices `j_1 ⪯ ⋯ ⪯ j_k` (ascending).
    pub fn js(&self) -> &[FieldScalar] {
        &self.js
    }

    /// `Σp + Σj`, the weight relative to `h`.
    pub fn offset(&self) -> &FieldScalar {
        &self.offset
    }

    pub fn is_vacuum(&self) -> bool {
        self.ps.is_empty() && self.js.is_empty()
    }

    /// Number of factors.
    pub fn len(&self) -> usize {
        self.ps.len() + self.js.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_vacuum()
    }

    /// The lowering generators in written order.
    pub fn word(&self) -> Vec<Generator> {
        self.ps
            .iter()
            .map(|p| Generator::I(-p))
            .chain(self.js.iter().map(|j| Generator::L(-j)))
            .collect()
    }

    fn from_normal_word(word: &[Generator]) -> Self {
        let mut ps = Vec::new();
        let mut js = Vec::new();
        for g in word {
            match g {
                Generator::I(m) => ps.push(-m),
                Generator::L(m) => js.push(-m),
                _ => unreachable!("normal words hold only lowering generators"),
            }
        }
        Self::from_sorted(ps, js)
    }

    /// Every index lies in `ℤx`.
    pub fn indices_in(&self, x: &FieldScalar) -> bool {
        self.ps.iter().chain(&self.js).all(|i| (i / x).as_integer().is_some())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in self.word() {
            write!(f, "{g} ")?;
        }
        f.write_str("v")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite linear combination of monomials with no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct ModuleVector {
    terms: BTreeMap<Monomial, FieldScalar>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::term(Monomial::vacuum(), FieldScalar::one())
    }

    pub fn term(m: Monomial, coeff: FieldScalar) -> Self {
        let mut v = Self::zero();
        v.add_term(m, coeff);
        v
    }

    pub fn add_term(&mut self, m: Monomial, coeff: FieldScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &ModuleVector, c: &FieldScalar) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scaled(&self, c: &FieldScalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &FieldScalar::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &FieldScalar::from_int(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// `Some(b)` when the vector is `b·v_h`.
    pub fn vacuum_multiple(&self) -> Option<FieldScalar> {
        match self.terms.iter().next() {
            None => Some(FieldScalar::zero()),
            Some((m, c)) if self.terms.len() == 1 && m.is_vacuum() => Some(c.clone()),
            _ => None,
        }
    }

    /// Canonical one-line text, the input to trace digests.
    pub fn canonical_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|(m, c)| (c, m.to_string())))
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON shape of one term of a [`ModuleVector`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorTerm {
    pub coeff: FieldScalar,
    pub ps: Vec<FieldScalar>,
    pub js: Vec<FieldScalar>,
}

impl Serialize for ModuleVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(m, c)| VectorTerm {
            coeff: c.clone(),
            ps: m.ps.clone(),
            js: m.js.clone(),
        }))
    }
}

/// The Verma module over `ℒ[G]` with a fixed highest weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaModule {
    group: OrderedGroup,
    hw: HighestWeight,
    radicand: u64,
}

impl VermaModule {
    pub fn new(group: OrderedGroup, hw: HighestWeight) -> Result<Self> {
        let d = hw.radicand()?;
        let g = group.radicand();
        let radicand = match (g, d) {
            (1, d) => d,
            (g, 1) => g,
            (g, d) if g == d => g,
            (g, d) => return Err(Error::Context(format!("highest weight in ℚ(√{d}) over a group in ℚ(√{g})"))),
        };
        Ok(VermaModule { group, hw, radicand })
    }

    pub fn group(&self) -> &OrderedGroup {
        &self.group
    }

    pub fn hw(&self) -> &HighestWeight {
        &self.hw
    }

    /// Same group, different highest weight.
    pub fn with_highest_weight(&self, hw: HighestWeight) -> Result<Self> {
        Self::new(self.group.clone(), hw)
    }

    fn check_scalar(&self, s: &FieldScalar) -> Result<()> {
        if s.radicand() == 1 || s.radicand() == self.radicand {
            Ok(())
        } else {
            Err(Error::Context(format!("scalar {s} is outside ℚ(√{})", self.radicand)))
        }
    }

    fn check_index(&self, x: &FieldScalar) -> Result<()> {
        if self.group.contains(x) {
            Ok(())
        } else {
            Err(Error::Context(format!("index {x} is not in the group")))
        }
    }

    fn check_generator(&self, g: &Generator) -> Result<()> {
        g.index().map_or(Ok(()), |x| self.check_index(x))
    }

    /// Builds a monomial from positive indices in any order.
    pub fn monomial(&self, ps: Vec<FieldScalar>, js: Vec<FieldScalar>) -> Result<Monomial> {
        for x in ps.iter().chain(&js) {
            self.check_index(x)?;
            if !self.group.is_positive(x) {
                return Err(Error::precondition(format!("monomial index {x} is not positive")));
            }
        }
        let (mut ps, mut js) = (ps, js);
        ps.sort_by(|a, b| self.group.cmp(a, b));
        js.sort_by(|a, b| self.group.cmp(a, b));
        Ok(Monomial::from_sorted(ps, js))
    }

    pub fn monomial_vector(&self, ps: Vec<FieldScalar>, js: Vec<FieldScalar>) -> Result<ModuleVector> {
        Ok(ModuleVector::term(self.monomial(ps, js)?, FieldScalar::one()))
    }

    /// `L_0`-eigenvalue of `m`: `h + Σp + Σj`.
    pub fn weight(&self, m: &Monomial) -> FieldScalar {
        &self.hw.h + &m.offset
    }

    /// Weight components ordered by weight in the group order.
    pub fn weight_components(&self, v: &ModuleVector) -> Vec<(FieldScalar, ModuleVector)> {
        let mut parts: Vec<(FieldScalar, ModuleVector)> = Vec::new();
        for (m, c) in v.terms() {
            match parts.iter_mut().find(|(off, _)| off == m.offset()) {
                Some((_, part)) => part.add_term(m.clone(), c.clone()),
                None => parts.push((m.offset().clone(), ModuleVector::term(m.clone(), c.clone()))),
            }
        }
        parts.sort_by(|a, b| self.group.cmp(&a.0, &b.0));
        parts.into_iter().map(|(off, part)| (&self.hw.h + &off, part)).collect()
    }

    /// `Some(weight)` for a nonzero weight vector.
    pub fn weight_of(&self, v: &ModuleVector) -> Option<FieldScalar> {
        let mut offsets = v.monomials().map(Monomial::offset);
        let first = offsets.next()?;
        offsets.all(|o| o == first).then(|| &self.hw.h + first)
    }

    /// The action of one generator.
    pub fn act(&self, g: &Generator, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_generator(g)?;
        Ok(self.act_unchecked(g, v))
    }

    fn act_unchecked(&self, g: &Generator, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.apply(g, &m.word()), c);
        }
        out
    }

    /// Applies `ws[0] ws[1] ⋯ ws[n-1]` to `v`, rightmost first.
    pub fn act_word(&self, ws: &[Generator], v: &ModuleVector) -> Result<ModuleVector> {
        for g in ws {
            self.check_generator(g)?;
        }
        let mut out = v.clone();
        for g in ws.iter().rev() {
            out = self.act_unchecked(g, &out);
            if out.is_zero() {
                break;
            }
        }
        Ok(out)
    }

    /// Linear extension of the action to algebra elements.
    pub fn act_element(&self, u: &AlgebraElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (g, c) in u.terms() {
            out.add_scaled(&self.act(g, v)?, c);
        }
        Ok(out)
    }

    /// `g · w v_h` for a normal word `w`. A suffix of a normal word is normal,
    /// which the recursion relies on.
    fn apply(&self, g: &Generator, word: &[Generator]) -> ModuleVector {
        let index = match g.index() {
            None => {
                let c = self.hw.central_value(g).expect("central generator");
                return ModuleVector::term(Monomial::from_normal_word(word), c.clone());
            }
            Some(x) => x,
        };
        if self.group.is_positive(&-index) {
            return self.lower(g, word);
        }
        let Some((first, rest)) = word.split_first() else {
            if !index.is_zero() {
                return ModuleVector::zero();
            }
            let value = match g {
                Generator::L(_) => &self.hw.h,
                _ => &self.hw.h_i,
            };
            return ModuleVector::term(Monomial::vacuum(), value.clone());
        };
        // g f w = f (g w) + [g, f] w
        let mut out = self.lower_vector(first, &self.apply(g, rest));
        for (k, c) in bracket_generators(g, first).terms() {
            out.add_scaled(&self.apply(k, rest), c);
        }
        out
    }

    /// Left multiplication of a normal word by a lowering generator.
    fn lower(&self, g: &Generator, word: &[Generator]) -> ModuleVector {
        match g {
            Generator::I(m) => {
                // lowering I's commute with every lowering I
                let p = -m;
                let mut ps: Vec<FieldScalar> = Vec::with_capacity(word.len() + 1);
                let mut js = Vec::new();
                for f in word {
                    match f {
                        Generator::I(n) => ps.push(-n),
                        Generator::L(n) => js.push(-n),
                        _ => unreachable!(),
                    }
                }
                let at = ps.partition_point(|q| self.group.cmp(q, &p) != Ordering::Greater);
                ps.insert(at, p);
                ModuleVector::term(Monomial::from_sorted(ps, js), FieldScalar::one())
            }
            Generator::L(m) => {
                let x = -m;
                let swap = match word.first() {
                    Some(Generator::I(_)) => true,
                    Some(Generator::L(n)) => self.group.cmp(&x, &-n) == Ordering::Greater,
                    _ => false,
                };
                if !swap {
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.push(g.clone());
                    w.extend_from_slice(word);
                    return ModuleVector::term(Monomial::from_normal_word(&w), FieldScalar::one());
                }
                let (first, rest) = word.split_first().expect("swap needs a first factor");
                let mut out = self.lower_vector(first, &self.lower(g, rest));
                for (k, c) in bracket_generators(g, first).terms() {
                    out.add_scaled(&self.apply(k, rest), c);
                }
                out
            }
            _ => unreachable!("only L and I lower"),
        }
    }

    fn lower_vector(&self, g: &Generator, v: &ModuleVector) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.lower(g, &m.word()), c);
        }
        out
    }

    /// Monomials `I_{-p} L_{-j} v_h` with all indices in `ℤ₊a` and weight
    /// `h + n·a`. Ordered by decreasing I-part size `k`, then by the
    /// partitions of `k` and `n − k` with larger parts first.
    pub fn basis_along(&self, a: &FieldScalar, n: i64) -> Result<Vec<Monomial>> {
        if n <= 0 {
            return Err(Error::precondition(format!("level must be positive, got {n}")));
        }
        if !self.group.is_positive(a) {
            return Err(Error::precondition(format!("{a} is not positive")));
        }
        self.check_index(a)?;
        let scale = |parts: &[i64]| -> Vec<FieldScalar> {
            // partitions are descending; monomials store ascending
            parts.iter().rev().map(|&k| &FieldScalar::from_int(k) * a).collect()
        };
        let mut out = Vec::new();
        for k in (0..=n).rev() {
            for ip in partitions(k) {
                for lp in partitions(n - k) {
                    out.push(Monomial::from_sorted(scale(&ip), scale(&lp)));
                }
            }
        }
        Ok(out)
    }

    /// [`basis_along`](Self::basis_along) the minimal positive element of a
    /// discrete order.
    pub fn basis_at_level(&self, n: i64) -> Result<Vec<Monomial>> {
        match self.group.classify() {
            OrderClass::Discrete(a) => self.basis_along(&a, n),
            OrderClass::Dense => Err(Error::precondition("level bases need a discrete order")),
        }
    }

    /// The `ℒ[ℤx]`-submodule `U(ℒ[ℤx]) v_h` seen through `θ_x`.
    pub fn restrict_to_subalgebra(&self, x: &FieldScalar) -> Result<SubalgebraView<'_>> {
        let element = self.group.element(x.clone())?;
        if !element.is_positive() {
            return Err(Error::precondition(format!("restriction needs x ≻ 0, got {x}")));
        }
        Ok(SubalgebraView { module: self, x: x.clone() })
    }

    /// Parses `coeff*WORD v + ...` where each word is any product of
    /// generators; words are normalized by acting on `v_h`.
    pub fn parse_vector(&self, input: &str) -> Result<ModuleVector> {
        if input.trim() == "0" {
            return Ok(ModuleVector::zero());
        }
        let mut out = ModuleVector::zero();
        for (coeff, body) in split_sum(input)? {
            self.check_scalar(&coeff).map_err(|e| Error::parse(input, e.to_string()))?;
            let word = parse_word(&body).map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(input, message),
                other => other,
            })?;
            let v = self.act_word(&word, &ModuleVector::vacuum())?;
            out.add_scaled(&v, &coeff);
        }
        Ok(out)
    }

    /// Rebuilds a vector from its JSON terms.
    pub fn vector_from_terms(&self, terms: &[VectorTerm]) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for t in terms {
            self.check_scalar(&t.coeff)?;
            out.add_term(self.monomial(t.ps.clone(), t.js.clone())?, t.coeff.clone());
        }
        Ok(out)
    }
}

/// Partitions of `n` as descending part lists, in reverse lexicographic order.
pub fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn go(n: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Splits `I[-1] L[-2] v` (spaces optional) into generators.
fn parse_word(body: &str) -> Result<Vec<Generator>> {
    let s = body.trim();
    let Some(s) = s.strip_suffix('v') else {
        return Err(Error::parse(body, "a module word must end with `v`"));
    };
    let mut out = Vec::new();
    let mut rest = s.trim_start();
    while !rest.is_empty() {
        let end = if rest.starts_with("L[") || rest.starts_with("I[") {
            rest.find(']').map(|i| i + 1).ok_or_else(|| Error::parse(body, "unclosed `[`"))?
        } else {
            rest.find(|c: char| c.is_whitespace()).unwrap_or(rest.len())
        };
        out.push(rest[..end].parse()?);
        rest = rest[end..].trim_start();
    }
    Ok(out)
}

/// The `ℒ[ℤx]`-module `U(ℒ[ℤx])v_h ⊆ M̃` with `ℒ[ℤ]` acting through `θ_x`.
#[derive(Clone, Debug)]
pub struct SubalgebraView<'a> {
    module: &'a VermaModule,
    x: FieldScalar,
}

impl SubalgebraView<'_> {
    pub fn x(&self) -> &FieldScalar {
        &self.x
    }

    pub fn module(&self) -> &VermaModule {
        self.module
    }

    /// Monomials of the view: all indices in `ℤx`.
    pub fn contains(&self, m: &Monomial) -> bool {
        m.indices_in(&self.x)
    }

    /// Action of an `ℒ[ℤ]` element.
    pub fn act(&self, u: &AlgebraElement, v: &ModuleVector) -> Result<ModuleVector> {
        self.module.act_element(&theta(&self.x, u)?, v)
    }

    /// Highest weight predicted by transport.
    pub fn transported(&self) -> Result<HighestWeight> {
        let x = self.module.group.element(self.x.clone())?;
        transport_highest_weight(&x, &self.module.hw)
    }

    /// Highest weight read off from the `θ_x`-images of `L_0, I_0, C, C_I, C_LI` on `v_h`.
    pub fn observed(&self) -> Result<HighestWeight> {
        let zero = FieldScalar::zero();
        let read = |g: Generator| -> Result<FieldScalar> {
            let v = self.act(&AlgebraElement::generator(g.clone()), &ModuleVector::vacuum())?;
            v.vacuum_multiple()
                .ok_or_else(|| Error::Inconsistent(format!("θ-image of {g} does not act on v_h as a scalar")))
        };
        Ok(HighestWeight::new(
            read(Generator::L(zero.clone()))?,
            read(Generator::I(zero))?,
            read(Generator::C)?,
            read(Generator::CI)?,
            read(Generator::CLI)?,
        ))
    }

    /// Checks that observed and transported highest weights agree.
    pub fn verify(&self) -> Result<HighestWeight> {
        let (observed, predicted) = (self.observed()?, self.transported()?);
        if observed != predicted {
            return Err(Error::Inconsistent(format!("observed ({observed}) but transport gives ({predicted})")));
        }
        Ok(observed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> FieldScalar {
        x.parse().unwrap()
    }

    fn generic() -> HighestWeight {
        "3,5,7,11,13".parse().unwrap()
    }

    fn int_module(hw: HighestWeight) -> VermaModule {
        VermaModule::new(OrderedGroup::integers(), hw).unwrap()
    }

    fn g(x: &str) -> Generator {
        x.parse().unwrap()
    }

    #[test]
    fn weights() {
        let m = int_module(generic());
        let z = m.monomial(vec![s("1")], vec![s("2")]).unwrap();
        assert_eq!(m.weight(&Monomial::vacuum()), s("3"));
        assert_eq!(m.weight(&z), s("6"));
        let d = VermaModule::new(OrderedGroup::zsqrt2_real(), generic()).unwrap();
        assert_eq!(d.weight(&d.monomial(vec![s("√2")], vec![]).unwrap()), s("3+√2"));
    }

    #[test]
    fn act_examples() {
        let m = int_module(generic());
        let i1 = m.monomial_vector(vec![s("1")], vec![]).unwrap();
        let l2 = m.monomial_vector(vec![], vec![s("2")]).unwrap();
        let l1 = m.monomial_vector(vec![], vec![s("1")]).unwrap();
        // h_I − 2c_LI = 5 − 26
        assert_eq!(m.act(&g("L[1]"), &i1).unwrap(), ModuleVector::vacuum().scaled(&s("-21")));
        assert_eq!(m.act(&g("I[1]"), &i1).unwrap(), ModuleVector::vacuum().scaled(&s("11")));
        // 4h + c/2
        assert_eq!(m.act(&g("L[2]"), &l2).unwrap(), ModuleVector::vacuum().scaled(&s("31/2")));
        assert_eq!(m.act(&g("C"), &l2).unwrap(), l2.scaled(&s("7")));
        assert_eq!(m.act(&g("L[1]"), &l1).unwrap(), ModuleVector::vacuum().scaled(&s("6")));
        let i11 = m.monomial_vector(vec![s("1"), s("1")], vec![]).unwrap();
        assert_eq!(
            m.act_word(&[g("I[1]"), g("I[1]")], &i11).unwrap(),
            ModuleVector::vacuum().scaled(&s("242"))
        );
        assert_eq!(m.act_word(&[], &i11).unwrap(), i11);
    }

    #[test]
    fn lowering_builds_normal_form() {
        let m = int_module(generic());
        let v = m.act_word(&[g("L[-1]"), g("I[-2]")], &ModuleVector::vacuum()).unwrap();
        // L_{-1} I_{-2} = I_{-2} L_{-1} + 2 I_{-3}
        assert_eq!(v.to_string(), "I[-2] L[-1] v + 2*I[-3] v");
        let w = m.act_word(&[g("L[-2]"), g("L[-1]")], &ModuleVector::vacuum()).unwrap();
        assert_eq!(w.to_string(), "L[-1] L[-2] v - L[-3] v");
    }

    #[test]
    fn weight_components_split() {
        let m = int_module(generic());
        let v = m.parse_vector("I[-1] v + L[-1] v").unwrap();
        assert_eq!(m.weight_components(&v), vec![(s("4"), v.clone())]);
        let w = m.parse_vector("I[-1] v + L[-2] v").unwrap();
        let parts = m.weight_components(&w);
        assert_eq!(parts.len(), 2);
        assert_eq!((parts[0].0.clone(), parts[1].0.clone()), (s("4"), s("5")));
    }

    #[test]
    fn level_basis_sizes() {
        let m = int_module(generic());
        let sizes: Vec<usize> = (1..=6).map(|n| m.basis_at_level(n).unwrap().len()).collect();
        assert_eq!(sizes, vec![2, 5, 10, 20, 36, 65]);
        let level1: Vec<String> = m.basis_at_level(1).unwrap().iter().map(|m| m.to_string()).collect();
        assert_eq!(level1, vec!["I[-1] v", "L[-1] v"]);
        assert!(m.basis_at_level(0).is_err());
        let dense = VermaModule::new(OrderedGroup::zsqrt2_real(), generic()).unwrap();
        assert!(dense.basis_at_level(1).is_err());
    }

    #[test]
    fn text_round_trip() {
        let m = VermaModule::new(OrderedGroup::zsqrt2_real(), generic()).unwrap();
        let v = m.parse_vector("3*I[-1] I[1-√2] L[-√2] v - (1+√2)*L[-1] v + v").unwrap();
        let text = v.to_string();
        assert_eq!(m.parse_vector(&text).unwrap(), v);
        assert!(m.parse_vector("I[-1]").is_err());
        assert!(m.parse_vector("I[-√3] v").is_err());
    }

    #[test]
    fn json_terms_round_trip() {
        let m = VermaModule::new(OrderedGroup::zsqrt2_lex(), generic()).unwrap();
        let v = m.parse_vector("I[-√2] L[-1] v - 1/2*I[-1] v").unwrap();
        let json = serde_json::to_string(&v).unwrap();
        let terms: Vec<VectorTerm> = serde_json::from_str(&json).unwrap();
        assert_eq!(m.vector_from_terms(&terms).unwrap(), v);
    }

    #[test]
    fn restriction_examples() {
        let m = int_module("0,0,24,0,0".parse().unwrap());
        let view = m.restrict_to_subalgebra(&s("2")).unwrap();
        assert_eq!(view.verify().unwrap().h, s("3/2"));
        let id = m.restrict_to_subalgebra(&s("1")).unwrap();
        assert_eq!(id.verify().unwrap(), *m.hw());
        let d = VermaModule::new(OrderedGroup::zsqrt2_real(), "0,0,0,4,0".parse().unwrap()).unwrap();
        assert_eq!(d.restrict_to_subalgebra(&s("√2")).unwrap().verify().unwrap().c_i, s("2√2"));
        assert!(m.restrict_to_subalgebra(&s("-1")).is_err());
    }
}
