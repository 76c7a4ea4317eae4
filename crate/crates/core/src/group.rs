//! Totally ordered additive subgroups `G ⊆ ℚ(√d)` of rank at most two.
//!
//! A group is the `ℤ`-span of finitely many generators. The span is brought
//! into a triangular lattice basis so every element has unique integer
//! coordinates: for rank two the basis is `(major, minor)` where `minor` is
//! rational and `major` has a positive `√d`-part. The height of an element is
//! the largest absolute value of its coordinates.
//!
//! Two orders are supported:
//! * [`OrderKind::RealEmbedding`]: compare as real numbers (`√d > 0`).
//! * [`OrderKind::Lexicographic`]: compare the `√d`-part first, then the
//!   rational part.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::FieldScalar;

/// Default height cap for lattice searches.
pub const DEFAULT_HEIGHT_CAP: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    RealEmbedding,
    Lexicographic,
}

/// Triangular integer basis of `scale · G` in `(rational, radical)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Lattice {
    scale: BigInt,
    /// `(A, B)` with `B > 0`: the element `(A + B√d) / scale`.
    major: Option<(BigInt, BigInt)>,
    /// `A > 0`: the element `A / scale`.
    minor: Option<BigInt>,
}

impl Lattice {
    fn build(points: &[(BigRational, BigRational)]) -> Self {
        let scale = points
            .iter()
            .fold(BigInt::one(), |l, (a, b)| l.lcm(a.denom()).lcm(b.denom()));
        let scaled = |r: &BigRational| (r * BigRational::from_integer(scale.clone())).to_integer();
        let mut rows: Vec<(BigInt, BigInt)> =
            points.iter().map(|(a, b)| (scaled(a), scaled(b))).collect();

        // Euclid on the radical column.
        loop {
            let mut nonzero: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].1.is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by(|&i, &j| rows[i].1.abs().cmp(&rows[j].1.abs()));
            let p = nonzero[0];
            let (pa, pb) = rows[p].clone();
            for &i in &nonzero[1..] {
                let q = rows[i].1.div_floor(&pb);
                rows[i].0 -= &q * &pa;
                rows[i].1 -= &q * &pb;
            }
        }
        let major_idx = rows.iter().position(|r| !r.1.is_zero());
        let minor = rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| Some(i) != major_idx)
            .fold(BigInt::zero(), |g, (_, r)| g.gcd(&r.0));
        let minor = (!minor.is_zero()).then_some(minor);
        let major = major_idx.map(|i| {
            let (mut a, mut b) = rows[i].clone();
            if b.is_negative() {
                a = -a;
                b = -b;
            }
            if let Some(m) = &minor {
                a = a.mod_floor(m);
            }
            (a, b)
        });
        Lattice { scale, major, minor }
    }

    fn rank(&self) -> usize {
        self.major.is_some() as usize + self.minor.is_some() as usize
    }
}

#[derive(Debug, PartialEq, Eq)]
struct GroupData {
    radicand: u64,
    generators: Vec<FieldScalar>,
    kind: OrderKind,
    lattice: Lattice,
    /// Basis elements; rank one bases are oriented positive.
    basis: Vec<FieldScalar>,
    /// `±1` orientation applied to the single basis element of rank one.
    orientation: i64,
    height_cap: u32,
}

/// An ordered group `G`, cheap to clone.
#[derive(Clone)]
pub struct OrderedGroup(Arc<GroupData>);

impl PartialEq for OrderedGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.radicand == other.0.radicand
                && self.0.kind == other.0.kind
                && self.0.lattice == other.0.lattice)
    }
}

impl Eq for OrderedGroup {}

impl fmt::Debug for OrderedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedGroup")
            .field("radicand", &self.0.radicand)
            .field("basis", &self.0.basis)
            .field("kind", &self.0.kind)
            .finish()
    }
}

/// Result of [`OrderedGroup::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderClass {
    Dense,
    /// Discrete with the given minimal positive element.
    Discrete(FieldScalar),
}

/// Position of an element relative to `ℤa` for a discrete order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// `x = n·a`.
    Multiple(i64),
    /// `x ≻ n·a` for every integer `n`.
    AbovePositive,
    /// `x ≺ n·a` for every integer `n`.
    BelowNegative,
}

impl OrderedGroup {
    /// The `ℤ`-span of `generators` inside `ℚ(√radicand)`.
    pub fn new(radicand: u64, generators: Vec<FieldScalar>, kind: OrderKind) -> Result<Self> {
        if radicand == 0 {
            return Err(Error::precondition("radicand must be positive"));
        }
        for g in &generators {
            if g.radicand() != 1 && g.radicand() != radicand {
                return Err(Error::Context(format!("generator {g} is not in ℚ(√{radicand})")));
            }
        }
        let points: Vec<_> = generators
            .iter()
            .map(|g| (g.rational_part().clone(), g.radical_part().clone()))
            .collect();
        let lattice = Lattice::build(&points);
        if lattice.rank() == 0 {
            return Err(Error::DegenerateGroup("the group is {0}".into()));
        }
        let scale = BigRational::from_integer(lattice.scale.clone());
        let to_scalar = |a: &BigInt, b: &BigInt| {
            FieldScalar::quadratic(
                BigRational::from_integer(a.clone()) / &scale,
                BigRational::from_integer(b.clone()) / &scale,
                radicand,
            )
        };
        let mut basis = Vec::new();
        if let Some((a, b)) = &lattice.major {
            basis.push(to_scalar(a, b));
        }
        if let Some(a) = &lattice.minor {
            basis.push(to_scalar(a, &BigInt::zero()));
        }
        let mut data = GroupData {
            radicand,
            generators,
            kind,
            lattice,
            basis,
            orientation: 1,
            height_cap: DEFAULT_HEIGHT_CAP,
        };
        if data.basis.len() == 1 && compare_with(kind, &data.basis[0], &FieldScalar::zero()) == Ordering::Less {
            data.basis[0] = -data.basis[0].clone();
            data.orientation = -1;
        }
        Ok(OrderedGroup(Arc::new(data)))
    }

    /// `ℤ` with its natural order.
    pub fn integers() -> Self {
        Self::new(1, vec![FieldScalar::one()], OrderKind::RealEmbedding).expect("ℤ")
    }

    /// `ℤ + ℤ√2` ordered as a subset of the reals (dense).
    pub fn zsqrt2_real() -> Self {
        Self::new(2, vec![FieldScalar::one(), FieldScalar::sqrt(2)], OrderKind::RealEmbedding).expect("ℤ+ℤ√2")
    }

    /// `ℤ + ℤ√2` ordered lexicographically with the `√2` coordinate major
    /// (discrete, minimal positive element `1`).
    pub fn zsqrt2_lex() -> Self {
        Self::new(2, vec![FieldScalar::one(), FieldScalar::sqrt(2)], OrderKind::Lexicographic).expect("ℤ+ℤ√2")
    }

    /// Looks up a built-in preset: `int`, `zsqrt2-real`, `zsqrt2-lex`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "int" => Some(Self::integers()),
            "zsqrt2-real" => Some(Self::zsqrt2_real()),
            "zsqrt2-lex" => Some(Self::zsqrt2_lex()),
            _ => None,
        }
    }

    pub fn with_height_cap(&self, cap: u32) -> Self {
        let d = &self.0;
        OrderedGroup(Arc::new(GroupData {
            radicand: d.radicand,
            generators: d.generators.clone(),
            kind: d.kind,
            lattice: d.lattice.clone(),
            basis: d.basis.clone(),
            orientation: d.orientation,
            height_cap: cap,
        }))
    }

    pub fn radicand(&self) -> u64 {
        self.0.radicand
    }

    pub fn kind(&self) -> OrderKind {
        self.0.kind
    }

    pub fn generators(&self) -> &[FieldScalar] {
        &self.0.generators
    }

    /// Lattice basis, `[major, minor]` for rank two.
    pub fn basis(&self) -> &[FieldScalar] {
        &self.0.basis
    }

    pub fn rank(&self) -> usize {
        self.0.basis.len()
    }

    pub fn height_cap(&self) -> u32 {
        self.0.height_cap
    }

    /// Compares two field values under this group's order.
    pub fn cmp(&self, x: &FieldScalar, y: &FieldScalar) -> Ordering {
        compare_with(self.0.kind, x, y)
    }

    pub fn is_positive(&self, x: &FieldScalar) -> bool {
        self.cmp(x, &FieldScalar::zero()) == Ordering::Greater
    }

    pub fn min<'a>(&self, x: &'a FieldScalar, y: &'a FieldScalar) -> &'a FieldScalar {
        if self.cmp(x, y) == Ordering::Greater {
            y
        } else {
            x
        }
    }

    pub fn max<'a>(&self, x: &'a FieldScalar, y: &'a FieldScalar) -> &'a FieldScalar {
        if self.cmp(x, y) == Ordering::Less {
            y
        } else {
            x
        }
    }

    /// Integer coordinates with respect to [`basis`](Self::basis).
    pub fn coordinates(&self, x: &FieldScalar) -> Result<Vec<i64>> {
        let not_in = || Error::NotInLattice { value: x.to_string() };
        if x.radicand() != 1 && x.radicand() != self.0.radicand {
            return Err(not_in());
        }
        let lat = &self.0.lattice;
        let scale = BigRational::from_integer(lat.scale.clone());
        let sa = x.rational_part() * &scale;
        let sb = x.radical_part() * &scale;
        if !sa.is_integer() || !sb.is_integer() {
            return Err(not_in());
        }
        let (mut a, b) = (sa.to_integer(), sb.to_integer());
        let mut coords = Vec::with_capacity(2);
        match &lat.major {
            Some((ma, mb)) => {
                let (n1, r) = b.div_rem(mb);
                if !r.is_zero() {
                    return Err(not_in());
                }
                a -= &n1 * ma;
                coords.push(n1);
            }
            None if !b.is_zero() => return Err(not_in()),
            None => {}
        }
        match &lat.minor {
            Some(m) => {
                let (n2, r) = a.div_rem(m);
                if !r.is_zero() {
                    return Err(not_in());
                }
                coords.push(n2);
            }
            None if !a.is_zero() => return Err(not_in()),
            None => {}
        }
        let mut out: Vec<i64> = coords
            .iter()
            .map(|c| c.to_i64().ok_or_else(not_in))
            .collect::<Result<_>>()?;
        if out.len() == 1 {
            out[0] *= self.0.orientation;
        }
        Ok(out)
    }

    pub fn contains(&self, x: &FieldScalar) -> bool {
        self.coordinates(x).is_ok()
    }

    /// Element with the given integer coordinates.
    pub fn from_coordinates(&self, coords: &[i64]) -> FieldScalar {
        assert_eq!(coords.len(), self.rank());
        coords
            .iter()
            .zip(&self.0.basis)
            .fold(FieldScalar::zero(), |acc, (&n, e)| acc + &FieldScalar::from_int(n) * e)
    }

    pub fn height(&self, x: &FieldScalar) -> Result<u64> {
        Ok(self.coordinates(x)?.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0))
    }

    /// Wraps a value after checking lattice membership.
    pub fn element(&self, value: FieldScalar) -> Result<GroupElement> {
        self.coordinates(&value)?;
        Ok(GroupElement { value, group: self.clone() })
    }

    /// Coordinate tuples of height exactly `h`, in lexicographic order.
    pub fn coordinates_of_height(&self, h: i64) -> Vec<Vec<i64>> {
        if h == 0 {
            return vec![vec![0; self.rank()]];
        }
        match self.rank() {
            1 => vec![vec![-h], vec![h]],
            _ => {
                let mut out = Vec::with_capacity(8 * h as usize);
                for n1 in -h..=h {
                    if n1.abs() == h {
                        out.extend((-h..=h).map(|n2| vec![n1, n2]));
                    } else {
                        out.push(vec![n1, -h]);
                        out.push(vec![n1, h]);
                    }
                }
                out
            }
        }
    }

    /// Elements of height `1..=max_height` in enumeration order.
    pub fn elements_up_to_height(&self, max_height: i64) -> impl Iterator<Item = FieldScalar> + '_ {
        (1..=max_height).flat_map(move |h| {
            self.coordinates_of_height(h).into_iter().map(move |c| self.from_coordinates(&c))
        })
    }

    /// Dense, or discrete with its minimal positive element.
    pub fn classify(&self) -> OrderClass {
        match (self.rank(), self.0.kind) {
            (1, _) => OrderClass::Discrete(self.0.basis[0].clone()),
            (_, OrderKind::RealEmbedding) => OrderClass::Dense,
            // the minor basis element generates G ∩ ℚ, and every element with a
            // positive radical part exceeds all of it
            (_, OrderKind::Lexicographic) => OrderClass::Discrete(self.0.basis[1].clone()),
        }
    }

    pub fn is_dense(&self) -> bool {
        self.classify() == OrderClass::Dense
    }

    /// First `x` in height order with `0 ≺ x ≺ bound`, `x ∉ forbidden`, and
    /// `c − x ∉ forbidden` for every `c` in `offsets`.
    pub fn find_positive_below(
        &self,
        bound: &FieldScalar,
        forbidden: &[FieldScalar],
        offsets: &[FieldScalar],
    ) -> Result<FieldScalar> {
        self.find_positive_below_where(bound, forbidden, offsets, |_| true)
    }

    /// [`find_positive_below`](Self::find_positive_below) with an extra
    /// admissibility predicate on the candidate.
    pub fn find_positive_below_where(
        &self,
        bound: &FieldScalar,
        forbidden: &[FieldScalar],
        offsets: &[FieldScalar],
        extra: impl Fn(&FieldScalar) -> bool,
    ) -> Result<FieldScalar> {
        let bound_coords = self.coordinates(bound)?;
        if !self.is_positive(bound) {
            return Err(Error::precondition(format!("bound {bound} is not positive")));
        }
        // Forbidden values outside the lattice can never be hit.
        let forbidden: Vec<Vec<i64>> = forbidden.iter().filter_map(|f| self.coordinates(f).ok()).collect();
        let offsets: Vec<Vec<i64>> = offsets
            .iter()
            .map(|c| self.coordinates(c))
            .collect::<Result<_>>()?;
        let basis_f: Vec<f64> = self.0.basis.iter().map(FieldScalar::to_f64).collect();
        let bound_f = bound.to_f64();
        let tol = 1e-9 * (1.0 + bound_f.abs());
        let cap = self.0.height_cap as i64;
        let lex = self.0.kind == OrderKind::Lexicographic || self.rank() == 1;

        for h in 1..=cap {
            for coords in self.coordinates_of_height(h) {
                if lex {
                    // rank one bases are oriented positive, so coordinate order is the group order
                    let zero = vec![0; coords.len()];
                    if coords <= zero || coords >= bound_coords {
                        continue;
                    }
                } else {
                    let v: f64 = coords.iter().zip(&basis_f).map(|(&n, b)| n as f64 * b).sum();
                    if v < -tol || v > bound_f + tol {
                        continue;
                    }
                }
                if forbidden.contains(&coords) {
                    continue;
                }
                if offsets.iter().any(|c| {
                    let diff: Vec<i64> = c.iter().zip(&coords).map(|(a, b)| a - b).collect();
                    forbidden.contains(&diff)
                }) {
                    continue;
                }
                let x = self.from_coordinates(&coords);
                if !self.is_positive(&x) || self.cmp(&x, bound) != Ordering::Less || !extra(&x) {
                    continue;
                }
                return Ok(x);
            }
        }
        Err(Error::SearchExhausted {
            what: format!("no admissible element in (0, {bound})"),
            cap: self.0.height_cap,
        })
    }

    /// Places `x` relative to `ℤa` where `a` is the minimal positive element.
    pub fn decompose(&self, x: &FieldScalar, a: &FieldScalar) -> Result<Decomposition> {
        match self.classify() {
            OrderClass::Discrete(min) if &min == a => {}
            _ => return Err(Error::precondition(format!("{a} is not the minimal positive element"))),
        }
        let coords = self.coordinates(x)?;
        Ok(match coords.as_slice() {
            [n] => Decomposition::Multiple(*n),
            [n1, n2] => match n1.cmp(&0) {
                Ordering::Equal => Decomposition::Multiple(*n2),
                Ordering::Greater => Decomposition::AbovePositive,
                Ordering::Less => Decomposition::BelowNegative,
            },
            _ => unreachable!("rank is one or two"),
        })
    }

    /// Coordinate along the major basis element for discrete rank-two
    /// groups; `0` exactly on `ℤa`. Rank-one groups return `0`.
    pub fn major_coordinate(&self, x: &FieldScalar) -> Result<i64> {
        let coords = self.coordinates(x)?;
        Ok(if coords.len() == 2 { coords[0] } else { 0 })
    }
}

fn compare_with(kind: OrderKind, x: &FieldScalar, y: &FieldScalar) -> Ordering {
    match kind {
        OrderKind::RealEmbedding => x.cmp(y),
        OrderKind::Lexicographic => x
            .radical_part()
            .cmp(y.radical_part())
            .then_with(|| x.rational_part().cmp(y.rational_part())),
    }
}

/// A value together with the group it belongs to.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    value: FieldScalar,
    group: OrderedGroup,
}

impl GroupElement {
    pub fn value(&self) -> &FieldScalar {
        &self.value
    }

    pub fn group(&self) -> &OrderedGroup {
        &self.group
    }

    pub fn into_value(self) -> FieldScalar {
        self.value
    }

    pub fn compare(&self, other: &GroupElement) -> Result<Ordering> {
        if self.group != other.group {
            return Err(Error::Context("elements belong to different groups".into()));
        }
        Ok(self.group.cmp(&self.value, &other.value))
    }

    pub fn is_positive(&self) -> bool {
        self.group.is_positive(&self.value)
    }

    pub fn checked_add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::Context("elements belong to different groups".into()));
        }
        Ok(GroupElement { value: &self.value + &other.value, group: self.group.clone() })
    }

    pub fn negated(&self) -> GroupElement {
        GroupElement { value: -&self.value, group: self.group.clone() }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> FieldScalar {
        x.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        let real = OrderedGroup::zsqrt2_real();
        assert_eq!(real.cmp(&s("√2"), &s("1")), Ordering::Greater);
        assert_eq!(real.cmp(&s("√2"), &s("√2")), Ordering::Equal);
        let lex = OrderedGroup::zsqrt2_lex();
        assert_eq!(lex.cmp(&s("1"), &s("√2")), Ordering::Less);
        assert_eq!(lex.cmp(&s("100"), &s("-100+√2")), Ordering::Less);
        let x = real.element(s("√2")).unwrap();
        let y = lex.element(s("1")).unwrap();
        assert!(matches!(x.compare(&y), Err(Error::Context(_))));
    }

    #[test]
    fn lattice_basis_and_coordinates() {
        let g = OrderedGroup::zsqrt2_real();
        assert_eq!(g.basis(), &[s("√2"), s("1")]);
        assert_eq!(g.coordinates(&s("3-2√2")).unwrap(), vec![-2, 3]);
        assert!(g.coordinates(&s("1/2")).is_err());

        // ℤ·(1/2) + ℤ·(1/3) = ℤ·(1/6)
        let h = OrderedGroup::new(1, vec![s("1/2"), s("1/3")], OrderKind::RealEmbedding).unwrap();
        assert_eq!(h.basis(), &[s("1/6")]);
        assert_eq!(h.classify(), OrderClass::Discrete(s("1/6")));

        // generators (2+√2, 2-√2) span the lattice with basis (2+√2, 4)
        let k = OrderedGroup::new(2, vec![s("2+√2"), s("2-√2")], OrderKind::Lexicographic).unwrap();
        assert_eq!(k.rank(), 2);
        assert_eq!(k.classify(), OrderClass::Discrete(s("4")));
        assert!(k.contains(&s("2-√2")));
        assert!(!k.contains(&s("2")));

        // rank one oriented positive
        let r = OrderedGroup::new(2, vec![s("-1-√2")], OrderKind::RealEmbedding).unwrap();
        assert_eq!(r.basis(), &[s("1+√2")]);
        assert_eq!(r.coordinates(&s("-2-2√2")).unwrap(), vec![-2]);
    }

    #[test]
    fn degenerate_group() {
        assert!(matches!(
            OrderedGroup::new(1, vec![FieldScalar::zero()], OrderKind::RealEmbedding),
            Err(Error::DegenerateGroup(_))
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(OrderedGroup::integers().classify(), OrderClass::Discrete(s("1")));
        assert_eq!(OrderedGroup::zsqrt2_real().classify(), OrderClass::Dense);
        assert_eq!(OrderedGroup::zsqrt2_lex().classify(), OrderClass::Discrete(s("1")));
    }

    #[test]
    fn find_positive_below_examples() {
        let g = OrderedGroup::zsqrt2_real();
        assert_eq!(g.find_positive_below(&s("1"), &[], &[]).unwrap(), s("-1+√2"));
        // the height-2 element 2-√2 precedes 3-2√2 in height order
        assert_eq!(g.find_positive_below(&s("1"), &[s("-1+√2")], &[]).unwrap(), s("2-√2"));
        assert_eq!(
            g.find_positive_below(&s("1"), &[s("-1+√2"), s("2-√2")], &[s("1")]).unwrap(),
            s("-2+2√2")
        );
        let z = OrderedGroup::integers();
        assert!(matches!(
            z.find_positive_below(&s("1"), &[], &[]),
            Err(Error::SearchExhausted { .. })
        ));
        assert_eq!(z.find_positive_below(&s("3"), &[s("1")], &[]).unwrap(), s("2"));
    }

    #[test]
    fn decompose_examples() {
        let g = OrderedGroup::zsqrt2_lex();
        let one = s("1");
        assert_eq!(g.decompose(&s("5"), &one).unwrap(), Decomposition::Multiple(5));
        assert_eq!(g.decompose(&s("3+√2"), &one).unwrap(), Decomposition::AbovePositive);
        assert_eq!(g.decompose(&s("7-2√2"), &one).unwrap(), Decomposition::BelowNegative);
        assert!(g.decompose(&s("5"), &s("2")).is_err());
        assert!(OrderedGroup::zsqrt2_real().decompose(&s("1"), &one).is_err());
    }
}
