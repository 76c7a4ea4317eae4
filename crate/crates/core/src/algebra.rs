//! The Lie algebra `ℒ[G]` with basis `{L_μ, I_μ, C, C_I, C_LI | μ ∈ G}`.
//!
//! Brackets:
//!
//! ```text
//! [L_μ, L_ν] = (μ−ν) L_{μ+ν} + δ_{μ,−ν} (μ³−μ)/12 C
//! [L_μ, I_ν] = −ν I_{μ+ν} − δ_{μ,−ν} (μ²+μ) C_LI
//! [I_μ, I_ν] = μ δ_{μ,−ν} C_I
//! ```
//!
//! with `C`, `C_I`, `C_LI` central. Also provides the embedding
//! `θ_x : ℒ[ℤ] → ℒ[ℤx]` and the matching transport of highest weights.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalar::FieldScalar;

/// A basis element of `ℒ[G]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    L(FieldScalar),
    I(FieldScalar),
    C,
    CI,
    CLI,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    L,
    I,
    C,
    CI,
    CLI,
}

impl Generator {
    pub fn tag(&self) -> Tag {
        match self {
            Generator::L(_) => Tag::L,
            Generator::I(_) => Tag::I,
            Generator::C => Tag::C,
            Generator::CI => Tag::CI,
            Generator::CLI => Tag::CLI,
        }
    }

    /// Index of `L_μ` / `I_μ`; `None` for central elements.
    pub fn index(&self) -> Option<&FieldScalar> {
        match self {
            Generator::L(m) | Generator::I(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_central(&self) -> bool {
        self.index().is_none()
    }

    pub fn from_parts(tag: Tag, index: Option<FieldScalar>) -> Result<Self> {
        match (tag, index) {
            (Tag::L, Some(m)) => Ok(Generator::L(m)),
            (Tag::I, Some(m)) => Ok(Generator::I(m)),
            (Tag::C, None) => Ok(Generator::C),
            (Tag::CI, None) => Ok(Generator::CI),
            (Tag::CLI, None) => Ok(Generator::CLI),
            (t, Some(_)) => Err(Error::precondition(format!("central generator {t:?} takes no index"))),
            (t, None) => Err(Error::precondition(format!("generator {t:?} needs an index"))),
        }
    }

    /// Same tag with a new index (identity for central elements).
    pub fn with_index(&self, index: FieldScalar) -> Self {
        match self {
            Generator::L(_) => Generator::L(index),
            Generator::I(_) => Generator::I(index),
            g => g.clone(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::L(m) => write!(f, "L[{m}]"),
            Generator::I(m) => write!(f, "I[{m}]"),
            Generator::C => f.write_str("C"),
            Generator::CI => f.write_str("CI"),
            Generator::CLI => f.write_str("CLI"),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s = input.trim();
        match s {
            "C" => return Ok(Generator::C),
            "CI" | "C_I" => return Ok(Generator::CI),
            "CLI" | "C_LI" => return Ok(Generator::CLI),
            _ => {}
        }
        let (head, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let index = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(input, "expected `L[μ]`, `I[μ]`, `C`, `CI` or `CLI`"))?;
        let index: FieldScalar = index.parse()?;
        match head {
            "L" => Ok(Generator::L(index)),
            "I" => Ok(Generator::I(index)),
            _ => Err(Error::parse(input, format!("unknown generator `{head}`"))),
        }
    }
}

/// A finite linear combination of generators with no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<Generator, FieldScalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(g: Generator, coeff: FieldScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(g, coeff);
        e
    }

    pub fn generator(g: Generator) -> Self {
        Self::term(g, FieldScalar::one())
    }

    pub fn add_term(&mut self, g: Generator, coeff: FieldScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(g) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &FieldScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Generator) -> FieldScalar {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn scaled(&self, s: &FieldScalar) -> Self {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_term(g.clone(), c * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&FieldScalar::from_int(-1)))
    }

    fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms
            .iter()
            .flat_map(|(g, c)| g.index().map(FieldScalar::radicand).into_iter().chain([c.radicand()]))
            .filter(|&d| d != 1)
    }

    /// The common radicand of indices and coefficients, if any is irrational.
    pub fn radicand(&self) -> Result<u64> {
        let mut seen = 1;
        for d in self.radicands() {
            if seen != 1 && d != seen {
                return Err(Error::Context(format!("mixes ℚ(√{seen}) and ℚ(√{d})")));
            }
            seen = d;
        }
        Ok(seen)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coeff: &FieldScalar, body: &str) -> fmt::Result {
    let (negative, magnitude) = if coeff.is_simple() && coeff.is_negative() {
        (true, -coeff.clone())
    } else {
        (false, coeff.clone())
    };
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if magnitude.is_one() && !body.is_empty() {
        return f.write_str(body);
    }
    if magnitude.is_simple() {
        write!(f, "{magnitude}")?;
    } else {
        write!(f, "({magnitude})")?;
    }
    if !body.is_empty() {
        write!(f, "*{body}")?;
    }
    Ok(())
}

/// Writes `Σ coeff*body` as `a*x + b*y - c*z`; `0` when empty.
pub(crate) fn write_sum<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a FieldScalar, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, body) in terms {
        write_term(f, first, c, &body)?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|(g, c)| (c, g.to_string())))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Splits `a*x + b*y - c*z` into signed `(coefficient, body)` pieces.
///
/// Separators are `+`/`-` at bracket depth zero that follow a complete
/// term; signs inside `[...]` and `(...)` stay with their term.
pub(crate) fn split_sum(input: &str) -> Result<Vec<(FieldScalar, String)>> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::parse(input, "empty expression"));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut depth = 0i32;
    for ch in s.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        let at_boundary = depth == 0 && (ch == '+' || ch == '-');
        let current_has_content = !current.trim().is_empty();
        let after_operator = current.trim_end().ends_with('*') || current.trim_end().ends_with('/');
        if at_boundary && current_has_content && !after_operator {
            pieces.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else if at_boundary && !current_has_content {
            if ch == '-' {
                negative = !negative;
            }
        } else {
            current.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::parse(input, "unbalanced brackets"));
    }
    pieces.push((negative, current));
    pieces
        .into_iter()
        .map(|(neg, text)| {
            let text = text.trim();
            if text.is_empty() {
                return Err(Error::parse(input, "empty term"));
            }
            let (coeff, body) = match split_coefficient(text) {
                Some((c, b)) => (c.parse::<FieldScalar>()?, b.trim().to_string()),
                None if text.parse::<FieldScalar>().is_ok() => (text.parse()?, String::new()),
                None => (FieldScalar::one(), text.to_string()),
            };
            Ok((if neg { -coeff } else { coeff }, body))
        })
        .collect()
}

fn split_coefficient(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            '*' if depth == 0 => return Some((&text[..i], &text[i + 1..])),
            _ => {}
        }
    }
    None
}

impl FromStr for AlgebraElement {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        if input.trim() == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for (coeff, body) in split_sum(input)? {
            if body.is_empty() {
                return Err(Error::parse(input, "scalar term without a generator"));
            }
            out.add_term(body.parse()?, coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    index: Option<FieldScalar>,
    coeff: FieldScalar,
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter().map(|(g, c)| TermJson {
            tag: g.tag(),
            index: g.index().cloned(),
            coeff: c.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<TermJson> = Vec::deserialize(deserializer)?;
        let mut out = AlgebraElement::zero();
        for t in raw {
            let g = Generator::from_parts(t.tag, t.index).map_err(serde::de::Error::custom)?;
            out.add_term(g, t.coeff);
        }
        Ok(out)
    }
}

fn int(n: i64) -> FieldScalar {
    FieldScalar::from_int(n)
}

/// Bracket of two basis elements.
pub fn bracket_generators(x: &Generator, y: &Generator) -> AlgebraElement {
    use Generator::*;
    let mut out = AlgebraElement::zero();
    match (x, y) {
        (L(m), L(n)) => {
            out.add_term(L(m + n), m - n);
            if (m + n).is_zero() {
                // (μ³ − μ)/12
                out.add_term(C, &(&m.pow(3) - m) / &int(12));
            }
        }
        (L(m), I(n)) => {
            out.add_term(I(m + n), -n);
            if (m + n).is_zero() {
                out.add_term(CLI, -(&(m * m) + m));
            }
        }
        (I(_), L(_)) => return bracket_generators(y, x).scaled(&int(-1)),
        (I(m), I(n))
            if (m + n).is_zero() => {
                out.add_term(CI, m.clone());
            }
        _ => {}
    }
    out
}

/// Bilinear bracket `[u, v]`.
pub fn bracket(u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
    let (du, dv) = (u.radicand()?, v.radicand()?);
    if du != 1 && dv != 1 && du != dv {
        return Err(Error::Context(format!("bracket of elements over ℚ(√{du}) and ℚ(√{dv})")));
    }
    let mut out = AlgebraElement::zero();
    for (g, a) in u.terms() {
        for (h, b) in v.terms() {
            let ab = a * b;
            for (k, c) in bracket_generators(g, h).terms() {
                out.add_term(k.clone(), c * &ab);
            }
        }
    }
    Ok(out)
}

/// One row of the `θ_x` table: `θ_x(g) = scale·g' + correction`.
struct ThetaRow {
    image: Generator,
    scale: FieldScalar,
    correction: Option<(Generator, FieldScalar)>,
}

fn theta_row(x: &FieldScalar, g: &Generator) -> Result<ThetaRow> {
    let xinv = x.inv();
    let integer_index = |i: &FieldScalar| {
        i.as_integer()
            .map(|_| i.clone())
            .ok_or_else(|| Error::precondition(format!("θ is defined on ℒ[ℤ]; index {i} is not an integer")))
    };
    Ok(match g {
        Generator::L(i) => {
            let i = integer_index(i)?;
            let correction = i.is_zero().then(|| (Generator::C, &(x - &xinv) / &int(24)));
            ThetaRow { image: Generator::L(&i * x), scale: xinv, correction }
        }
        Generator::I(i) => {
            let i = integer_index(i)?;
            let correction = i.is_zero().then(|| (Generator::CLI, &int(1) - &xinv));
            ThetaRow { image: Generator::I(&i * x), scale: xinv, correction }
        }
        Generator::C => ThetaRow { image: Generator::C, scale: x.clone(), correction: None },
        Generator::CI => ThetaRow { image: Generator::CI, scale: xinv, correction: None },
        Generator::CLI => ThetaRow { image: Generator::CLI, scale: int(1), correction: None },
    })
}

fn nonzero(x: &FieldScalar) -> Result<()> {
    if x.is_zero() {
        Err(Error::precondition("θ_x needs x ≠ 0"))
    } else {
        Ok(())
    }
}

/// The isomorphism `θ_x : ℒ[ℤ] → ℒ[ℤx]`:
///
/// ```text
/// L_i  ↦ x⁻¹ L_{ix} + δ_{i,0} (x − x⁻¹)/24 C
/// I_i  ↦ x⁻¹ I_{ix} + δ_{i,0} (1 − x⁻¹) C_LI
/// C    ↦ x C,   C_I ↦ x⁻¹ C_I,   C_LI ↦ C_LI
/// ```
pub fn theta(x: &FieldScalar, u: &AlgebraElement) -> Result<AlgebraElement> {
    nonzero(x)?;
    let mut out = AlgebraElement::zero();
    for (g, c) in u.terms() {
        let row = theta_row(x, g)?;
        out.add_term(row.image, c * &row.scale);
        if let Some((central, k)) = row.correction {
            out.add_term(central, c * &k);
        }
    }
    Ok(out)
}

/// Inverse of [`theta`], read off the same table.
pub fn theta_inverse(x: &FieldScalar, u: &AlgebraElement) -> Result<AlgebraElement> {
    nonzero(x)?;
    let mut out = AlgebraElement::zero();
    for (g, c) in u.terms() {
        let source = match g.index() {
            Some(m) => {
                let i = m / x;
                if i.as_integer().is_none() {
                    return Err(Error::precondition(format!("index {m} is not in ℤ·{x}")));
                }
                g.with_index(i)
            }
            None => g.clone(),
        };
        let row = theta_row(x, &source)?;
        // g = (θ(source) − correction) / scale
        let inv_scale = row.scale.inv();
        out.add_term(source, c * &inv_scale);
        if let Some((central, k)) = row.correction {
            let central_pre = theta_inverse(x, &AlgebraElement::generator(central))?;
            out = out.add(&central_pre.scaled(&-(c * &k * &inv_scale)));
        }
    }
    Ok(out)
}

/// `(h, h_I, c, c_I, c_LI)`: the eigenvalues of `L_0, I_0, C, C_I, C_LI` on `v_h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighestWeight {
    pub h: FieldScalar,
    pub h_i: FieldScalar,
    pub c: FieldScalar,
    pub c_i: FieldScalar,
    pub c_li: FieldScalar,
}

impl HighestWeight {
    pub fn new(h: FieldScalar, h_i: FieldScalar, c: FieldScalar, c_i: FieldScalar, c_li: FieldScalar) -> Self {
        Self { h, h_i, c, c_i, c_li }
    }

    pub fn from_ints(h: i64, h_i: i64, c: i64, c_i: i64, c_li: i64) -> Self {
        Self::new(int(h), int(h_i), int(c), int(c_i), int(c_li))
    }

    pub fn components(&self) -> [&FieldScalar; 5] {
        [&self.h, &self.h_i, &self.c, &self.c_i, &self.c_li]
    }

    /// Scalar by which a central generator acts.
    pub fn central_value(&self, g: &Generator) -> Option<&FieldScalar> {
        match g {
            Generator::C => Some(&self.c),
            Generator::CI => Some(&self.c_i),
            Generator::CLI => Some(&self.c_li),
            _ => None,
        }
    }

    pub fn radicand(&self) -> Result<u64> {
        let mut seen = 1;
        for d in self.components().iter().map(|s| s.radicand()).filter(|&d| d != 1) {
            if seen != 1 && seen != d {
                return Err(Error::Context("highest weight mixes quadratic fields".into()));
            }
            seen = d;
        }
        Ok(seen)
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.h, self.h_i, self.c, self.c_i, self.c_li)
    }
}

impl FromStr for HighestWeight {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let parts: Vec<&str> = input.split(',').collect();
        if parts.len() != 5 {
            return Err(Error::parse(input, "expected five comma-separated scalars h,hI,c,cI,cLI"));
        }
        let v: Vec<FieldScalar> = parts.iter().map(|p| p.parse()).collect::<Result<_>>()?;
        let [h, h_i, c, c_i, c_li]: [FieldScalar; 5] = v.try_into().expect("five parts");
        Ok(Self::new(h, h_i, c, c_i, c_li))
    }
}

/// Highest weight of `U(ℒ[ℤx])v_h` viewed as an `ℒ`-module through `θ_x`:
/// `(x⁻¹h + (x−x⁻¹)/24·c, x⁻¹h_I + (1−x⁻¹)c_LI, x·c, x⁻¹c_I, c_LI)`.
pub fn transport_highest_weight(x: &GroupElement, hw: &HighestWeight) -> Result<HighestWeight> {
    if !x.is_positive() {
        return Err(Error::precondition(format!("transport needs x ≻ 0, got {x}")));
    }
    let x = x.value();
    let xinv = x.inv();
    Ok(HighestWeight {
        h: &xinv * &hw.h + &(x - &xinv) / &int(24) * &hw.c,
        h_i: &xinv * &hw.h_i + (&int(1) - &xinv) * &hw.c_li,
        c: x * &hw.c,
        c_i: &xinv * &hw.c_i,
        c_li: hw.c_li.clone(),
    })
}
