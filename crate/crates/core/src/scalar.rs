//! Exact arithmetic in `ℚ` and real quadratic fields `ℚ(√d)`.
//!
//! A [`FieldScalar`] is `a + b√d` with `a, b` reduced fractions and `d` a
//! square-free positive integer. Values with `b = 0` are normalized to
//! `d = 1`, so structural equality coincides with numeric equality.
//! Ordering is the ordering of the real embedding `√d > 0`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `a + b√d` of `ℚ(√d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn square_free_part(mut d: u64) -> (u64, u64) {
    // returns (k, d') with d = k^2 d'
    let mut k = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, d)
}

impl FieldScalar {
    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q`; panics when `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `a + b√d`. Square factors of `d` are pulled into `b`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Self {
        assert!(d > 0, "radicand must be positive");
        let (k, d) = square_free_part(d);
        let b = b * BigRational::from_integer(BigInt::from(k));
        if d == 1 {
            return Self::rational(a + b);
        }
        if b.is_zero() {
            return Self::rational(a);
        }
        Self { a, b, d }
    }

    /// `√d`.
    pub fn sqrt(d: u64) -> Self {
        Self::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    /// Integer combination `a + b√d`.
    pub fn from_parts_i64(a: i64, b: i64, d: u64) -> Self {
        Self::quadratic(
            BigRational::from_integer(BigInt::from(a)),
            BigRational::from_integer(BigInt::from(b)),
            d,
        )
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    /// Radicand; `1` for rational values.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The integer value, if this is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    /// Whether both values live in a common field.
    pub fn compatible(&self, other: &Self) -> bool {
        self.d == 1 || other.d == 1 || self.d == other.d
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("mixing ℚ(√{d}) and ℚ(√{e})"),
        }
    }

    fn build(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 1 {
            Self::rational(a)
        } else {
            Self { a, b, d }
        }
    }

    /// Sign of the real embedding.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (s, t) if s == t => s,
            (s, t) => {
                let a2 = &self.a * &self.a;
                let db2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
                // √d is irrational, so a^2 != d b^2
                if a2 > db2 {
                    s
                } else {
                    t
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Field norm `a² − d b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::build(&self.a / &n, -(&self.b / &n), self.d))
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        self.checked_inv().expect("division by zero")
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Floating-point approximation, used only for search prefiltering.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Single-term values print without parentheses in products.
    pub fn is_simple(&self) -> bool {
        self.a.is_zero() || self.b.is_zero()
    }
}

impl Default for FieldScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.b == other.b && (self.d == other.d || self.b.is_zero()) {
            return self.a.cmp(&other.a);
        }
        (self - other).signum()
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        let d = self.common_radicand(rhs);
        FieldScalar::build(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        let d = self.common_radicand(rhs);
        FieldScalar::build(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        if self.b.is_zero() && rhs.b.is_zero() {
            return FieldScalar::rational(&self.a * &rhs.a);
        }
        let d = self.common_radicand(rhs);
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        FieldScalar::build(a, b, d)
    }
}

impl<'a> Div<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn div(self, rhs: &FieldScalar) -> FieldScalar {
        if rhs.b.is_zero() {
            assert!(!rhs.a.is_zero(), "division by zero");
            return FieldScalar::build(&self.a / &rhs.a, &self.b / &rhs.a, self.d);
        }
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: &FieldScalar) -> FieldScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldScalar> for &'a FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                self.$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -self.clone()
    }
}

impl AddAssign<&FieldScalar> for FieldScalar {
    fn add_assign(&mut self, rhs: &FieldScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldScalar> for FieldScalar {
    fn sub_assign(&mut self, rhs: &FieldScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldScalar> for FieldScalar {
    fn mul_assign(&mut self, rhs: &FieldScalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for FieldScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for FieldScalar {
    fn from(a: BigRational) -> Self {
        Self::rational(a)
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn write_radical(f: &mut fmt::Formatter<'_>, b: &BigRational, d: u64) -> fmt::Result {
    if b.is_one() {
        write!(f, "√{d}")
    } else if (-b).is_one() {
        write!(f, "-√{d}")
    } else {
        write_ratio(f, b)?;
        write!(f, "√{d}")
    }
}

/// Canonical text form: `p/q`, `r/s√d`, or `p/q+r/s√d`.
impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write_ratio(f, &self.a);
        }
        if self.a.is_zero() {
            return write_radical(f, &self.b, self.d);
        }
        write_ratio(f, &self.a)?;
        if self.b.is_positive() {
            f.write_str("+")?;
        }
        write_radical(f, &self.b, self.d)
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_ratio(s: &str, whole: &str) -> Result<BigRational> {
    let bad = || Error::parse(whole, format!("invalid rational `{s}`"));
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
    let r = match body.split_once('/') {
        Some((p, q)) => {
            if !digits(p) || !digits(q) {
                return Err(bad());
            }
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::parse(whole, "zero denominator"));
            }
            BigRational::new(p.parse().map_err(|_| bad())?, q)
        }
        None => {
            if !digits(body) {
                return Err(bad());
            }
            BigRational::from_integer(body.parse().map_err(|_| bad())?)
        }
    };
    Ok(if sign < 0 { -r } else { r })
}

/// Coefficient in front of a radical: empty or a bare sign means ±1.
fn parse_coefficient(s: &str, whole: &str) -> Result<BigRational> {
    match s {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_ratio(s, whole),
    }
}

impl FromStr for FieldScalar {
    type Err = Error;

    /// Accepts the canonical form plus `sqrt(d)` / `sqrtd` spellings,
    /// optional surrounding parentheses, and embedded whitespace.
    fn from_str(input: &str) -> Result<Self> {
        let mut s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        while s.starts_with('(') && s.ends_with(')') && s.len() >= 2 {
            s = s[1..s.len() - 1].to_string();
        }
        if s.is_empty() {
            return Err(Error::parse(input, "empty scalar"));
        }
        let s = s.replace("sqrt", "√");
        let Some(pos) = s.find('√') else {
            return Ok(Self::rational(parse_ratio(&s, input)?));
        };
        let prefix = &s[..pos];
        let mut radicand = &s[pos + '√'.len_utf8()..];
        if let Some(inner) = radicand.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            radicand = inner;
        }
        if radicand.is_empty() || !radicand.bytes().all(|c| c.is_ascii_digit()) {
            return Err(Error::parse(input, format!("invalid radicand `{radicand}`")));
        }
        let d: u64 = radicand
            .parse()
            .map_err(|_| Error::parse(input, "radicand out of range"))?;
        if d == 0 {
            return Err(Error::parse(input, "radicand must be positive"));
        }
        let split = prefix
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back();
        let (a, b) = match split {
            Some(i) => (parse_ratio(&prefix[..i], input)?, parse_coefficient(&prefix[i..], input)?),
            None => (BigRational::zero(), parse_coefficient(prefix, input)?),
        };
        Ok(Self::quadratic(a, b, d))
    }
}

impl Serialize for FieldScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
