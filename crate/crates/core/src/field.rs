//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! A [`FieldSpec`] names the field, a [`FieldElement`] is a value in it. Every
//! element carries enough information to know its field, so mixing elements of
//! different fields is caught at the point of the operation (it panics, the same
//! way mismatched matrix shapes do in most linear-algebra crates).

use alloc::format;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for `F_p`; keeps residue products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    /// Always in lowest terms with a positive denominator (`BigRational` keeps
    /// that normal form).
    Rational(BigRational),
    /// `value` is reduced, `0 <= value < modulus`.
    Residue { value: u64, modulus: u64 },
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::precondition(format!("modulus {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::precondition(format!("modulus {p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_u64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => FieldElement::Residue { value: v % p, modulus: p },
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => {
                FieldElement::Residue { value: (v as i128).rem_euclid(p as i128) as u64, modulus: p }
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElement::Residue { value: r.to_u64().unwrap_or(0), modulus: p }
            }
        }
    }

    /// Maps a rational into the field; fails in `F_p` when `p` divides the
    /// denominator.
    pub fn from_rational(&self, v: &BigRational) -> Result<FieldElement> {
        match self {
            FieldSpec::Rationals => Ok(FieldElement::Rational(v.clone())),
            FieldSpec::Prime(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                let inv = den.inv().ok_or(Error::DivisionByZero)?;
                Ok(num * inv)
            }
        }
    }

    /// Parses an integer or `p/q` literal (optional leading sign).
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        let bad = || Error::Parse { position: 0, message: format!("invalid field literal `{t}`") };
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(num, den))
    }

    pub fn contains(&self, e: &FieldElement) -> bool {
        e.spec() == *self
    }

    /// All residues `0..p` in increasing order; `None` over the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldElement>> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..p).map(move |v| FieldElement::Residue { value: v, modulus: p })),
        }
    }

    /// Uniform residue in `F_p`, or an integer in `[-bound, bound]` over `Q`.
    pub fn random_element<R: rand_core::RngCore + ?Sized>(&self, rng: &mut R, bound: u32) -> FieldElement {
        match *self {
            FieldSpec::Rationals => {
                let span = 2 * bound as u64 + 1;
                let v = (rng.next_u64() % span) as i64 - bound as i64;
                self.from_i64(v)
            }
            FieldSpec::Prime(p) => self.from_u64(rng.next_u64() % p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "p={p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `p=<prime>`, `F<prime>` or `F_<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "q" || t == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = t.strip_prefix("p=").or_else(|| t.strip_prefix("F_")).or_else(|| t.strip_prefix('F')).unwrap_or(t);
        let p: u64 = digits.parse().map_err(|_| Error::Parse {
            position: 0,
            message: format!("invalid field `{t}`, expected Q or p=<prime>"),
        })?;
        FieldSpec::prime(p)
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElement::Rational(_) => None,
            FieldElement::Residue { value, .. } => Some(*value),
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Residue { value, modulus } => {
                FieldElement::Residue { value: mod_pow(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn pow(&self, exp: u32) -> FieldElement {
        match self {
            FieldElement::Rational(r) => FieldElement::Rational(num_traits::pow(r.clone(), exp as usize)),
            FieldElement::Residue { value, modulus } => {
                FieldElement::Residue { value: mod_pow(*value, exp as u64, *modulus), modulus: *modulus }
            }
        }
    }

    /// Negative rationals, for printing signs; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Residue { .. } => false,
        }
    }
}

fn check_same(a: &FieldElement, b: &FieldElement) {
    if a.spec() != b.spec() {
        panic!("field mismatch: {} vs {}", a.spec(), b.spec());
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        check_same(self, rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Residue { value: a, modulus }, FieldElement::Residue { value: b, .. }) => {
                FieldElement::Residue { value: (a + b) % modulus, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        check_same(self, rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Residue { value: a, modulus }, FieldElement::Residue { value: b, .. }) => {
                FieldElement::Residue { value: (a + modulus - b) % modulus, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        check_same(self, rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Residue { value: a, modulus }, FieldElement::Residue { value: b, .. }) => {
                FieldElement::Residue { value: a * b % modulus, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        let inv = rhs.inv().expect("division by zero in field");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Residue { value, modulus } => {
                FieldElement::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn rejects_composite_modulus() {
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert_eq!(FieldSpec::prime(7).unwrap(), FieldSpec::Prime(7));
    }

    #[test]
    fn residues_are_reduced() {
        let f = FieldSpec::Prime(5);
        assert_eq!(f.from_i64(-2), f.from_u64(3));
        assert_eq!(f.from_i64(12).residue(), Some(2));
        let half = f.parse_element("1/2").unwrap();
        assert_eq!(&half * &f.from_u64(2), f.one());
        assert!(f.parse_element("1/5").is_err());
    }

    #[test]
    fn rationals_lowest_terms() {
        let q = FieldSpec::Rationals;
        let x = q.parse_element("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!((&x * &x.inv().unwrap()), q.one());
    }

    #[test]
    fn parses_field_specs() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("p=7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("F3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert!("p=8".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn inverse_in_prime_field() {
        let f = FieldSpec::Prime(7);
        for a in f.elements().unwrap().skip(1) {
            assert!((&a * &a.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }
}
