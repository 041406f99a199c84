//! Unknown and equation counts of the section system, and their behaviour as
//! polynomials in the ansatz degree `m`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::{binomial_big, factorial};
use crate::error::{Error, Result};

/// Default number of ansatz degrees scanned past `m̄` by [`minimal_m`].
pub const DEFAULT_M_CAP_OFFSET: u64 = 512;

/// Largest crossover [`minimal_m`] is willing to scan up to.
const CROSSOVER_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCounts {
    /// Dimension of the space of degree-`m` forms modulo `φ`.
    pub big_m: BigInt,
    pub lambda_count: BigInt,
    pub alpha_count: BigInt,
    pub equation_count: BigInt,
    /// `lambda_count + alpha_count > equation_count`.
    pub underdetermined: bool,
}

fn big(v: impl Into<BigInt>) -> BigInt {
    v.into()
}

fn check_inputs(n: u64, d: u32, k: u32, mbar: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::precondition(format!("degree must be at least 2, got {d}")));
    }
    if mbar < 1 {
        return Err(Error::precondition("base degree must be at least 1"));
    }
    if (k as u64) > n {
        return Err(Error::precondition(format!("need k <= n, got k={k}, n={n}")));
    }
    Ok(())
}

fn frame_unknowns(n: u64, k: u32) -> BigInt {
    big(k as u64 + 1) * big(n - k as u64) + BigInt::one()
}

pub fn section_lemma_counts(n: u64, d: u32, r: u32, k: u32, m: u64, mbar: u64, mu: u64) -> Result<SectionCounts> {
    check_inputs(n, d, k, mbar)?;
    if m <= mbar {
        return Err(Error::precondition(format!("ansatz degree m={m} must exceed base degree {mbar}")));
    }
    let s = r + 1;
    let c = binomial_big(&big(d + k), k);
    let big_m = binomial_big(&big(m + s as u64), s) - binomial_big(&big(m - mbar + s as u64), s);
    let lambda_count = frame_unknowns(n, k) * &big_m;
    let dm = big(d) * big(m);
    let alpha_count = &c * binomial_big(&(&dm - big(mbar) + big(mu) + big(s)), s);
    let equation_count = &c * binomial_big(&(&dm + big(mu) + big(s)), s);
    let underdetermined = &lambda_count + &alpha_count > equation_count;
    Ok(SectionCounts { big_m, lambda_count, alpha_count, equation_count, underdetermined })
}

type UPoly = Vec<BigRational>;

fn upoly_mul(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn upoly_add_scaled(acc: &mut UPoly, p: &UPoly, c: &BigRational) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigRational::zero());
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += x * c;
    }
}

/// `C(a·m + b, s)` as a polynomial in `m`.
fn binomial_poly(a: i64, b: &BigInt, s: u32) -> UPoly {
    let mut acc: UPoly = vec![BigRational::one()];
    for i in 0..s {
        let lin = vec![BigRational::from_integer(b - big(i)), BigRational::from_integer(big(a))];
        acc = upoly_mul(&acc, &lin);
    }
    let f = BigRational::from_integer(factorial(s));
    acc.iter().map(|c| c / &f).collect()
}

/// Coefficients (ascending powers of `m`) of
/// `lambda_count + alpha_count − equation_count`.
pub fn counting_polynomial(n: u64, d: u32, r: u32, k: u32, mbar: u64, mu: u64) -> Result<Vec<BigRational>> {
    check_inputs(n, d, k, mbar)?;
    let s = r + 1;
    let lead = BigRational::from_integer(frame_unknowns(n, k));
    let c = BigRational::from_integer(binomial_big(&big(d + k), k));
    let mut acc: UPoly = vec![BigRational::zero()];
    upoly_add_scaled(&mut acc, &binomial_poly(1, &big(s), s), &lead);
    upoly_add_scaled(&mut acc, &binomial_poly(1, &(big(s) - big(mbar)), s), &-lead.clone());
    upoly_add_scaled(&mut acc, &binomial_poly(d as i64, &(big(mu) + big(s) - big(mbar)), s), &c);
    upoly_add_scaled(&mut acc, &binomial_poly(d as i64, &(big(mu) + big(s)), s), &-c);
    while acc.len() > 1 && acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
    acc.resize(s as usize + 1, BigRational::zero());
    Ok(acc)
}

/// The coefficients times the lcm of their denominators; same sign at every `m`.
fn clear_denominators(p: &[BigRational]) -> Vec<BigInt> {
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.iter().map(|c| c.numer() * (&den / c.denom())).collect()
}

fn eval_int_poly(p: &[BigInt], m: u64) -> BigInt {
    let x = big(m);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingCoefficient {
    /// `(k+1)(n−k) + 1 − C(d+k, k)·d^r`.
    pub value: BigInt,
    pub positive: bool,
    /// The `m^{r+1}` coefficient of the counting difference is zero.
    pub top_vanishes: bool,
    /// The `m^r` coefficient equals `(m̄/r!)·value`.
    pub next_matches: bool,
    /// The expanded counting difference (with `μ = 0`), ascending in `m`.
    pub coefficients: Vec<BigRational>,
}

pub fn leading_coefficient_check(n: u64, d: u32, r: u32, k: u32, mbar: u64) -> Result<LeadingCoefficient> {
    check_inputs(n, d, k, mbar)?;
    let value = frame_unknowns(n, k) - binomial_big(&big(d + k), k) * big(d).pow(r);
    let coefficients = counting_polynomial(n, d, r, k, mbar, 0)?;
    let top_vanishes = coefficients[r as usize + 1].is_zero();
    let expected = BigRational::new(big(mbar) * &value, factorial(r));
    let next_matches = coefficients[r as usize] == expected;
    Ok(LeadingCoefficient { positive: value.is_positive(), value, top_vanishes, next_matches, coefficients })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalM {
    pub m: Option<u64>,
    /// Last ansatz degree examined.
    pub cap: u64,
    pub leading: BigInt,
    /// Past this `m` the counting difference is positive for good, when the
    /// leading value is positive (Cauchy root bound).
    pub crossover: Option<u64>,
}

/// `1 + max |a_i / a_r|` over the lower coefficients.
fn cauchy_bound(coefficients: &[BigRational], r: usize) -> BigInt {
    let lead = coefficients[r].abs();
    let mut best = BigRational::zero();
    for c in &coefficients[..r] {
        let q = c.abs() / &lead;
        if q > best {
            best = q;
        }
    }
    (best + BigRational::one()).ceil().to_integer()
}

/// Least `m > m̄` for which the system is underdetermined.
pub fn minimal_m(n: u64, d: u32, r: u32, k: u32, mbar: u64, mu: u64, cap: Option<u64>) -> Result<MinimalM> {
    let lead = leading_coefficient_check(n, d, r, k, mbar)?;
    let mut cap = cap.unwrap_or(mbar + DEFAULT_M_CAP_OFFSET);
    let poly = counting_polynomial(n, d, r, k, mbar, mu)?;
    let crossover = if lead.positive {
        let b = cauchy_bound(&poly, r as usize);
        let b = b.to_u64().filter(|&b| b <= CROSSOVER_LIMIT).ok_or_else(|| {
            Error::precondition(format!("crossover {b} exceeds the scan limit {CROSSOVER_LIMIT}; raise the cap"))
        })?;
        Some(b.max(mbar + 1))
    } else {
        None
    };
    if let Some(b) = crossover {
        cap = cap.max(b);
    }
    let scaled = clear_denominators(&poly);
    for m in mbar + 1..=cap {
        if eval_int_poly(&scaled, m).is_positive() {
            debug_assert!(section_lemma_counts(n, d, r, k, m, mbar, mu).is_ok_and(|c| c.underdetermined));
            return Ok(MinimalM { m: Some(m), cap, leading: lead.value, crossover });
        }
    }
    Ok(MinimalM { m: None, cap, leading: lead.value, crossover })
}
