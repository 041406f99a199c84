//! Exact evaluation of the numeric thresholds attached to k-planes on
//! hypersurfaces and to unirationality of hypersurfaces and their families.
//!
//! Every bound is computed over big integers and rationals; nothing is
//! rounded until the final ceiling or strict-floor step, and the certificate
//! records which of the two was applied.

mod counting;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinatorics::binomial_big;
use crate::error::{Error, Result};

pub use counting::{
    counting_polynomial, leading_coefficient_check, minimal_m, section_lemma_counts, LeadingCoefficient, MinimalM,
    SectionCounts, DEFAULT_M_CAP_OFFSET,
};

/// How a rational threshold turns into a minimal integer `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// `n >= threshold`: minimal `n` is the ceiling.
    AtLeast,
    /// `n > threshold`: minimal `n` is the floor plus one.
    Strict,
}

impl Rounding {
    pub fn minimal(self, threshold: &BigRational) -> BigInt {
        match self {
            Rounding::AtLeast => threshold.ceil().to_integer(),
            Rounding::Strict => threshold.floor().to_integer() + BigInt::one(),
        }
    }

    pub fn holds(self, n: &BigInt, threshold: &BigRational) -> bool {
        let n = BigRational::from_integer(n.clone());
        match self {
            Rounding::AtLeast => &n >= threshold,
            Rounding::Strict => &n > threshold,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rounding::AtLeast => ">=",
            Rounding::Strict => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessValue {
    Int(BigInt),
    Rational(BigRational),
    Flag(bool),
    Text(String),
}

/// The outcome of one threshold evaluation. `satisfied` is `None` when no
/// `n` was supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCertificate {
    pub name: String,
    pub inputs: Vec<(String, BigInt)>,
    pub threshold: BigRational,
    pub rounding: Rounding,
    pub minimal_n: BigInt,
    pub satisfied: Option<bool>,
    pub witness: Vec<(String, WitnessValue)>,
    pub formula: String,
}

impl BoundCertificate {
    fn build(
        name: &str,
        inputs: Vec<(&str, BigInt)>,
        threshold: BigRational,
        rounding: Rounding,
        n: Option<&BigInt>,
        witness: Vec<(&str, WitnessValue)>,
        formula: &str,
    ) -> Self {
        let minimal_n = rounding.minimal(&threshold);
        let mut inputs: Vec<(String, BigInt)> = inputs.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        if let Some(n) = n {
            inputs.push(("n".into(), n.clone()));
        }
        let mut witness: Vec<(String, WitnessValue)> = witness.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        witness.push(("rounding".into(), WitnessValue::Text(rounding.name().into())));
        witness.push(("minimal_n".into(), WitnessValue::Int(minimal_n.clone())));
        BoundCertificate {
            name: name.to_string(),
            inputs,
            satisfied: n.map(|n| rounding.holds(n, &threshold)),
            threshold,
            rounding,
            minimal_n,
            witness,
            formula: formula.to_string(),
        }
    }

    pub fn witness_value(&self, key: &str) -> Option<&WitnessValue> {
        self.witness.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

fn big(v: impl Into<BigInt>) -> BigInt {
    v.into()
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn need_degree(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::precondition(format!("degree must be at least 2, got {d}")));
    }
    Ok(())
}

fn need_t(t: i64) -> Result<()> {
    if t < -1 {
        return Err(Error::precondition(format!("singular-locus dimension must be >= -1, got {t}")));
    }
    Ok(())
}

/// `k(2) = 0`, `k(d) = C(k(d−1) + d − 1, d − 1)`.
pub fn predonzan_k(d: u32) -> Result<BigInt> {
    need_degree(d)?;
    let mut k = BigInt::zero();
    for e in 3..=d {
        k = binomial_big(&(k + big(e - 1)), e - 1);
    }
    Ok(k)
}

/// `k(d)` as a machine integer, for use as a plane dimension.
pub fn predonzan_k_small(d: u32) -> Result<u32> {
    predonzan_k(d)?.to_u32().ok_or_else(|| Error::precondition(format!("k({d}) does not fit a plane dimension")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorinVariant {
    /// `n >= C(k+d, d)/(k+1)`, or `n >= 2k+1` for quadrics with `k >= 2`.
    Verbatim,
    /// Smallest `n` with `(k+1)(n−k) >= C(k+d, d)`.
    ExpectedDimension,
}

impl MorinVariant {
    pub fn name(self) -> &'static str {
        match self {
            MorinVariant::Verbatim => "verbatim",
            MorinVariant::ExpectedDimension => "expected_dimension",
        }
    }
}

pub fn morin_certificate(d: u32, k: u32, variant: MorinVariant, n: Option<&BigInt>) -> Result<BoundCertificate> {
    need_degree(d)?;
    if k < 1 {
        return Err(Error::precondition("plane dimension must be at least 1"));
    }
    let c = binomial_big(&big(k + d), d);
    let inputs = vec![("d", big(d)), ("k", big(k))];
    let variant_text = WitnessValue::Text(variant.name().into());
    Ok(match variant {
        MorinVariant::Verbatim if d == 2 && k >= 2 => BoundCertificate::build(
            "morin_threshold",
            inputs,
            BigRational::from_integer(big(2 * k + 1)),
            Rounding::AtLeast,
            n,
            vec![("variant", variant_text), ("binomial_k_plus_d_d", WitnessValue::Int(c))],
            "n >= 2k+1 (d = 2, k >= 2)",
        ),
        MorinVariant::Verbatim => BoundCertificate::build(
            "morin_threshold",
            inputs,
            ratio(c.clone(), big(k + 1)),
            Rounding::AtLeast,
            n,
            vec![("variant", variant_text), ("binomial_k_plus_d_d", WitnessValue::Int(c))],
            "n >= C(k+d,d)/(k+1)",
        ),
        MorinVariant::ExpectedDimension => BoundCertificate::build(
            "morin_threshold",
            inputs,
            ratio(c.clone(), big(k + 1)) + BigRational::from_integer(big(k)),
            Rounding::AtLeast,
            n,
            vec![("variant", variant_text), ("binomial_k_plus_d_d", WitnessValue::Int(c))],
            "(k+1)(n-k) >= C(k+d,d)",
        ),
    })
}

pub fn morin_threshold(d: u32, k: u32, variant: MorinVariant) -> Result<BigInt> {
    Ok(morin_certificate(d, k, variant, None)?.minimal_n)
}

fn plane_condition_rhs(d: u32, r: u32, k: &BigInt) -> BigRational {
    let c = binomial_big(&(k + big(d)), d);
    let num = c * big(d).pow(r) - BigInt::one();
    BigRational::from_integer(k.clone()) + ratio(num, k + BigInt::one())
}

/// `n > k + (C(d+k, k)·d^r − 1)/(k+1)`.
pub fn family_plane_certificate(d: u32, r: u32, k: u32, n: Option<&BigInt>) -> Result<BoundCertificate> {
    need_degree(d)?;
    let kb = big(k);
    let c = binomial_big(&big(k + d), d);
    Ok(BoundCertificate::build(
        "family_plane_bound",
        vec![("d", big(d)), ("r", big(r)), ("k", kb.clone())],
        plane_condition_rhs(d, r, &kb),
        Rounding::Strict,
        n,
        vec![("binomial_d_plus_k_k", WitnessValue::Int(c)), ("d_pow_r", WitnessValue::Int(big(d).pow(r)))],
        "n > k + (C(d+k,k)*d^r - 1)/(k+1)",
    ))
}

pub fn family_plane_bound(d: u32, r: u32, k: u32) -> Result<BigInt> {
    Ok(family_plane_certificate(d, r, k, None)?.minimal_n)
}

/// `n >= C(k(d)+d, d)/(k(d)+1) + k(d) + t + 1`, with `t = −1` for smooth.
pub fn predonzan_unirationality_certificate(d: u32, t: i64, n: Option<&BigInt>) -> Result<BoundCertificate> {
    need_degree(d)?;
    need_t(t)?;
    let kd = predonzan_k(d)?;
    let c = binomial_big(&(&kd + big(d)), d);
    let threshold = ratio(c.clone(), &kd + BigInt::one()) + BigRational::from_integer(&kd + big(t) + BigInt::one());
    Ok(BoundCertificate::build(
        "predonzan_unirationality_bound",
        vec![("d", big(d)), ("t", big(t))],
        threshold,
        Rounding::AtLeast,
        n,
        vec![
            ("k_d", WitnessValue::Int(kd)),
            ("binomial_k_d_plus_d_d", WitnessValue::Int(c)),
            ("smooth_convention", WitnessValue::Text("t = -1 means smooth".into())),
        ],
        "n >= C(k(d)+d,d)/(k(d)+1) + k(d) + t + 1",
    ))
}

pub fn predonzan_unirationality_bound(d: u32, t: i64) -> Result<BigInt> {
    Ok(predonzan_unirationality_certificate(d, t, None)?.minimal_n)
}

/// `n > k(d) + (C(d+k(d), k(d))·d^r − 1)/(k(d)+1) + t + 1`.
pub fn family_unirationality_certificate(d: u32, r: u32, t: i64, n: Option<&BigInt>) -> Result<BoundCertificate> {
    need_degree(d)?;
    need_t(t)?;
    let kd = predonzan_k(d)?;
    let threshold = plane_condition_rhs(d, r, &kd) + BigRational::from_integer(big(t) + BigInt::one());
    let satisfied_text = "then the family is unirational";
    let mut witness = vec![
        ("k_d", WitnessValue::Int(kd.clone())),
        ("binomial_d_plus_k_d_k_d", WitnessValue::Int(binomial_big(&(&kd + big(d)), d))),
        ("conclusion", WitnessValue::Text(satisfied_text.into())),
        ("smooth_convention", WitnessValue::Text("t = -1 means smooth".into())),
        ("assumptions", WitnessValue::Text("generic fibre irreducible; taken as given, not checked".into())),
    ];
    if let Some(n) = n {
        // cutting with a general (n-t-1)-plane, which is not constructed
        witness.push(("reduced_ambient", WitnessValue::Int(n - big(t) - BigInt::one())));
    }
    Ok(BoundCertificate::build(
        "family_unirationality_bound",
        vec![("d", big(d)), ("r", big(r)), ("t", big(t))],
        threshold,
        Rounding::Strict,
        n,
        witness,
        "n > k(d) + (C(d+k(d),k(d))*d^r - 1)/(k(d)+1) + t + 1",
    ))
}

pub fn family_unirationality_bound(d: u32, r: u32, t: i64) -> Result<BigInt> {
    Ok(family_unirationality_certificate(d, r, t, None)?.minimal_n)
}

/// Degree of the composite dominant map when the base is unirational of
/// degree `a` and the fibres of degree `b`.
pub fn roth_degree(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::precondition("degrees must be at least 1"));
    }
    Ok(a * b)
}

pub fn roth_certificate(a: &BigInt, b: &BigInt, base: &str, fibre: &str) -> Result<BoundCertificate> {
    let degree = roth_degree(a, b)?;
    let rational = degree.is_one();
    Ok(BoundCertificate::build(
        "roth_degree",
        vec![("a", a.clone()), ("b", b.clone())],
        BigRational::from_integer(degree.clone()),
        Rounding::AtLeast,
        None,
        vec![
            ("degree", WitnessValue::Int(degree)),
            ("base_certificate", WitnessValue::Text(base.into())),
            ("fibre_certificate", WitnessValue::Text(fibre.into())),
            ("rational_total_space", WitnessValue::Flag(rational)),
        ],
        "deg = a*b",
    ))
}

/// Inputs of the combined certificate run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyInputs {
    pub n: Option<BigInt>,
    pub d: u32,
    pub r: u32,
    pub t: i64,
    /// Plane dimension for the plane-containment bounds; `k(d)` if absent.
    pub k: Option<u32>,
    pub mbar: u64,
    pub mu: u64,
    pub m: Option<u64>,
    /// Degrees of the unirational parametrizations of base and fibres.
    pub base_degree: BigInt,
    pub fibre_degree: BigInt,
}

/// Every bound for the given data, in a fixed order.
pub fn certify(inputs: &CertifyInputs) -> Result<Vec<BoundCertificate>> {
    let d = inputs.d;
    let n = inputs.n.as_ref();
    let k = match inputs.k {
        Some(k) => k,
        None => predonzan_k_small(d)?,
    };
    let kd = predonzan_k(d)?;
    let mut out = Vec::new();
    out.push(BoundCertificate::build(
        "predonzan_k",
        vec![("d", big(d))],
        BigRational::from_integer(kd.clone()),
        Rounding::AtLeast,
        None,
        vec![("k_d", WitnessValue::Int(kd))],
        "k(d) = C(k(d-1)+d-1, d-1), k(2) = 0",
    ));
    if k >= 1 {
        out.push(morin_certificate(d, k, MorinVariant::Verbatim, n)?);
        out.push(morin_certificate(d, k, MorinVariant::ExpectedDimension, n)?);
    }
    out.push(family_plane_certificate(d, inputs.r, k, n)?);
    out.push(predonzan_unirationality_certificate(d, inputs.t, n)?);
    out.push(family_unirationality_certificate(d, inputs.r, inputs.t, n)?);
    if let Some(n) = n {
        let n_small = n.to_u64().ok_or_else(|| Error::precondition("n too large for counting"))?;
        let lead = leading_coefficient_check(n_small, d, inputs.r, k, inputs.mbar)?;
        out.push(BoundCertificate::build(
            "leading_coefficient_check",
            vec![("d", big(d)), ("r", big(inputs.r)), ("k", big(k)), ("mbar", big(inputs.mbar))],
            BigRational::zero(),
            Rounding::Strict,
            None,
            vec![
                ("leading_value", WitnessValue::Int(lead.value.clone())),
                ("positive", WitnessValue::Flag(lead.positive)),
                ("top_coefficient_vanishes", WitnessValue::Flag(lead.top_vanishes)),
                ("next_coefficient_matches", WitnessValue::Flag(lead.next_matches)),
            ],
            "(k+1)(n-k) + 1 - C(d+k,k)*d^r > 0",
        ));
        if let Some(m) = inputs.m {
            let counts = section_lemma_counts(n_small, d, inputs.r, k, m, inputs.mbar, inputs.mu)?;
            out.push(BoundCertificate::build(
                "section_lemma_counts",
                vec![
                    ("d", big(d)),
                    ("r", big(inputs.r)),
                    ("k", big(k)),
                    ("m", big(m)),
                    ("mbar", big(inputs.mbar)),
                    ("mu", big(inputs.mu)),
                ],
                BigRational::from_integer(counts.equation_count.clone()),
                Rounding::Strict,
                None,
                vec![
                    ("M", WitnessValue::Int(counts.big_m.clone())),
                    ("lambda_count", WitnessValue::Int(counts.lambda_count.clone())),
                    ("alpha_count", WitnessValue::Int(counts.alpha_count.clone())),
                    ("equation_count", WitnessValue::Int(counts.equation_count.clone())),
                    ("underdetermined", WitnessValue::Flag(counts.underdetermined)),
                ],
                "lambda_count + alpha_count > equation_count",
            ));
        }
        let mm = minimal_m(n_small, d, inputs.r, k, inputs.mbar, inputs.mu, None)?;
        let mut witness =
            vec![("cap", WitnessValue::Int(big(mm.cap))), ("leading_value", WitnessValue::Int(mm.leading.clone()))];
        match mm.m {
            Some(m) => witness.push(("minimal_m", WitnessValue::Int(big(m)))),
            None => witness.push(("minimal_m", WitnessValue::Text("none".into()))),
        }
        out.push(BoundCertificate::build(
            "minimal_m",
            vec![
                ("d", big(d)),
                ("r", big(inputs.r)),
                ("k", big(k)),
                ("mbar", big(inputs.mbar)),
                ("mu", big(inputs.mu)),
            ],
            BigRational::from_integer(big(inputs.mbar)),
            Rounding::Strict,
            None,
            witness,
            "least m > mbar with lambda_count + alpha_count > equation_count",
        ));
    }
    let fibre = if out.iter().any(|c| c.name == "family_unirationality_bound" && c.satisfied == Some(true)) {
        "family_unirationality_bound (satisfied)"
    } else {
        "family_unirationality_bound"
    };
    out.push(roth_certificate(&inputs.base_degree, &inputs.fibre_degree, "base unirational of degree a", fibre)?);
    Ok(out)
}

#[cfg(test)]
mod tests;
