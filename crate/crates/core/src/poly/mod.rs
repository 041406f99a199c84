//! Sparse multivariate polynomials over an exact field.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! lexicographic with respect to the ring's declared variable order; iteration
//! for printing runs from the largest monomial down. Zero coefficients are never
//! stored.

mod parse;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

pub use parse::{parse_poly, scan_identifiers};

/// Variable names plus coefficient field. Shared between polynomials through
/// `Arc`; two rings are equal when names and field agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: FieldSpec,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, field: FieldSpec) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::precondition(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::precondition(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars, field }))
    }

    /// `prefix0 .. prefix{count-1}`.
    pub fn indexed(prefix: &str, count: usize, field: FieldSpec) -> Arc<Ring> {
        Ring::new((0..count).map(|i| format!("{prefix}{i}")), field).expect("generated names are valid")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial is homogeneous of every degree.
    AnyDegree,
    Degree(u32),
}

impl Homogeneity {
    pub fn accepts(&self, d: u32) -> bool {
        match self {
            Homogeneity::AnyDegree => true,
            Homogeneity::Degree(e) => *e == d,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, FieldElement>,
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Poly {
        Poly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Poly {
        Poly::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElement) -> Poly {
        assert_eq!(c.spec(), ring.field, "field mismatch");
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.nvars()), c);
        }
        p
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Poly {
        let mut e = vec![0; ring.nvars()];
        e[index] = 1;
        Poly::monomial(ring, e, ring.field.one())
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Poly> {
        Ok(Poly::var(ring, ring.var_index(name)?))
    }

    pub fn monomial(ring: &Arc<Ring>, exponents: Vec<u32>, c: FieldElement) -> Poly {
        assert_eq!(exponents.len(), ring.nvars());
        Poly::from_terms(ring, [(exponents, c)])
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>) -> Poly {
        let mut p = Poly::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.nvars(), "exponent length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> FieldElement {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    /// `Some(c)` when the polynomial is a constant (including zero).
    pub fn constant_value(&self) -> Option<FieldElement> {
        match self.terms.len() {
            0 => Some(self.ring.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Total degree counting only the given variables.
    pub fn degree_in_vars(&self, vars: &[usize]) -> u32 {
        self.terms.keys().map(|m| vars.iter().map(|&v| m.0[v]).sum()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> Option<Homogeneity> {
        self.is_homogeneous_in(&(0..self.ring.nvars()).collect::<Vec<_>>())
    }

    /// Homogeneity with respect to a subset of the variables, the others being
    /// treated as coefficients.
    pub fn is_homogeneous_in(&self, vars: &[usize]) -> Option<Homogeneity> {
        let mut degrees = self.terms.keys().map(|m| vars.iter().map(|&v| m.0[v]).sum::<u32>());
        let Some(first) = degrees.next() else {
            return Some(Homogeneity::AnyDegree);
        };
        degrees.all(|d| d == first).then_some(Homogeneity::Degree(first))
    }

    /// Variables with a nonzero exponent somewhere.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&v| self.terms.keys().any(|m| m.0[v] > 0)).collect()
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.ring.nvars(), "evaluation point length");
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Replaces every variable by the matching image. Images must cover all
    /// variables of this ring and share one target ring.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch(format!("{} images for {} variables", images.len(), self.ring.nvars())));
        }
        let Some(target) = images.first().map(|p| p.ring.clone()) else {
            // nullary ring: p is a constant
            return Err(Error::RingMismatch("substitution into a ring without variables".into()));
        };
        if images.iter().any(|p| !same_ring(&p.ring, &target)) {
            return Err(Error::RingMismatch("substitution images live in different rings".into()));
        }
        if target.field != self.ring.field {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring.field, target.field)));
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(&target), p.clone()]).collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = &powers[v][powers[v].len() - 1] * &images[v];
                    powers[v].push(next);
                }
                t = &t * &powers[v][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Substitutes only the listed variables, keeping the rest.
    pub fn substitute_some(&self, assignment: &[(usize, Poly)]) -> Result<Poly> {
        let mut images: Vec<Poly> = (0..self.ring.nvars()).map(|i| Poly::var(&self.ring, i)).collect();
        for (v, img) in assignment {
            if !same_ring(&img.ring, &self.ring) {
                return Err(Error::RingMismatch("partial substitution must stay in the ring".into()));
            }
            images[*v] = img.clone();
        }
        self.substitute(&images)
    }

    pub fn partial_derivative(&self, var: usize, order: u32) -> Result<Poly> {
        if order == 0 {
            return Err(Error::precondition("derivative order must be at least 1"));
        }
        if var >= self.ring.nvars() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        let mut e = vec![0; self.ring.nvars()];
        e[var] = order;
        Ok(self.derivative(&e))
    }

    pub fn partial_derivative_by_name(&self, var: &str, order: u32) -> Result<Poly> {
        self.partial_derivative(self.ring.var_index(var)?, order)
    }

    /// Mixed partial derivative `d^|e| / dx^e`, computed term by term with
    /// falling factorials.
    pub fn derivative(&self, orders: &[u32]) -> Poly {
        assert_eq!(orders.len(), self.ring.nvars());
        let field = self.ring.field;
        let mut out = Poly::zero(&self.ring);
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0.clone();
            for (v, &k) in orders.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if exps[v] < k {
                    continue 'terms;
                }
                for i in 0..k {
                    coeff *= &field.from_u64((exps[v] - i) as u64);
                }
                exps[v] -= k;
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Coefficient of `vars^exponents`, as a polynomial in the remaining
    /// variables (same ring, with the listed variables absent).
    pub fn coefficient_of(&self, vars: &[usize], exponents: &[u32]) -> Poly {
        assert_eq!(vars.len(), exponents.len());
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            if vars.iter().zip(exponents).all(|(&v, &e)| m.0[v] == e) {
                let mut rest = m.0.clone();
                for &v in vars {
                    rest[v] = 0;
                }
                out.add_term(Monomial(rest), c.clone());
            }
        }
        out
    }

    /// Groups terms by their exponents in `vars`.
    pub fn coefficients_in(&self, vars: &[usize]) -> BTreeMap<Vec<u32>, Poly> {
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| m.0[v]).collect();
            let mut rest = m.0.clone();
            for &v in vars {
                rest[v] = 0;
            }
            out.entry(key).or_insert_with(|| Poly::zero(&self.ring)).add_term(Monomial(rest), c.clone());
        }
        out
    }

    /// Moves the polynomial into another ring by matching variable names.
    /// Fails if a variable in the support is missing from the target.
    pub fn into_ring(&self, target: &Arc<Ring>) -> Result<Poly> {
        if target.field != self.ring.field {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring.field, target.field)));
        }
        let mut map = vec![None; self.ring.nvars()];
        for v in self.support() {
            map[v] = Some(target.var_index(&self.ring.vars[v])?);
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (v, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    e[map[v].expect("support mapped")] = k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Taylor shift: `p(x + point)`.
    pub fn translate(&self, point: &[FieldElement]) -> Poly {
        assert_eq!(point.len(), self.ring.nvars());
        let images: Vec<Poly> = point
            .iter()
            .enumerate()
            .map(|(i, c)| &Poly::var(&self.ring, i) + &Poly::constant(&self.ring, c.clone()))
            .collect();
        self.substitute(&images).expect("images share the ring")
    }

    /// Order of vanishing at an affine point: the lowest degree in the Taylor
    /// expansion there. `None` for the zero polynomial.
    pub fn multiplicity_at(&self, point: &[FieldElement]) -> Option<u32> {
        let shifted = self.translate(point);
        shifted.terms.keys().next().map(Monomial::degree)
    }

    /// Remainder of `self` modulo `phi`, viewing both as polynomials in `var`
    /// with coefficients in the other variables. The leading coefficient of
    /// `phi` in `var` must be a nonzero constant.
    pub fn reduce_mod_monic(&self, phi: &Poly, var: usize) -> Result<Poly> {
        if !same_ring(&self.ring, &phi.ring) {
            return Err(Error::RingMismatch("reduction modulus lives in another ring".into()));
        }
        if phi.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let top = phi.degree_in(var);
        let lead = phi.coefficient_of(&[var], &[top]);
        let Some(lc) = lead.constant_value().filter(|c| !c.is_zero()) else {
            return Err(Error::precondition(format!(
                "modulus is not monic in `{}`: leading coefficient {}",
                self.ring.vars[var], lead
            )));
        };
        let monic = phi.scale(&lc.inv().expect("nonzero"));
        let mut rem = self.clone();
        loop {
            let deg = rem.degree_in(var);
            if rem.is_zero() || deg < top {
                return Ok(rem);
            }
            let head = rem.coefficient_of(&[var], &[deg]);
            let mut shift = vec![0; self.ring.nvars()];
            shift[var] = deg - top;
            let q = &head * &Poly::monomial(&self.ring, shift, self.ring.field.one());
            rem = &rem - &(&q * &monic);
        }
    }
}

fn assert_same_ring(a: &Poly, b: &Poly) {
    assert!(same_ring(&a.ring, &b.ring), "ring mismatch: {:?} vs {:?}", a.ring.vars, b.ring.vars);
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        assert_same_ring(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        assert_same_ring(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        assert_same_ring(self, rhs);
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || m.degree() == 0 {
                factors.push(magnitude.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.ring.field, self)
    }
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// the first row.
pub fn poly_det(ring: &Arc<Ring>, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::one(ring),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly::zero(ring);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][c] * &poly_det(ring, &minor);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests;
