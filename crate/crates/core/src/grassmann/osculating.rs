//! Osculating spaces of `G(k, n)` at the base point and the hyperplanes that
//! osculate it to order `k`.

use alloc::format;
use alloc::vec::Vec;

use rand_core::RngCore;

use super::semple::semple_forms;
use super::{MultiIndex, PlaneFrame, PluckerPoint};
use crate::combinatorics::{binomial, exponent_vectors, permutation_sign};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;

fn check_order(k: usize, n: usize, r: usize) -> Result<()> {
    if 2 * k >= n {
        return Err(Error::precondition(format!("need 2k < n, got k={k}, n={n}")));
    }
    if r == 0 || r > k {
        return Err(Error::precondition(format!("osculation order must lie in 1..={k}, got {r}")));
    }
    Ok(())
}

/// `Σ_{i=1}^r C(k+1, i)·C(n−k, i)`.
pub fn osculating_dimension(k: usize, n: usize, r: usize) -> Result<u64> {
    check_order(k, n, r)?;
    Ok((1..=r as u64).map(|i| binomial(k as u64 + 1, i) * binomial((n - k) as u64, i)).sum())
}

/// Projective dimension of the span of all partial derivatives of order
/// `<= r` of the Plücker coordinate functions at `y = 1, x = 0`.
pub fn osculating_rank_empirical(k: usize, n: usize, r: usize) -> Result<u64> {
    check_order(k, n, r)?;
    let field = FieldSpec::Rationals;
    let forms = semple_forms(k, n, field)?;
    let nx = (k + 1) * (n - k);
    let mut origin = alloc::vec![field.zero(); nx + 1];
    origin[0] = field.one();
    let mut jets = Vec::new();
    for order in 0..=r as u32 {
        for alpha in exponent_vectors(nx, order) {
            let mut orders = Vec::with_capacity(nx + 1);
            orders.push(0);
            orders.extend(alpha);
            jets.push(forms.iter().map(|f| f.derivative(&orders).evaluate(&origin)).collect::<Vec<_>>());
        }
    }
    let m = ExactMatrix::from_rows(field, jets)?;
    Ok(m.rank() as u64 - 1)
}

/// A hyperplane of the Plücker space, with one coefficient per
/// `(k+1)`-multi-index in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualHyperplane {
    k: usize,
    n: usize,
    coeffs: Vec<FieldElement>,
}

impl DualHyperplane {
    pub fn new(k: usize, n: usize, coeffs: Vec<FieldElement>) -> Result<Self> {
        let expected = binomial(n as u64 + 1, k as u64 + 1) as usize;
        if coeffs.len() != expected {
            return Err(Error::dimension(format!("expected {expected} coefficients, got {}", coeffs.len())));
        }
        if coeffs.iter().all(FieldElement::is_zero) {
            return Err(Error::precondition("hyperplane coefficients are all zero"));
        }
        Ok(DualHyperplane { k, n, coeffs })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, index: &MultiIndex) -> &FieldElement {
        &self.coeffs[index.rank()]
    }

    pub fn pairing_coords(&self, z: &[FieldElement]) -> FieldElement {
        assert_eq!(z.len(), self.coeffs.len());
        let mut acc = self.coeffs[0].spec().zero();
        for (a, b) in self.coeffs.iter().zip(z) {
            acc += &(a * b);
        }
        acc
    }

    pub fn pairing(&self, p: &PluckerPoint) -> Result<FieldElement> {
        if p.k() != self.k || p.n() != self.n {
            return Err(Error::dimension(format!(
                "point of G({},{}) paired with hyperplane of G({},{})",
                p.k(),
                p.n(),
                self.k,
                self.n
            )));
        }
        Ok(self.pairing_coords(p.coords()))
    }

    /// Scaled so the first nonzero coefficient is 1.
    pub fn normalized(&self) -> DualHyperplane {
        let lead = self.coeffs.iter().find(|c| !c.is_zero()).expect("nonzero");
        let inv = lead.inv().expect("nonzero");
        DualHyperplane { k: self.k, n: self.n, coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
    }
}

/// The hyperplane of k-planes meeting the `(n−k−1)`-plane spanned by `pi`.
/// Coefficients are signed raw minors of `pi`, so the pairing with the raw
/// minors of a frame `f` is `det([pi; f])`.
pub fn osculating_hyperplane(pi: &PlaneFrame) -> Result<DualHyperplane> {
    let m = pi.matrix();
    let n = pi.ambient();
    let rows = m.rows();
    if rows > n {
        return Err(Error::dimension(format!("a centre in P^{n} needs at most {n} rows, got {rows}")));
    }
    let k = n - rows;
    let minors = m.maximal_minors()?;
    let field = pi.field();
    let mut coeffs = alloc::vec![field.zero(); binomial(n as u64 + 1, k as u64 + 1) as usize];
    for (j, minor) in MultiIndex::all(rows, n).into_iter().zip(minors) {
        let comp = j.complement();
        let mut seq = j.indices().to_vec();
        seq.extend_from_slice(comp.indices());
        coeffs[comp.rank()] = if permutation_sign(&seq) < 0 { -minor } else { minor };
    }
    DualHyperplane::new(k, n, coeffs)
}

/// Draws random `(n−k−1)`-planes until one has full rank and its osculating
/// hyperplane misses every point of `avoid`.
pub fn choose_avoiding_centre<R: RngCore + ?Sized>(
    k: usize,
    n: usize,
    field: FieldSpec,
    avoid: &[PluckerPoint],
    rng: &mut R,
    attempts: usize,
) -> Result<(PlaneFrame, DualHyperplane)> {
    if k >= n {
        return Err(Error::precondition(format!("need k < n, got k={k}, n={n}")));
    }
    for _ in 0..attempts {
        let data = (0..(n - k) * (n + 1)).map(|_| field.random_element(rng, 20)).collect();
        let Ok(frame) = PlaneFrame::new(ExactMatrix::new(field, n - k, n + 1, data)?) else {
            continue;
        };
        let h = osculating_hyperplane(&frame)?;
        let mut clear = true;
        for p in avoid {
            if h.pairing(p)?.is_zero() {
                clear = false;
                break;
            }
        }
        if clear {
            return Ok((frame, h));
        }
    }
    Err(Error::precondition(format!("no centre avoiding the given planes in {attempts} attempts")))
}
