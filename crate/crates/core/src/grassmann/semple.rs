//! The rational map `P^{M(k,n)} --> G(k,n)` given by the maximal minors of
//! `[y·I | x]`, its inverse projection, and the base-locus strata of the
//! linear system it defines.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{MultiIndex, PluckerPoint};
use crate::combinatorics::subsets;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;
use crate::poly::{poly_det, Poly, Ring};

/// A point `(y, x)` of `P^{M(k,n)}`, with `x` of shape `(k+1) × (n−k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SempleChartPoint {
    y: FieldElement,
    x: ExactMatrix,
}

impl SempleChartPoint {
    pub fn new(y: FieldElement, x: ExactMatrix) -> Result<Self> {
        if y.spec() != x.field() {
            return Err(Error::FieldMismatch(format!("{} vs {}", y.spec(), x.field())));
        }
        if x.rows() == 0 || x.cols() == 0 {
            return Err(Error::dimension("x block must be nonempty"));
        }
        if y.is_zero() && x.is_zero() {
            return Err(Error::precondition("(y, x) is the zero vector"));
        }
        Ok(SempleChartPoint { y, x })
    }

    pub fn y(&self) -> &FieldElement {
        &self.y
    }

    pub fn x(&self) -> &ExactMatrix {
        &self.x
    }

    pub fn k(&self) -> usize {
        self.x.rows() - 1
    }

    pub fn n(&self) -> usize {
        self.x.cols() + self.x.rows() - 1
    }

    pub fn field(&self) -> FieldSpec {
        self.x.field()
    }

    /// `[y, x_{1,k+2}, x_{1,k+3}, ...]`, matching the variables of [`semple_ring`].
    pub fn coordinates(&self) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(1 + self.x.rows() * self.x.cols());
        out.push(self.y.clone());
        for r in 0..self.x.rows() {
            out.extend(self.x.row(r).iter().cloned());
        }
        out
    }

    /// Scales so that the first nonzero coordinate is 1.
    pub fn normalized(&self) -> SempleChartPoint {
        let coords = self.coordinates();
        let lead = coords.iter().find(|c| !c.is_zero()).expect("nonzero point");
        let inv = lead.inv().expect("nonzero");
        SempleChartPoint { y: &self.y * &inv, x: self.x.scale(&inv) }
    }

    pub fn projectively_equal(&self, other: &SempleChartPoint) -> bool {
        self.normalized() == other.normalized()
    }

    /// The `(k+1) × (n+1)` matrix `[y·I | x]`.
    pub fn matrix(&self) -> ExactMatrix {
        let rows = self.x.rows();
        let mut m = ExactMatrix::zeros(self.field(), rows, self.n() + 1);
        for i in 0..rows {
            m.set(i, i, self.y.clone());
            for j in 0..self.x.cols() {
                m.set(i, rows + j, self.x.get(i, j).clone());
            }
        }
        m
    }
}

fn check_standing(k: usize, n: usize) -> Result<()> {
    if 2 * k >= n {
        return Err(Error::precondition(format!("need 2k < n, got k={k}, n={n}")));
    }
    Ok(())
}

/// Variables `y, x_1_{k+2}, ..., x_{k+1}_{n+1}` (row-major).
pub fn semple_ring(k: usize, n: usize, field: FieldSpec) -> Arc<Ring> {
    let mut vars = Vec::with_capacity(1 + (k + 1) * (n - k));
    vars.push("y".into());
    for i in 1..=k + 1 {
        for j in k + 2..=n + 1 {
            vars.push(format!("x_{i}_{j}"));
        }
    }
    Ring::new(vars, field).expect("generated names are valid")
}

fn symbolic_matrix(ring: &Arc<Ring>, k: usize, n: usize) -> Vec<Vec<Poly>> {
    let width = n - k;
    (0..=k)
        .map(|i| {
            (0..=n)
                .map(|c| {
                    if c <= k {
                        if c == i {
                            Poly::var(ring, 0)
                        } else {
                            Poly::zero(ring)
                        }
                    } else {
                        Poly::var(ring, 1 + i * width + (c - k - 1))
                    }
                })
                .collect()
        })
        .collect()
}

/// The Plücker coordinate functions of the map, one per multi-index in
/// lexicographic order.
pub fn semple_forms(k: usize, n: usize, field: FieldSpec) -> Result<Vec<Poly>> {
    check_standing(k, n)?;
    let ring = semple_ring(k, n, field);
    let m = symbolic_matrix(&ring, k, n);
    Ok(subsets(n + 1, k + 1)
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<Poly>> = m.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
            poly_det(&ring, &sub)
        })
        .collect())
}

pub fn semple_map(c: &SempleChartPoint) -> Result<PluckerPoint> {
    let (k, n) = (c.k(), c.n());
    check_standing(k, n)?;
    let minors = c.matrix().maximal_minors()?;
    PluckerPoint::from_minors(k, n, minors).map_err(|_| {
        Error::Indeterminacy(format!("[y*I | x] has rank < {}: the point lies in the base scheme B_1", k + 1))
    })
}

/// `ε(i, j)` for a 1-based row `i` of the x-block: moving the replacing
/// column from position `i` to the end takes `k+1−i` transpositions.
pub fn projection_sign(k: usize, row: usize) -> i8 {
    if (k + 1 - row).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Projection from the span of the coordinates not of the form `z_{I0}` or
/// `z_{I0(i→j)}`, with `I0 = (1, ..., k+1)`.
pub fn inverse_projection(p: &PluckerPoint) -> Result<SempleChartPoint> {
    let (k, n) = (p.k(), p.n());
    check_standing(k, n)?;
    let field = p.field();
    let base = MultiIndex::initial(k + 1, n);
    let y = p.coord(&base).clone();
    let mut x = ExactMatrix::zeros(field, k + 1, n - k);
    for i in 1..=k + 1 {
        for j in k + 2..=n + 1 {
            let mut idx: Vec<usize> = (1..=k + 1).filter(|&t| t != i).collect();
            idx.push(j);
            let z = p.coord(&MultiIndex::new(idx, n)?).clone();
            x.set(i - 1, j - k - 2, if projection_sign(k, i) < 0 { -z } else { z });
        }
    }
    if y.is_zero() && x.is_zero() {
        return Err(Error::ProjectionCentre("all retained Plücker coordinates vanish".into()));
    }
    SempleChartPoint::new(y, x)
}

/// Basis of the linear system: `y^{k+1}` followed by `y^{k+1−r}·D` for every
/// `r × r` minor `D` of the x-block, grouped by `r`, rows then columns lexicographic.
pub fn basis_d_kn(k: usize, n: usize, field: FieldSpec) -> Result<Vec<Poly>> {
    check_standing(k, n)?;
    let ring = semple_ring(k, n, field);
    let width = n - k;
    let xs: Vec<Vec<Poly>> =
        (0..=k).map(|i| (0..width).map(|j| Poly::var(&ring, 1 + i * width + j)).collect()).collect();
    let y = Poly::var(&ring, 0);
    let mut out = Vec::new();
    out.push(y.pow(k as u32 + 1));
    for r in 1..=k + 1 {
        let ypow = y.pow((k + 1 - r) as u32);
        for rows in subsets(k + 1, r) {
            for cols in subsets(width, r) {
                let sub: Vec<Vec<Poly>> =
                    rows.iter().map(|&i| cols.iter().map(|&j| xs[i][j].clone()).collect()).collect();
                out.push(&ypow * &poly_det(&ring, &sub));
            }
        }
    }
    Ok(out)
}

/// `k + 1 − rank(x)`: 0 off the base locus, `k` on the Segre variety.
pub fn secant_stratum(x: &ExactMatrix) -> Result<usize> {
    if x.is_zero() {
        return Err(Error::precondition("the zero matrix is not a projective point"));
    }
    Ok(x.rows() - x.rank())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VanishingOrder {
    Finite(u32),
    Infinite,
}

/// Order of vanishing of a form on `P^{M(k,n)}` at a point with `y = 0` and
/// `rank(x) = 1`.
pub fn vanishing_order_at(form: &Poly, point: &SempleChartPoint) -> Result<VanishingOrder> {
    if !point.y().is_zero() || point.x().rank() != 1 {
        return Err(Error::precondition("point is not on the Segre variety (need y = 0, rank x = 1)"));
    }
    let coords = point.coordinates();
    if form.ring().nvars() != coords.len() {
        return Err(Error::dimension(format!(
            "form has {} variables, point has {} coordinates",
            form.ring().nvars(),
            coords.len()
        )));
    }
    if form.field() != point.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", form.field(), point.field())));
    }
    Ok(match form.multiplicity_at(&coords) {
        Some(m) => VanishingOrder::Finite(m),
        None => VanishingOrder::Infinite,
    })
}
