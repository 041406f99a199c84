//! Segre scrolls joining two incident k-planes and the rational curves in
//! `G(k, n)` they sweep out.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{plucker_from_matrix, PlaneFrame, PluckerPoint};
use crate::combinatorics::subsets;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;
use crate::poly::{poly_det, Poly, Ring};

/// Decomposition of two k-planes `L1, L2` meeting in a `(k−r)`-plane `M`:
/// a basis of `M` together with `r` vectors completing it to `L1` and `r`
/// completing it to `L2`. The scroll is `σ(t, q) = Σ q_i (t0·a_i + t1·b_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegreBridge {
    field: FieldSpec,
    n: usize,
    common: Vec<Vec<FieldElement>>,
    first: Vec<Vec<FieldElement>>,
    second: Vec<Vec<FieldElement>>,
}

fn extend_basis(base: &[Vec<FieldElement>], candidates: &ExactMatrix, field: FieldSpec) -> Vec<Vec<FieldElement>> {
    let mut current: Vec<Vec<FieldElement>> = base.to_vec();
    let mut picked = Vec::new();
    for row in candidates.to_rows() {
        let mut trial = current.clone();
        trial.push(row.clone());
        let rank = ExactMatrix::from_rows(field, trial.clone()).expect("rectangular").rank();
        if rank == trial.len() {
            current = trial;
            picked.push(row);
        }
    }
    picked
}

pub fn segre_bridge(f1: &PlaneFrame, f2: &PlaneFrame) -> Result<SegreBridge> {
    if f1.matrix().rows() != f2.matrix().rows() || f1.ambient() != f2.ambient() {
        return Err(Error::dimension(format!(
            "{}-plane in P^{} vs {}-plane in P^{}",
            f1.dim(),
            f1.ambient(),
            f2.dim(),
            f2.ambient()
        )));
    }
    if f1.field() != f2.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", f1.field(), f2.field())));
    }
    let field = f1.field();
    let rows = f1.matrix().rows();
    let stacked = f1.matrix().stack(f2.matrix())?;
    // relations c with c·[f1; f2] = 0 give the vectors c1·f1 spanning the intersection
    let relations = stacked.transpose().kernel_basis();
    let common_all: Vec<Vec<FieldElement>> = relations
        .iter()
        .map(|c| {
            let head = ExactMatrix::from_rows(field, alloc::vec![c[..rows].to_vec()]).expect("row vector");
            head.mul(f1.matrix()).expect("conformant").row(0).to_vec()
        })
        .collect();
    if common_all.len() == rows {
        return Err(Error::precondition("the two planes coincide"));
    }
    let common = if common_all.is_empty() {
        Vec::new()
    } else {
        extend_basis(&[], &ExactMatrix::from_rows(field, common_all)?, field)
    };
    let first = extend_basis(&common, f1.matrix(), field);
    let second = extend_basis(&common, f2.matrix(), field);
    debug_assert_eq!(first.len(), second.len());
    Ok(SegreBridge { field, n: f1.ambient(), common, first, second })
}

impl SegreBridge {
    /// `r = k − dim(L1 ∩ L2)`.
    pub fn r(&self) -> usize {
        self.first.len()
    }

    pub fn k(&self) -> usize {
        self.common.len() + self.first.len() - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn common(&self) -> &[Vec<FieldElement>] {
        &self.common
    }

    pub fn first(&self) -> &[Vec<FieldElement>] {
        &self.first
    }

    pub fn second(&self) -> &[Vec<FieldElement>] {
        &self.second
    }

    /// The rows `t0·a_i + t1·b_i`; they span the `(r−1)`-plane `σ(t, ·)`.
    pub fn ruling(&self, t0: &FieldElement, t1: &FieldElement) -> ExactMatrix {
        let rows = self
            .first
            .iter()
            .zip(&self.second)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| &(t0 * x) + &(t1 * y)).collect())
            .collect();
        ExactMatrix::from_rows(self.field, rows).expect("rectangular")
    }

    pub fn point(&self, t0: &FieldElement, t1: &FieldElement, q: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if q.len() != self.r() {
            return Err(Error::dimension(format!("expected {} fibre coordinates, got {}", self.r(), q.len())));
        }
        let ruling = self.ruling(t0, t1);
        let mut out = alloc::vec![self.field.zero(); self.n + 1];
        for (i, qi) in q.iter().enumerate() {
            for (o, v) in out.iter_mut().zip(ruling.row(i)) {
                *o += &(qi * v);
            }
        }
        Ok(out)
    }

    /// The bilinear coordinate forms of `σ` in the ring `t0, t1, q1, ..., qr`.
    pub fn point_forms(&self) -> Vec<Poly> {
        let mut vars: Vec<alloc::string::String> = alloc::vec!["t0".into(), "t1".into()];
        vars.extend((1..=self.r()).map(|i| format!("q{i}")));
        let ring = Ring::new(vars, self.field).expect("valid names");
        let (t0, t1) = (Poly::var(&ring, 0), Poly::var(&ring, 1));
        (0..=self.n)
            .map(|c| {
                let mut acc = Poly::zero(&ring);
                for i in 0..self.r() {
                    let lin = &t0.scale(&self.first[i][c]) + &t1.scale(&self.second[i][c]);
                    acc = &acc + &(&Poly::var(&ring, 2 + i) * &lin);
                }
                acc
            })
            .collect()
    }

    /// `⟨M, σ(t, ·)⟩`, a k-plane for every `t`.
    pub fn plane_at(&self, t0: &FieldElement, t1: &FieldElement) -> Result<PlaneFrame> {
        let mut rows = self.common.clone();
        rows.extend(self.ruling(t0, t1).to_rows());
        PlaneFrame::new(ExactMatrix::from_rows(self.field, rows)?)
    }
}

/// The curve `t ↦ ⟨M, σ(t, ·)⟩` in `G(k, n)` through `f0` at `t = [1:0]` and
/// `f1` at `t = [0:1]`; a rational normal curve of degree `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCurve {
    bridge: SegreBridge,
}

pub fn rnc_through(f0: &PlaneFrame, f1: &PlaneFrame) -> Result<RationalCurve> {
    Ok(RationalCurve { bridge: segre_bridge(f0, f1)? })
}

impl RationalCurve {
    pub fn bridge(&self) -> &SegreBridge {
        &self.bridge
    }

    pub fn degree(&self) -> usize {
        self.bridge.r()
    }

    pub fn k(&self) -> usize {
        self.bridge.k()
    }

    pub fn n(&self) -> usize {
        self.bridge.n()
    }

    pub fn plane_at(&self, t0: &FieldElement, t1: &FieldElement) -> Result<PlaneFrame> {
        self.bridge.plane_at(t0, t1)
    }

    pub fn point_at(&self, t0: &FieldElement, t1: &FieldElement) -> Result<PluckerPoint> {
        plucker_from_matrix(&self.plane_at(t0, t1)?)
    }

    /// Plücker coordinate functions as binary forms in `t0, t1`, one per
    /// multi-index in lexicographic order.
    pub fn coordinate_forms(&self) -> Vec<Poly> {
        let field = self.bridge.field;
        let ring: Arc<Ring> = Ring::new(["t0", "t1"], field).expect("valid names");
        let (t0, t1) = (Poly::var(&ring, 0), Poly::var(&ring, 1));
        let mut m: Vec<Vec<Poly>> = self
            .bridge
            .common
            .iter()
            .map(|row| row.iter().map(|c| Poly::constant(&ring, c.clone())).collect())
            .collect();
        for (a, b) in self.bridge.first.iter().zip(&self.bridge.second) {
            m.push(a.iter().zip(b).map(|(x, y)| &t0.scale(x) + &t1.scale(y)).collect());
        }
        subsets(self.n() + 1, self.k() + 1)
            .into_iter()
            .map(|cols| {
                let sub: Vec<Vec<Poly>> = m.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
                poly_det(&ring, &sub)
            })
            .collect()
    }

    /// Dimension of the space of binary forms spanned by the coordinate
    /// functions; equals `degree + 1` for a rational normal curve.
    pub fn span_rank(&self) -> usize {
        let forms = self.coordinate_forms();
        let d = self.degree() as u32;
        let field = self.bridge.field;
        let rows: Vec<Vec<FieldElement>> =
            forms.iter().map(|f| (0..=d).map(|i| f.coefficient(&[d - i, i])).collect()).collect();
        ExactMatrix::from_rows(field, rows).expect("rectangular").rank()
    }
}

/// The frames at `t = [1:0]` and `[0:1]` of the scroll `Seg(1, k)` in
/// `P^{2k+1}`: `[I | 0]` and `[0 | I]`.
pub fn rnc_standard_model(k: usize, field: FieldSpec) -> (PlaneFrame, PlaneFrame) {
    rnc_general_model(k, k, field).expect("r = k is allowed")
}

/// The two frames of the join of a fixed `(k−r−1)`-plane with the rulings of
/// `Seg(1, r)` in `P^{k+r+1}`, at `t = [1:0]` and `[0:1]`.
pub fn rnc_general_model(k: usize, r: usize, field: FieldSpec) -> Result<(PlaneFrame, PlaneFrame)> {
    if r > k {
        return Err(Error::precondition(format!("need r <= k, got r={r}, k={k}")));
    }
    let n = k + r + 1;
    let build = |shift: usize| {
        let mut m = ExactMatrix::zeros(field, k + 1, n + 1);
        for i in 0..=r {
            m.set(i, i + shift, field.one());
        }
        for i in 0..k - r {
            m.set(r + 1 + i, 2 * r + 2 + i, field.one());
        }
        PlaneFrame::new(m)
    };
    Ok((build(0)?, build(r + 1)?))
}
