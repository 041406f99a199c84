//! Plücker coordinates of k-planes and the coordinate charts of the
//! Grassmannian `G(k, n)`.
//!
//! Column indices of `P^n` run over `1..=n+1` throughout this module, so a
//! [`MultiIndex`] names Plücker coordinates exactly as they are written by
//! hand. Plücker vectors are stored in lexicographic order of multi-indices.

mod curves;
mod osculating;
mod semple;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::combinatorics::{binomial, permutation_sign, subset_rank, subsets};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;

pub use curves::{rnc_general_model, rnc_standard_model, rnc_through, segre_bridge, RationalCurve, SegreBridge};
pub use osculating::{
    choose_avoiding_centre, osculating_dimension, osculating_hyperplane, osculating_rank_empirical, DualHyperplane,
};
pub use semple::{
    basis_d_kn, inverse_projection, projection_sign, secant_stratum, semple_forms, semple_map, semple_ring,
    vanishing_order_at, SempleChartPoint, VanishingOrder,
};

/// Strictly increasing column indices in `1..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    indices: Vec<usize>,
    n: usize,
}

impl MultiIndex {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::precondition(format!("multi-index {indices:?} is not strictly increasing")));
        }
        if indices.iter().any(|&i| i == 0 || i > n + 1) {
            return Err(Error::precondition(format!("multi-index {indices:?} out of range 1..={}", n + 1)));
        }
        Ok(MultiIndex { indices, n })
    }

    /// `(1, 2, ..., size)`.
    pub fn initial(size: usize, n: usize) -> Self {
        MultiIndex { indices: (1..=size).collect(), n }
    }

    /// All multi-indices of the given size, lexicographically.
    pub fn all(size: usize, n: usize) -> Vec<MultiIndex> {
        subsets(n + 1, size)
            .into_iter()
            .map(|s| MultiIndex { indices: s.into_iter().map(|i| i + 1).collect(), n })
            .collect()
    }

    /// Parses `"1,3"` (whitespace tolerated).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let indices = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse { position: 0, message: format!("invalid multi-index `{text}`") })
            })
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(indices, n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i - 1).collect()
    }

    pub fn complement(&self) -> MultiIndex {
        MultiIndex { indices: (1..=self.n + 1).filter(|i| !self.indices.contains(i)).collect(), n: self.n }
    }

    /// Position in the lexicographic list [`MultiIndex::all`].
    pub fn rank(&self) -> usize {
        subset_rank(self.n + 1, &self.zero_based())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| format!("{i}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A full-rank matrix whose rows span a linear subspace of `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneFrame {
    matrix: ExactMatrix,
}

impl PlaneFrame {
    pub fn new(matrix: ExactMatrix) -> Result<Self> {
        let rank = matrix.rank();
        if rank < matrix.rows() || matrix.rows() == 0 {
            return Err(Error::DegenerateFrame { rank, expected: matrix.rows() });
        }
        Ok(PlaneFrame { matrix })
    }

    /// The frame with the identity in columns `chart` and `block` in the
    /// complementary columns (both in increasing order).
    pub fn from_chart(chart: &MultiIndex, block: &ExactMatrix) -> Result<Self> {
        let field = block.field();
        let comp = chart.complement();
        if block.rows() != chart.len() || block.cols() != comp.len() {
            return Err(Error::dimension(format!(
                "chart block must be {}x{}, got {}x{}",
                chart.len(),
                comp.len(),
                block.rows(),
                block.cols()
            )));
        }
        let mut m = ExactMatrix::zeros(field, chart.len(), chart.ambient() + 1);
        for (i, &c) in chart.indices().iter().enumerate() {
            m.set(i, c - 1, field.one());
            for (j, &cc) in comp.indices().iter().enumerate() {
                m.set(i, cc - 1, block.get(i, j).clone());
            }
        }
        Ok(PlaneFrame { matrix: m })
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    /// Projective dimension of the spanned plane.
    pub fn dim(&self) -> usize {
        self.matrix.rows() - 1
    }

    /// `n` of the ambient `P^n`.
    pub fn ambient(&self) -> usize {
        self.matrix.cols() - 1
    }
}

/// Normalized Plücker vector of a k-plane in `P^n`: the first nonzero
/// coordinate (lexicographic order) equals 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerPoint {
    k: usize,
    n: usize,
    coords: Vec<FieldElement>,
}

impl PluckerPoint {
    pub(crate) fn from_minors(k: usize, n: usize, minors: Vec<FieldElement>) -> Result<Self> {
        let Some(lead) = minors.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::Indeterminacy("all maximal minors vanish".into()));
        };
        let inv = lead.inv().expect("nonzero");
        Ok(PluckerPoint { k, n, coords: minors.iter().map(|c| c * &inv).collect() })
    }

    /// Validates a coordinate vector: right length, nonzero, and actually a
    /// point of `G(k, n)` (the frame rebuilt from its leading chart has the
    /// same Plücker vector).
    pub fn from_coords(k: usize, n: usize, coords: Vec<FieldElement>) -> Result<Self> {
        let expected = binomial(n as u64 + 1, k as u64 + 1) as usize;
        if k > n || coords.len() != expected {
            return Err(Error::dimension(format!(
                "G({k},{n}) has {expected} Plücker coordinates, got {}",
                coords.len()
            )));
        }
        let candidate = PluckerPoint::from_minors(k, n, coords)?;
        let chart = candidate.leading_index();
        let block = chart_normalize(&candidate, &chart)?;
        let rebuilt = plucker_from_matrix(&PlaneFrame::from_chart(&chart, &block)?)?;
        if rebuilt != candidate {
            return Err(Error::precondition("coordinates violate the Plücker relations"));
        }
        Ok(candidate)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0].spec()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn coord(&self, index: &MultiIndex) -> &FieldElement {
        &self.coords[index.rank()]
    }

    /// Lexicographically least index with a nonzero coordinate; it names the
    /// Schubert cell containing the point.
    pub fn leading_index(&self) -> MultiIndex {
        let pos = self.coords.iter().position(|c| !c.is_zero()).expect("nonzero vector");
        MultiIndex::all(self.k + 1, self.n).swap_remove(pos)
    }

    /// A frame spanning the plane, taken from the leading chart.
    pub fn frame(&self) -> PlaneFrame {
        let chart = self.leading_index();
        let block = chart_normalize(self, &chart).expect("leading coordinate is nonzero");
        PlaneFrame::from_chart(&chart, &block).expect("chart block has the right shape")
    }
}

pub fn plucker_from_matrix(frame: &PlaneFrame) -> Result<PluckerPoint> {
    let m = frame.matrix();
    PluckerPoint::from_minors(m.rows() - 1, m.cols() - 1, m.maximal_minors()?)
}

/// The unique block `A` such that `[I | A]` (identity in the columns of
/// `chart`) spans the plane. Entries come from Cramer's rule on the Plücker
/// vector.
pub fn chart_normalize(p: &PluckerPoint, chart: &MultiIndex) -> Result<ExactMatrix> {
    if chart.len() != p.k + 1 || chart.ambient() != p.n {
        return Err(Error::dimension(format!("chart {chart} does not index G({},{})", p.k, p.n)));
    }
    let z_i = p.coord(chart);
    if z_i.is_zero() {
        return Err(Error::OutsideChart { index: format!("({chart})") });
    }
    let inv = z_i.inv().expect("nonzero");
    let comp = chart.complement();
    let field = p.field();
    let mut block = ExactMatrix::zeros(field, chart.len(), comp.len());
    for row in 0..chart.len() {
        for (col, &j) in comp.indices().iter().enumerate() {
            let mut replaced = chart.indices().to_vec();
            replaced[row] = j;
            let sign = permutation_sign(&replaced);
            replaced.sort_unstable();
            let z = p.coord(&MultiIndex { indices: replaced, n: p.n });
            let v = if sign < 0 { -(z * &inv) } else { z * &inv };
            block.set(row, col, v);
        }
    }
    Ok(block)
}

/// Projective dimension of the intersection of two spans; `-1` when empty.
pub fn intersection_dim(a: &PlaneFrame, b: &PlaneFrame) -> Result<i64> {
    if a.ambient() != b.ambient() {
        return Err(Error::dimension(format!("planes in P^{} and P^{}", a.ambient(), b.ambient())));
    }
    let stacked = a.matrix().stack(b.matrix())?;
    Ok((a.matrix().rows() + b.matrix().rows()) as i64 - stacked.rank() as i64 - 1)
}
