//! Dense exact matrices over a [`FieldSpec`].
//!
//! Determinants and ranks over `Q` run fraction-free: every row is first
//! cleared of denominators, then Bareiss elimination works on integers so the
//! only divisions performed are exact. Over `F_p` plain Gaussian elimination
//! is used. Pivots are always the first nonzero entry found scanning down the
//! current column.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::subsets;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix[{}]{{", self.field)?;
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "}}")
    }
}

impl ExactMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|e| e.spec() != field) {
            return Err(Error::FieldMismatch(format!("entry over {} in a matrix over {field}", bad.spec())));
        }
        Ok(ExactMatrix { field, rows, cols, data })
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dimension("ragged rows"));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        let c = rows.first().map_or(0, |r| r.len());
        Self::new(field, rows.len(), c, data).expect("rectangular integer rows")
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        assert_eq!(v.spec(), self.field, "field mismatch");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, rhs.field)));
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = self.field.zero();
                for l in 0..self.cols {
                    let a = self.get(i, l);
                    if !a.is_zero() {
                        acc += &(a * rhs.get(l, j));
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * c).collect(),
        }
    }

    /// Vertical concatenation.
    pub fn stack(&self, below: &ExactMatrix) -> Result<Self> {
        if self.cols != below.cols {
            return Err(Error::dimension(format!("stacking {} columns over {}", self.cols, below.cols)));
        }
        if self.field != below.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, below.field)));
        }
        let mut data = self.data.clone();
        data.extend(below.data.iter().cloned());
        Ok(ExactMatrix { field: self.field, rows: self.rows + below.rows, cols: self.cols, data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        ExactMatrix { field: self.field, rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend(self.row(r).iter().cloned());
        }
        ExactMatrix { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    pub fn apply(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(self.field.zero(), |acc, (a, b)| acc + a * b)).collect()
    }

    /// Rows scaled to integers by the lcm of their denominators (`Q` only).
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale_product = BigInt::one();
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row: Vec<&BigRational> = self.row(r).iter().map(|e| e.as_rational().expect("rational entry")).collect();
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale_product *= &lcm;
            out.push(row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect());
        }
        (out, scale_product)
    }

    pub fn det(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok(match self.field {
            FieldSpec::Rationals => {
                let (mut rows, scale) = self.integer_rows();
                let d = bareiss_det(&mut rows);
                FieldElement::Rational(BigRational::new(d, scale))
            }
            FieldSpec::Prime(_) => gauss_det(self),
        })
    }

    pub fn rank(&self) -> usize {
        match self.field {
            FieldSpec::Rationals => {
                let (mut rows, _) = self.integer_rows();
                bareiss_rank(&mut rows, self.cols)
            }
            FieldSpec::Prime(_) => self.rref().1.len(),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right null space, one vector per free column of the
    /// reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(i, free);
            }
            basis.push(v);
        }
        basis
    }

    /// All minors of order `rows`, columns taken in lexicographic order of
    /// increasing column subsets.
    pub fn maximal_minors(&self) -> Result<Vec<FieldElement>> {
        if self.rows > self.cols {
            return Err(Error::dimension(format!("maximal minors need rows <= cols, got {}x{}", self.rows, self.cols)));
        }
        subsets(self.cols, self.rows).iter().map(|cols| self.select_columns(cols).det()).collect()
    }
}

fn bareiss_det(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = (&m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

fn gauss_det(m: &ExactMatrix) -> FieldElement {
    let mut a = m.clone();
    let n = a.rows;
    let mut det = m.field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
            return m.field.zero();
        };
        if p != col {
            a.swap_rows(p, col);
            det = -det;
        }
        let pivot = a.get(col, col).clone();
        det *= &pivot;
        let inv = pivot.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col) * &inv;
            for c in col..n {
                let v = a.get(r, c) - &(&factor * a.get(col, c));
                a.set(r, c, v);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn det_examples() {
        assert_eq!(ExactMatrix::identity(Q, 2).det().unwrap(), Q.one());
        let m = ExactMatrix::from_i64_rows(Q, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.det().unwrap(), Q.from_i64(-2));
        let f5 = FieldSpec::Prime(5);
        let m5 = ExactMatrix::from_i64_rows(f5, &[&[1, 2], &[3, 4]]);
        assert_eq!(m5.det().unwrap(), f5.from_u64(3));
        assert!(ExactMatrix::zeros(Q, 2, 3).det().is_err());
    }

    #[test]
    fn det_with_fractions_and_swaps() {
        let h = |s: &str| Q.parse_element(s).unwrap();
        let m = ExactMatrix::from_rows(
            Q,
            vec![vec![h("0"), h("1/2"), h("1")], vec![h("2/3"), h("0"), h("1")], vec![h("1"), h("1"), h("0")]],
        )
        .unwrap();
        // cofactor expansion: 0 - 1/2*(0 - 1) + 1*(2/3 - 0) = 1/2 + 2/3
        assert_eq!(m.det().unwrap(), h("7/6"));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::zeros(Q, 3, 4).rank(), 0);
        let m = ExactMatrix::from_i64_rows(Q, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(m.rank(), 2);
        let outer = ExactMatrix::from_i64_rows(Q, &[&[2, 4, 6], &[-1, -2, -3], &[3, 6, 9]]);
        assert_eq!(outer.rank(), 1);
        assert_eq!(outer.transpose().rank(), 1);
    }

    #[test]
    fn maximal_minor_examples() {
        let m = ExactMatrix::from_i64_rows(Q, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let z: Vec<_> = [1, 0, 0, 0, 0, 0].iter().map(|&v| Q.from_i64(v)).collect();
        assert_eq!(m.maximal_minors().unwrap(), z);
        let m = ExactMatrix::from_i64_rows(Q, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let z: Vec<_> = [1, 0, 1, -1, 0, 1].iter().map(|&v| Q.from_i64(v)).collect();
        assert_eq!(m.maximal_minors().unwrap(), z);
        let row = ExactMatrix::from_i64_rows(Q, &[&[3, -1, 4]]);
        assert_eq!(row.maximal_minors().unwrap(), row.row(0).to_vec());
        assert!(m.transpose().maximal_minors().is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(ExactMatrix::identity(Q, 3).kernel_basis().is_empty());
        assert_eq!(ExactMatrix::zeros(Q, 2, 3).kernel_basis().len(), 3);
        let m = ExactMatrix::from_i64_rows(Q, &[&[1, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(|e| e.is_zero()));
        }
        let km = ExactMatrix::from_rows(Q, k).unwrap();
        assert_eq!(km.rank(), 2);
    }
}
