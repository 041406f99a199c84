//! Arithmetic in `F_{p²}` for checking sections at points of the base that
//! are not rational over `F_p`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::poly::Poly;

/// `c0 + c1·t`.
pub(crate) type E = (u64, u64);

/// `F_p[t]/(t² − a·t − b)` with the quadratic irreducible.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Fp2 {
    p: u64,
    a: u64,
    b: u64,
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let p128 = p as u128;
    let mut acc = 1 % p128;
    let mut base = base as u128 % p128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p128;
        }
        base = base * base % p128;
        exp >>= 1;
    }
    acc as u64
}

impl Fp2 {
    pub(crate) fn new(p: u64) -> Self {
        if p == 2 {
            return Fp2 { p, a: 1, b: 1 };
        }
        let nonresidue = (2..p).find(|&c| mod_pow(c, (p - 1) / 2, p) != 1).expect("odd prime has a nonresidue");
        Fp2 { p, a: 0, b: nonresidue }
    }

    pub(crate) fn embed(&self, v: u64) -> E {
        (v % self.p, 0)
    }

    pub(crate) fn add(&self, x: E, y: E) -> E {
        ((x.0 + y.0) % self.p, (x.1 + y.1) % self.p)
    }

    pub(crate) fn sub(&self, x: E, y: E) -> E {
        ((x.0 + self.p - y.0) % self.p, (x.1 + self.p - y.1) % self.p)
    }

    pub(crate) fn mul(&self, x: E, y: E) -> E {
        let p = self.p as u128;
        let (x0, x1, y0, y1) = (x.0 as u128, x.1 as u128, y.0 as u128, y.1 as u128);
        let hi = x1 * y1 % p;
        let c0 = (x0 * y0 + hi * self.b as u128) % p;
        let c1 = ((x0 * y1 + x1 * y0) % p + hi * self.a as u128) % p;
        (c0 as u64, c1 as u64)
    }

    pub(crate) fn pow(&self, mut x: E, mut e: u64) -> E {
        let mut acc = (1 % self.p, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, x: E) -> Option<E> {
        if x == (0, 0) {
            return None;
        }
        Some(self.pow(x, (self.p as u128 * self.p as u128 - 2) as u64))
    }

    pub(crate) fn elements(&self) -> impl Iterator<Item = E> + '_ {
        (0..self.p).flat_map(move |c1| (0..self.p).map(move |c0| (c0, c1)))
    }

    /// Points of `P^dim(F_{p²})` with first nonzero coordinate 1.
    pub(crate) fn projective_points(&self, dim: usize) -> Vec<Vec<E>> {
        let all: Vec<E> = self.elements().collect();
        let mut out = Vec::new();
        for lead in 0..=dim {
            let tail = dim - lead;
            let mut digits = vec![0usize; tail];
            loop {
                let mut pt = vec![(0, 0); lead];
                pt.push((1, 0));
                pt.extend(digits.iter().map(|&d| all[d]));
                out.push(pt);
                let mut pos = tail;
                let mut done = true;
                while pos > 0 {
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < all.len() {
                        done = false;
                        break;
                    }
                    digits[pos] = 0;
                }
                if done {
                    break;
                }
            }
        }
        out
    }

    pub(crate) fn coeff(&self, c: &crate::field::FieldElement) -> E {
        self.embed(c.residue().expect("prime field coefficient"))
    }

    /// Value of an `F_p` polynomial at an `F_{p²}` point.
    pub(crate) fn eval(&self, poly: &Poly, point: &[E]) -> E {
        let mut acc = (0, 0);
        for (m, c) in poly.terms() {
            let mut t = self.coeff(c);
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = self.mul(t, self.pow(*x, e as u64));
                }
            }
            acc = self.add(acc, t);
        }
        acc
    }

    /// Whether `f(w, Σ s_i·row_i)` vanishes identically in the `s_i`, where
    /// the first variables of `f` are fixed to `prefix`.
    pub(crate) fn restriction_vanishes(&self, form: &Poly, prefix: &[E], rows: &[Vec<E>]) -> bool {
        type Sparse = BTreeMap<Vec<u32>, E>;
        let nvars = rows.len();
        let mul = |a: &Sparse, b: &Sparse| -> Sparse {
            let mut out = Sparse::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    let slot = out.entry(e).or_insert((0, 0));
                    *slot = self.add(*slot, self.mul(*ca, *cb));
                }
            }
            out.retain(|_, c| *c != (0, 0));
            out
        };
        let linear: Vec<Sparse> = (0..rows[0].len())
            .map(|j| {
                let mut l = Sparse::new();
                for (i, row) in rows.iter().enumerate() {
                    if row[j] != (0, 0) {
                        let mut e = vec![0; nvars];
                        e[i] = 1;
                        l.insert(e, row[j]);
                    }
                }
                l
            })
            .collect();
        let mut total = Sparse::new();
        for (m, c) in form.terms() {
            let mut head = self.coeff(c);
            for (w, &e) in prefix.iter().zip(m.exponents()) {
                head = self.mul(head, self.pow(*w, e as u64));
            }
            if head == (0, 0) {
                continue;
            }
            let mut t = Sparse::new();
            t.insert(vec![0; nvars], head);
            for (j, &e) in m.exponents()[prefix.len()..].iter().enumerate() {
                for _ in 0..e {
                    t = mul(&t, &linear[j]);
                }
            }
            for (e, v) in t {
                let slot = total.entry(e).or_insert((0, 0));
                *slot = self.add(*slot, v);
            }
        }
        total.values().all(|c| *c == (0, 0))
    }

    pub(crate) fn rank(&self, mut rows: Vec<Vec<E>>) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != (0, 0)) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv(rows[rank][col]).expect("nonzero pivot");
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != (0, 0) {
                    let f = self.mul(rows[r][col], inv);
                    let pivot_row = rows[rank].clone();
                    for (x, &y) in rows[r][col..ncols].iter_mut().zip(&pivot_row[col..ncols]) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Polynomials in `t` over `F_{p²}`, ascending.
pub(crate) type UP = Vec<E>;

impl Fp2 {
    fn up_trim(mut a: UP) -> UP {
        while a.last() == Some(&(0, 0)) {
            a.pop();
        }
        a
    }

    fn up_add(&self, a: &UP, b: &UP) -> UP {
        let mut out = vec![(0, 0); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] = self.add(out[i], *x);
        }
        for (i, x) in b.iter().enumerate() {
            out[i] = self.add(out[i], *x);
        }
        Self::up_trim(out)
    }

    fn up_neg(&self, a: &UP) -> UP {
        a.iter().map(|&x| self.sub((0, 0), x)).collect()
    }

    fn up_mul(&self, a: &UP, b: &UP) -> UP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![(0, 0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(*x, *y));
            }
        }
        Self::up_trim(out)
    }

    /// `f(w + t·v)` for an `F_p` polynomial `f`.
    pub(crate) fn eval_line(&self, poly: &Poly, w: &[E], v: &[E]) -> UP {
        let lines: Vec<UP> = w.iter().zip(v).map(|(&a, &b)| Self::up_trim(vec![a, b])).collect();
        let mut acc = Vec::new();
        for (m, c) in poly.terms() {
            let mut t: UP = Self::up_trim(vec![self.coeff(c)]);
            for (l, &e) in lines.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = self.up_mul(&t, l);
                }
            }
            acc = self.up_add(&acc, &t);
        }
        acc
    }

    /// Determinant by cofactor expansion along the first row.
    pub(crate) fn up_det(&self, m: &[Vec<UP>]) -> UP {
        match m.len() {
            0 => vec![(1, 0)],
            1 => m[0][0].clone(),
            size => {
                let mut acc = Vec::new();
                for j in 0..size {
                    if m[0][j].is_empty() {
                        continue;
                    }
                    let minor: Vec<Vec<UP>> = m[1..]
                        .iter()
                        .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                        .collect();
                    let term = self.up_mul(&m[0][j], &self.up_det(&minor));
                    acc = if j % 2 == 0 { self.up_add(&acc, &term) } else { self.up_add(&acc, &self.up_neg(&term)) };
                }
                acc
            }
        }
    }

    /// Rows of the plane whose Plücker coordinates (over the lex-ordered
    /// `(k+1)`-subsets of `{0, ..., n}`) are `coords`.
    pub(crate) fn frame_from_plucker(&self, coords: &[E], k: usize, n: usize) -> Vec<Vec<E>> {
        let subsets = crate::combinatorics::subsets(n + 1, k + 1);
        let (lead, chart) = subsets
            .iter()
            .enumerate()
            .find(|(i, _)| coords[*i] != (0, 0))
            .map(|(i, s)| (coords[i], s.clone()))
            .expect("nonzero Plücker vector");
        let inv = self.inv(lead).expect("nonzero");
        (0..=k)
            .map(|i| {
                (0..=n)
                    .map(|j| {
                        let mut seq = chart.clone();
                        seq[i] = j;
                        let mut sorted = seq.clone();
                        sorted.sort_unstable();
                        if sorted.windows(2).any(|w| w[0] == w[1]) {
                            return (0, 0);
                        }
                        let idx = subsets.iter().position(|s| *s == sorted).expect("subset");
                        let c = self.mul(coords[idx], inv);
                        if crate::combinatorics::permutation_sign(&seq) < 0 {
                            self.sub((0, 0), c)
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for p in [2u64, 3, 5, 7] {
            let f = Fp2::new(p);
            let all: Vec<E> = f.elements().collect();
            assert_eq!(all.len() as u64, p * p);
            for &x in &all {
                if x != (0, 0) {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), (1, 0));
                }
                // Frobenius fixes exactly the prime subfield
                assert_eq!(f.pow(x, p) == x, x.1 == 0);
            }
            // no zero divisors
            for &x in &all {
                for &y in &all {
                    if x != (0, 0) && y != (0, 0) {
                        assert_ne!(f.mul(x, y), (0, 0));
                    }
                }
            }
        }
    }

    #[test]
    fn frame_from_plucker_spans_the_same_plane() {
        let f = Fp2::new(5);
        let rows: Vec<Vec<E>> = vec![vec![(0, 0), (2, 1), (1, 0), (0, 3)], vec![(0, 0), (1, 1), (4, 2), (1, 0)]];
        let entries: Vec<Vec<UP>> = rows.iter().map(|r| r.iter().map(|&x| Fp2::up_trim(vec![x])).collect()).collect();
        let coords: Vec<E> = crate::combinatorics::subsets(4, 2)
            .iter()
            .map(|c| {
                let sub: Vec<Vec<UP>> = entries.iter().map(|r| c.iter().map(|&j| r[j].clone()).collect()).collect();
                f.up_det(&sub).first().copied().unwrap_or((0, 0))
            })
            .collect();
        let frame = f.frame_from_plucker(&coords, 1, 3);
        assert_eq!(f.rank(frame.clone()), 2);
        let mut both = rows.clone();
        both.extend(frame);
        assert_eq!(f.rank(both), 2);
    }

    #[test]
    fn projective_point_count() {
        let f = Fp2::new(3);
        assert_eq!(f.projective_points(2).len(), 81 + 9 + 1);
    }
}
