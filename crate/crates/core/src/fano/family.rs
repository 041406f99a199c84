use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::grassmann::MultiIndex;
use crate::poly::{Homogeneity, Poly, Ring};

use super::{plane_restriction_coefficients, FanoSystem, Hypersurface};

/// `W = {φ = 0} ⊂ P^{r+1}`, with `φ` of degree `m̄` in `u_0, ..., u_{r+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseVariety {
    phi: Poly,
    r: usize,
    mbar: u32,
}

impl BaseVariety {
    pub fn new(phi: Poly) -> Result<Self> {
        let nvars = phi.ring().nvars();
        if nvars < 2 {
            return Err(Error::precondition("the base needs at least two coordinates"));
        }
        match phi.is_homogeneous() {
            Some(Homogeneity::Degree(m)) if m >= 1 => Ok(BaseVariety { phi, r: nvars - 2, mbar: m }),
            Some(_) => Err(Error::precondition("the base equation must be a nonzero form of positive degree")),
            None => Err(Error::precondition("the base equation is not homogeneous")),
        }
    }

    pub fn phi(&self) -> &Poly {
        &self.phi
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn mbar(&self) -> u32 {
        self.mbar
    }

    pub fn field(&self) -> FieldSpec {
        self.phi.field()
    }

    pub fn contains(&self, w: &[FieldElement]) -> bool {
        self.phi.evaluate(w).is_zero()
    }
}

/// `Σ_I a_I(u)·x^I`, one coefficient form of degree `μ` in the base
/// coordinates per degree-`d` multiset `I` of `{0, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceFamily {
    base: BaseVariety,
    n: usize,
    d: u32,
    mu: u32,
    coeffs: BTreeMap<Vec<usize>, Poly>,
}

impl HypersurfaceFamily {
    /// Keys are sorted multisets of `{0, ..., n}` of size `d`; absent keys are
    /// zero. Coefficients are moved into the ring of `φ`.
    pub fn new(base: BaseVariety, n: usize, d: u32, mu: u32, coeffs: BTreeMap<Vec<usize>, Poly>) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::precondition("need n >= 1 and d >= 1"));
        }
        let ring = base.phi.ring().clone();
        let mut moved = BTreeMap::new();
        for (key, c) in coeffs {
            if key.len() != d as usize || key.windows(2).any(|w| w[0] > w[1]) || key.iter().any(|&i| i > n) {
                return Err(Error::precondition(format!("bad monomial key {key:?} for degree {d} in P^{n}")));
            }
            if c.field() != base.field() {
                return Err(Error::FieldMismatch(format!("{} vs {}", c.field(), base.field())));
            }
            let c = c.into_ring(&ring)?;
            if !c.is_homogeneous().is_some_and(|h| h.accepts(mu)) {
                return Err(Error::precondition(format!("coefficient {c} of {key:?} is not a form of degree {mu}")));
            }
            if !c.is_zero() {
                moved.insert(key, c);
            }
        }
        if moved.is_empty() {
            return Err(Error::precondition("all coefficients vanish"));
        }
        let fam = HypersurfaceFamily { base, n, d, mu, coeffs: moved };
        if let Some(c) = monic_change(fam.base.phi()) {
            let t = fam.changed(&c)?;
            let var = t.base.r + 1;
            let all_divisible = t
                .coeffs
                .values()
                .map(|a| a.reduce_mod_monic(t.base.phi(), var).map(|q| q.is_zero()))
                .collect::<Result<Vec<bool>>>()?;
            if all_divisible.into_iter().all(|b| b) {
                return Err(Error::precondition("every coefficient vanishes on the base"));
            }
        }
        Ok(fam)
    }

    pub fn base(&self) -> &BaseVariety {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<usize>, Poly> {
        &self.coeffs
    }

    /// The total form in the ring `(u..., x0, ..., xn)`.
    pub fn total_form(&self) -> Result<Poly> {
        let base_ring = self.base.phi.ring();
        let mut names: Vec<String> = base_ring.vars().to_vec();
        names.extend((0..=self.n).map(|i| format!("x{i}")));
        let ring = Ring::new(names, self.field())?;
        let nb = base_ring.nvars();
        let lift: Vec<Poly> = (0..nb).map(|i| Poly::var(&ring, i)).collect();
        let mut total = Poly::zero(&ring);
        for (key, c) in &self.coeffs {
            let mut e = vec![0u32; ring.nvars()];
            for &i in key {
                e[nb + i] += 1;
            }
            let mono = Poly::monomial(&ring, e, self.field().one());
            total = &total + &(&c.substitute(&lift)? * &mono);
        }
        Ok(total)
    }

    /// The same family after `u_j ↦ u_j + c_j·u_{r+1}` for `j ≤ r`.
    pub fn changed(&self, c: &[FieldElement]) -> Result<HypersurfaceFamily> {
        let r = self.base.r;
        if c.len() != r + 1 {
            return Err(Error::dimension(format!("expected {} shifts, got {}", r + 1, c.len())));
        }
        let ring = self.base.phi.ring();
        let last = Poly::var(ring, r + 1);
        let mut images: Vec<Poly> = (0..=r).map(|j| &Poly::var(ring, j) + &last.scale(&c[j])).collect();
        images.push(last.clone());
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, a)| Ok((k.clone(), a.substitute(&images)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let phi = self.base.phi.substitute(&images)?;
        Ok(HypersurfaceFamily {
            base: BaseVariety { phi, r, mbar: self.base.mbar },
            n: self.n,
            d: self.d,
            mu: self.mu,
            coeffs,
        })
    }
}

/// Shifts `c` with `φ(c, 1) ≠ 0`, so that `φ` becomes monic in `u_{r+1}`
/// after [`HypersurfaceFamily::changed`]. Tries `c = 0` first.
pub fn monic_change(phi: &Poly) -> Option<Vec<FieldElement>> {
    let field = phi.field();
    let nb = phi.ring().nvars();
    let values: Vec<FieldElement> = match field.elements() {
        Some(it) => it.collect(),
        None => (0..=3).map(|v| field.from_i64(v)).collect(),
    };
    let limit = 100_000usize;
    let mut digits = vec![0usize; nb - 1];
    for _ in 0..limit {
        let mut point: Vec<FieldElement> = digits.iter().map(|&d| values[d].clone()).collect();
        point.push(field.one());
        if !phi.evaluate(&point).is_zero() {
            point.pop();
            return Some(point);
        }
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < values.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
    None
}

/// The fibre `X_w` over a point `w` of the base.
pub fn fiber_at(fam: &HypersurfaceFamily, w: &[FieldElement]) -> Result<Hypersurface> {
    let nb = fam.base.r + 2;
    if w.len() != nb {
        return Err(Error::dimension(format!("expected {nb} base coordinates, got {}", w.len())));
    }
    if w.iter().any(|c| c.spec() != fam.field()) {
        return Err(Error::FieldMismatch(format!("base point is not over {}", fam.field())));
    }
    if w.iter().all(FieldElement::is_zero) {
        return Err(Error::precondition("the zero vector is not a point"));
    }
    if !fam.base.contains(w) {
        return Err(Error::precondition("the point does not lie on the base"));
    }
    let ring = Ring::new((0..=fam.n).map(|i| format!("x{i}")), fam.field())?;
    let terms = fam.coeffs.iter().map(|(key, c)| {
        let mut e = vec![0u32; fam.n + 1];
        for &i in key {
            e[i] += 1;
        }
        (e, c.evaluate(w))
    });
    let form = Poly::from_terms(&ring, terms);
    if form.is_zero() {
        return Err(Error::precondition("the fibre over this point is all of P^n"));
    }
    Hypersurface::new(form)
}

/// The Fano equations of the family in one chart, with the base
/// coordinates kept as variables after the chart variables.
pub fn relative_fano_equations(fam: &HypersurfaceFamily, k: usize, chart: &MultiIndex) -> Result<FanoSystem> {
    let total = fam.total_form()?;
    let nb = fam.base.r + 2;
    let xs: Vec<usize> = (nb..nb + fam.n + 1).collect();
    let others: Vec<usize> = (0..nb).collect();
    plane_restriction_coefficients(&total, &xs, &others, fam.d, k, chart)
}
