//! Hypersurfaces, the equations of their Fano schemes of k-planes on a
//! Grassmannian chart, and the relative version for families.

mod ext;
mod family;
mod section;
mod smooth;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::combinatorics::{binomial, exponent_vectors};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::grassmann::{plucker_from_matrix, MultiIndex, PlaneFrame, PluckerPoint};
use crate::matrix::ExactMatrix;
use crate::poly::{Homogeneity, Poly, Ring};
#[cfg(test)]
use crate::DEFAULT_BUDGET;

pub use family::{fiber_at, monic_change, relative_fano_equations, BaseVariety, HypersurfaceFamily};
pub use section::{
    section_system, solve_section_brute, solve_section_random, verify_section, SectionSystem, SectionVerification,
};
pub use smooth::{smooth_along_plane, Smoothness};

/// `f = 0` in `P^n`, with `f` homogeneous of degree `d` in `n + 1` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersurface {
    n: usize,
    d: u32,
    form: Poly,
}

impl Hypersurface {
    pub fn new(form: Poly) -> Result<Self> {
        let nvars = form.ring().nvars();
        if nvars < 2 {
            return Err(Error::precondition("a hypersurface needs at least two variables"));
        }
        match form.is_homogeneous() {
            Some(Homogeneity::Degree(d)) if d >= 1 => Ok(Hypersurface { n: nvars - 1, d, form }),
            Some(_) => Err(Error::precondition("the zero form (or a constant) defines no hypersurface")),
            None => Err(Error::precondition("the form is not homogeneous")),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn form(&self) -> &Poly {
        &self.form
    }

    pub fn field(&self) -> FieldSpec {
        self.form.field()
    }
}

/// Equations of the planes on a hypersurface (or family) in one chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoSystem {
    k: usize,
    chart: MultiIndex,
    ring: Arc<Ring>,
    chart_vars: usize,
    s_monomials: Vec<Vec<u32>>,
    equations: Vec<Poly>,
}

impl FanoSystem {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn chart(&self) -> &MultiIndex {
        &self.chart
    }

    /// Chart variables `a_i_j` first, then any base variables.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn chart_var_count(&self) -> usize {
        self.chart_vars
    }

    /// The `s`-monomial whose coefficient each equation is.
    pub fn s_monomials(&self) -> &[Vec<u32>] {
        &self.s_monomials
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn is_relative(&self) -> bool {
        self.ring.nvars() > self.chart_vars
    }

    fn block_values(&self, block: &ExactMatrix) -> Result<Vec<FieldElement>> {
        if block.rows() != self.k + 1 || block.cols() != self.chart.ambient() - self.k {
            return Err(Error::dimension(format!(
                "chart block must be {}x{}",
                self.k + 1,
                self.chart.ambient() - self.k
            )));
        }
        Ok((0..block.rows()).flat_map(|i| block.row(i).iter().cloned()).collect())
    }

    /// Values of the equations at a chart block (absolute systems only).
    pub fn evaluate(&self, block: &ExactMatrix) -> Result<Vec<FieldElement>> {
        if self.is_relative() {
            return Err(Error::precondition("specialize the base variables first"));
        }
        let point = self.block_values(block)?;
        Ok(self.equations.iter().map(|e| e.evaluate(&point)).collect())
    }

    pub fn vanishes_at(&self, block: &ExactMatrix) -> Result<bool> {
        Ok(self.evaluate(block)?.iter().all(FieldElement::is_zero))
    }

    /// Substitutes values for the base variables of a relative system.
    pub fn specialize(&self, base_point: &[FieldElement]) -> Result<FanoSystem> {
        let nbase = self.ring.nvars() - self.chart_vars;
        if base_point.len() != nbase {
            return Err(Error::dimension(format!("expected {nbase} base coordinates, got {}", base_point.len())));
        }
        let target = Ring::new(self.ring.vars()[..self.chart_vars].iter().cloned(), self.ring.field())?;
        let mut images: Vec<Poly> = (0..self.chart_vars).map(|i| Poly::var(&target, i)).collect();
        images.extend(base_point.iter().map(|c| Poly::constant(&target, c.clone())));
        let equations = self.equations.iter().map(|e| e.substitute(&images)).collect::<Result<Vec<_>>>()?;
        Ok(FanoSystem {
            k: self.k,
            chart: self.chart.clone(),
            ring: target,
            chart_vars: self.chart_vars,
            s_monomials: self.s_monomials.clone(),
            equations,
        })
    }
}

pub(crate) fn chart_var_names(k: usize, chart: &MultiIndex) -> Vec<String> {
    let comp = chart.complement();
    (1..=k + 1).flat_map(|i| comp.indices().iter().map(move |j| format!("a_{i}_{j}"))).collect()
}

/// Substitutes the symbolic chart frame into `form`, whose variables at
/// `x_positions` are the coordinates of `P^n` and whose remaining variables
/// `others` are carried along. Returns the coefficients of the degree-`d`
/// `s`-monomials in the ring (chart variables, carried variables).
pub(crate) fn plane_restriction_coefficients(
    form: &Poly,
    x_positions: &[usize],
    others: &[usize],
    d: u32,
    k: usize,
    chart: &MultiIndex,
) -> Result<FanoSystem> {
    let n = x_positions.len() - 1;
    if chart.len() != k + 1 || chart.ambient() != n {
        return Err(Error::precondition(format!("chart {chart} does not index {k}-planes of P^{n}")));
    }
    let field = form.field();
    let src = form.ring();
    let a_names = chart_var_names(k, chart);
    let other_names: Vec<String> = others.iter().map(|&i| src.vars()[i].clone()).collect();
    let mut work_names: Vec<String> = (0..=k).map(|i| format!("s{i}")).collect();
    work_names.extend(a_names.iter().cloned());
    work_names.extend(other_names.iter().cloned());
    let work = Ring::new(work_names, field)?;
    let comp = chart.complement();
    let width = comp.len();
    let mut images = alloc::vec![Poly::zero(&work); src.nvars()];
    for (col, &pos) in x_positions.iter().enumerate() {
        let column = col + 1;
        let mut img = Poly::zero(&work);
        for i in 0..=k {
            let s = Poly::var(&work, i);
            if chart.indices()[i] == column {
                img = &img + &s;
            } else if let Some(j) = comp.indices().iter().position(|&c| c == column) {
                img = &img + &(&s * &Poly::var(&work, k + 1 + i * width + j));
            }
        }
        images[pos] = img;
    }
    for (t, &pos) in others.iter().enumerate() {
        images[pos] = Poly::var(&work, k + 1 + a_names.len() + t);
    }
    let restricted = form.substitute(&images)?;
    let mut target_names = a_names.clone();
    target_names.extend(other_names);
    let target = Ring::new(target_names, field)?;
    let s_vars: Vec<usize> = (0..=k).collect();
    let s_monomials = exponent_vectors(k + 1, d);
    let equations = s_monomials
        .iter()
        .map(|e| restricted.coefficient_of(&s_vars, e).into_ring(&target))
        .collect::<Result<Vec<_>>>()?;
    Ok(FanoSystem { k, chart: chart.clone(), ring: target, chart_vars: a_names.len(), s_monomials, equations })
}

/// `f(Σ s_i·row_i)` as a form in `s_0, ..., s_k`.
pub fn restrict_to_plane(h: &Hypersurface, frame: &PlaneFrame) -> Result<Poly> {
    if frame.ambient() != h.n {
        return Err(Error::dimension(format!("frame lives in P^{}, hypersurface in P^{}", frame.ambient(), h.n)));
    }
    if frame.field() != h.field() {
        return Err(Error::FieldMismatch(format!("{} vs {}", frame.field(), h.field())));
    }
    let k = frame.dim();
    let ring = Ring::new((0..=k).map(|i| format!("s{i}")), h.field())?;
    let m = frame.matrix();
    let images: Vec<Poly> = (0..=h.n)
        .map(|j| (0..=k).fold(Poly::zero(&ring), |acc, i| &acc + &Poly::var(&ring, i).scale(m.get(i, j))))
        .collect();
    h.form.substitute(&images)
}

/// The `C(d+k, k)` coefficients of `f` restricted to the chart frame with
/// identity in the columns of `chart` and `a_i_j` elsewhere.
pub fn fano_equations(h: &Hypersurface, k: usize, chart: &MultiIndex) -> Result<FanoSystem> {
    let xs: Vec<usize> = (0..=h.n).collect();
    plane_restriction_coefficients(&h.form, &xs, &[], h.d, k, chart)
}

/// `Σ c_I·x^I` over all degree-`d` multisets `I` of `{0, ..., n}`, in the
/// ring `(c_..., x0, ..., xn)` with coefficient names like `c_0_0_3`.
pub fn generic_form(n: usize, d: u32, field: FieldSpec) -> Result<Poly> {
    let exps = exponent_vectors(n + 1, d);
    let key_name = |e: &Vec<u32>| {
        let idx: Vec<String> = e.iter().enumerate().flat_map(|(i, &m)| (0..m).map(move |_| format!("{i}"))).collect();
        format!("c_{}", idx.join("_"))
    };
    let mut names: Vec<String> = exps.iter().map(key_name).collect();
    names.extend((0..=n).map(|i| format!("x{i}")));
    let ring = Ring::new(names, field)?;
    let nc = exps.len();
    let terms = exps.iter().enumerate().map(|(j, e)| {
        let mut full = alloc::vec![0u32; nc];
        full[j] = 1;
        full.extend_from_slice(e);
        (full, field.one())
    });
    Ok(Poly::from_terms(&ring, terms))
}

/// Fano equations of the generic degree-`d` hypersurface: the coefficients
/// `c_I` are kept as variables after the chart variables, and every equation
/// is linear in them.
pub fn generic_fano_equations(n: usize, d: u32, k: usize, chart: &MultiIndex, field: FieldSpec) -> Result<FanoSystem> {
    let form = generic_form(n, d, field)?;
    let nc = form.ring().nvars() - (n + 1);
    let xs: Vec<usize> = (nc..nc + n + 1).collect();
    let cs: Vec<usize> = (0..nc).collect();
    plane_restriction_coefficients(&form, &xs, &cs, d, k, chart)
}

pub fn contains_plane(h: &Hypersurface, p: &PluckerPoint) -> Result<bool> {
    Ok(restrict_to_plane(h, &p.frame())?.is_zero())
}

/// `p^{(k+1)(n−k)}·C(n+1, k+1)`: chart matrices over all charts.
pub fn enumeration_estimate(p: u64, k: usize, n: usize) -> BigInt {
    BigInt::from(p).pow(((k + 1) * (n - k)) as u32) * BigInt::from(binomial(n as u64 + 1, k as u64 + 1))
}

/// All `F_p`-rational k-planes on `h`, each once: Schubert cells in
/// lexicographic order of their pivot index, then the free entries of the
/// reduced echelon frame in odometer order.
pub fn enumerate_planes(h: &Hypersurface, k: usize, budget: u128) -> Result<Vec<PluckerPoint>> {
    let field = h.field();
    let FieldSpec::Prime(p) = field else {
        return Err(Error::precondition("plane enumeration needs a prime field"));
    };
    let n = h.n;
    if k >= n {
        return Err(Error::precondition(format!("need k < n, got k={k}, n={n}")));
    }
    let estimate = enumeration_estimate(p, k, n);
    if estimate.to_u128().is_none_or(|e| e > budget) {
        return Err(Error::Budget { estimate: estimate.to_str_radix(10), budget });
    }
    let elements: Vec<FieldElement> = field.elements().expect("prime field").collect();
    let mut out = Vec::new();
    for chart in MultiIndex::all(k + 1, n) {
        let system = fano_equations(h, k, &chart)?;
        let comp = chart.complement();
        // entries left of the row's pivot vanish in reduced echelon form
        let free: Vec<(usize, usize)> = (0..=k)
            .flat_map(|i| {
                let pivot = chart.indices()[i];
                comp.indices().iter().enumerate().filter(move |(_, &c)| c > pivot).map(move |(j, _)| (i, j))
            })
            .collect();
        let mut digits = alloc::vec![0usize; free.len()];
        loop {
            let mut block = ExactMatrix::zeros(field, k + 1, comp.len());
            for (&(i, j), &dgt) in free.iter().zip(&digits) {
                block.set(i, j, elements[dgt].clone());
            }
            if system.vanishes_at(&block)? {
                let point = plucker_from_matrix(&PlaneFrame::from_chart(&chart, &block)?)?;
                debug_assert_eq!(point.leading_index(), chart);
                out.push(point);
            }
            // odometer, last entry fastest
            let mut pos = digits.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < elements.len() {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(out)
}
