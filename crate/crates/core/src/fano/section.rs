//! Rational sections of the relative Fano scheme over the base, sought as
//! tuples of degree-`m` forms modulo `φ` (an ansatz linear in unknowns `λ`).

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand_core::RngCore;

use crate::bounds::{section_lemma_counts, SectionCounts};
use crate::combinatorics::{exponent_vectors, subsets};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::grassmann::{semple_map, MultiIndex, SempleChartPoint};
use crate::matrix::ExactMatrix;
use crate::poly::{Poly, Ring};

use super::contains_plane;
use super::ext::{Fp2, E, UP};
use super::family::{fiber_at, monic_change, relative_fano_equations, HypersurfaceFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionSystem {
    family: HypersurfaceFamily,
    change: Vec<FieldElement>,
    k: usize,
    m: u32,
    psi: Vec<Vec<u32>>,
    lambda_ring: Arc<Ring>,
    equations: Vec<Poly>,
    counts: SectionCounts,
}

impl SectionSystem {
    /// The family after the coordinate change that makes `φ` monic in the
    /// last base coordinate.
    pub fn family(&self) -> &HypersurfaceFamily {
        &self.family
    }

    /// Shifts `c` of `u_j ↦ u_j + c_j·u_{r+1}` (all zero when none was needed).
    pub fn change(&self) -> &[FieldElement] {
        &self.change
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Exponents of the basis `Ψ` of degree-`m` forms modulo `φ`.
    pub fn psi(&self) -> &[Vec<u32>] {
        &self.psi
    }

    /// Unknowns `l_i_j`: coefficient of `Ψ_j` in the `i`-th ansatz form,
    /// `i = 0` being the Semple coordinate `y`.
    pub fn lambda_ring(&self) -> &Arc<Ring> {
        &self.lambda_ring
    }

    /// Nonzero equations, each homogeneous of degree `d` in the unknowns.
    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn counts(&self) -> &SectionCounts {
        &self.counts
    }

    pub fn forms_count(&self) -> usize {
        (self.k + 1) * (self.family.n() - self.k) + 1
    }

    /// The ansatz forms `p_0, ..., p_A` in the base ring for unknowns `λ`.
    pub fn section_forms(&self, lambda: &[FieldElement]) -> Result<Vec<Poly>> {
        let mm = self.psi.len();
        if lambda.len() != self.forms_count() * mm {
            return Err(Error::dimension(format!(
                "expected {} unknowns, got {}",
                self.forms_count() * mm,
                lambda.len()
            )));
        }
        let ring = self.family.base().phi().ring();
        Ok((0..self.forms_count())
            .map(|i| {
                Poly::from_terms(
                    ring,
                    self.psi.iter().enumerate().map(|(j, e)| (e.clone(), lambda[i * mm + j].clone())),
                )
            })
            .collect())
    }
}

pub fn section_system(fam: &HypersurfaceFamily, k: usize, m: u32) -> Result<SectionSystem> {
    let base = fam.base();
    let (n, d, r, mbar) = (fam.n(), fam.d(), base.r(), base.mbar());
    if m <= mbar {
        return Err(Error::precondition(format!("ansatz degree m={m} must exceed base degree {mbar}")));
    }
    if 2 * k >= n {
        return Err(Error::precondition(format!("the Semple chart needs 2k < n, got k={k}, n={n}")));
    }
    let counts = section_lemma_counts(n as u64, d, r as u32, k as u32, m as u64, mbar as u64, fam.mu() as u64)?;
    let change = monic_change(base.phi())
        .ok_or_else(|| Error::precondition("no coordinate change makes the base equation monic"))?;
    let family = if change.iter().all(FieldElement::is_zero) { fam.clone() } else { fam.changed(&change)? };
    let field = fam.field();
    let nb = r + 2;
    let last = r + 1;
    let psi: Vec<Vec<u32>> = exponent_vectors(nb, m).into_iter().filter(|e| e[last] < mbar).collect();
    debug_assert_eq!(BigInt::from(psi.len()), counts.big_m);
    let forms = (k + 1) * (n - k) + 1;
    let lambda_names: Vec<String> =
        (0..forms).flat_map(|i| (1..=psi.len()).map(move |j| format!("l_{i}_{j}"))).collect();
    let lambda_ring = Ring::new(lambda_names.iter().cloned(), field)?;
    let base_ring = family.base().phi().ring().clone();
    let mut work_names = lambda_names.clone();
    work_names.extend(base_ring.vars().iter().cloned());
    let work = Ring::new(work_names, field)?;
    let nl = lambda_names.len();
    let u_images: Vec<Poly> = (0..nb).map(|j| Poly::var(&work, nl + j)).collect();
    let ansatz: Vec<Poly> = (0..forms)
        .map(|i| {
            let terms = psi.iter().enumerate().map(|(j, e)| {
                let mut ex = vec![0u32; work.nvars()];
                ex[i * psi.len() + j] = 1;
                ex[nl..].copy_from_slice(e);
                (ex, field.one())
            });
            Poly::from_terms(&work, terms)
        })
        .collect();
    let mut powers: Vec<Vec<Poly>> = ansatz.iter().map(|p| vec![Poly::one(&work), p.clone()]).collect();
    let mut power = |i: usize, e: u32| -> Poly {
        while powers[i].len() <= e as usize {
            let next = &powers[i][powers[i].len() - 1] * &ansatz[i];
            powers[i].push(next);
        }
        powers[i][e as usize].clone()
    };
    let chart = MultiIndex::initial(k + 1, n);
    let relative = relative_fano_equations(&family, k, &chart)?;
    let na = relative.chart_var_count();
    let phi = family.base().phi().substitute(&u_images)?;
    let u_vars: Vec<usize> = (nl..nl + nb).collect();
    let mut equations = Vec::new();
    for eq in relative.equations() {
        // y^d·E(x / y) with y = p_0 and the chart entries p_1, ..., p_A
        let mut hom = Poly::zero(&work);
        for (mono, c) in eq.terms() {
            let ex = mono.exponents();
            let delta: u32 = ex[..na].iter().sum();
            let mut t = power(0, d - delta).scale(c);
            for (a, &e) in ex[..na].iter().enumerate() {
                if e > 0 {
                    t = &t * &power(a + 1, e);
                }
            }
            for (j, &e) in ex[na..].iter().enumerate() {
                if e > 0 {
                    t = &t * &u_images[j].pow(e);
                }
            }
            hom = &hom + &t;
        }
        let reduced = hom.reduce_mod_monic(&phi, nl + last)?;
        for (_, coeff) in reduced.coefficients_in(&u_vars) {
            let e = coeff.into_ring(&lambda_ring)?;
            if !e.is_zero() {
                equations.push(e);
            }
        }
    }
    Ok(SectionSystem { family, change, k, m, psi, lambda_ring, equations, counts })
}

/// A coefficient with its `(variable, exponent)` factors.
type Term = (u64, Vec<(usize, u32)>);

/// Equations compiled to residue arithmetic for the searches.
struct Compiled {
    p: u64,
    terms: Vec<Vec<Term>>,
}

impl Compiled {
    fn new(sys: &SectionSystem, p: u64) -> Self {
        let terms = sys
            .equations
            .iter()
            .map(|e| {
                e.terms()
                    .map(|(m, c)| {
                        let vars = m.exponents().iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x));
                        (c.residue().expect("prime field"), vars.collect())
                    })
                    .collect()
            })
            .collect();
        Compiled { p, terms }
    }

    fn solves(&self, x: &[u64]) -> bool {
        let p = self.p as u128;
        self.terms.iter().all(|eq| {
            let mut acc = 0u128;
            for (c, vars) in eq {
                let mut t = *c as u128;
                for &(i, e) in vars {
                    for _ in 0..e {
                        t = t * x[i] as u128 % p;
                    }
                }
                acc = (acc + t) % p;
            }
            acc == 0
        })
    }
}

fn prime_of(sys: &SectionSystem) -> Result<u64> {
    match sys.family.field() {
        FieldSpec::Prime(p) => Ok(p),
        FieldSpec::Rationals => Err(Error::precondition("section search needs a prime field")),
    }
}

/// First nonzero solution in odometer order (first unknown fastest), or
/// `None` when the system has only the zero solution.
pub fn solve_section_brute(sys: &SectionSystem, budget: u128) -> Result<Option<Vec<FieldElement>>> {
    let p = prime_of(sys)?;
    let count = sys.lambda_ring.nvars();
    let estimate = BigInt::from(p).pow(count as u32);
    if estimate.to_u128().is_none_or(|e| e > budget) {
        return Err(Error::Budget { estimate: estimate.to_str_radix(10), budget });
    }
    let compiled = Compiled::new(sys, p);
    let mut x = vec![0u64; count];
    loop {
        let mut pos = 0;
        loop {
            if pos == count {
                return Ok(None);
            }
            x[pos] += 1;
            if x[pos] < p {
                break;
            }
            x[pos] = 0;
            pos += 1;
        }
        if compiled.solves(&x) {
            return Ok(Some(x.iter().map(|&v| FieldElement::Residue { value: v, modulus: p }).collect()));
        }
    }
}

/// Uniform random nonzero trials.
pub fn solve_section_random<R: RngCore + ?Sized>(
    sys: &SectionSystem,
    rng: &mut R,
    attempts: u64,
) -> Result<Option<Vec<FieldElement>>> {
    let p = prime_of(sys)?;
    let compiled = Compiled::new(sys, p);
    let count = sys.lambda_ring.nvars();
    let mut x = vec![0u64; count];
    for _ in 0..attempts {
        for v in x.iter_mut() {
            *v = rng.next_u64() % p;
        }
        if x.iter().any(|&v| v != 0) && compiled.solves(&x) {
            return Ok(Some(x.iter().map(|&v| FieldElement::Residue { value: v, modulus: p }).collect()));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SectionVerification {
    /// Points of the base over `F_p`.
    pub base_points_fp: usize,
    /// Points of the base over `F_{p²}` not defined over `F_p`.
    pub base_points_fp2: usize,
    pub checked_fp: usize,
    pub checked_fp2: usize,
    /// Checked points where the ansatz is indeterminate and the plane is the
    /// limit along a line of the base.
    pub extended: usize,
    /// Points where no plane could be attached.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SectionVerification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked_fp + self.checked_fp2 > 0
    }

    /// Every base point was checked.
    pub fn complete(&self) -> bool {
        self.passed() && self.skipped == 0
    }
}

struct Verifier<'a> {
    ext: Fp2,
    forms: &'a [Poly],
    phi: &'a Poly,
    k: usize,
    n: usize,
    dim: usize,
}

impl Verifier<'_> {
    /// `[y·I | x]` at `w`, when it has full rank.
    fn direct_rows(&self, w: &[E]) -> Option<Vec<Vec<E>>> {
        let (k, n) = (self.k, self.n);
        let values: Vec<E> = self.forms.iter().map(|f| self.ext.eval(f, w)).collect();
        let rows: Vec<Vec<E>> = (0..=k)
            .map(|i| {
                let mut row = vec![(0, 0); k + 1];
                row[i] = values[0];
                row.extend_from_slice(&values[1 + i * (n - k)..1 + (i + 1) * (n - k)]);
                row
            })
            .collect();
        (self.ext.rank(rows.clone()) == k + 1).then_some(rows)
    }

    /// Limit at `t = 0` of the planes over `w + t·v`, for the first line
    /// through `w` inside the base along which the limit exists.
    fn limit_rows(&self, w: &[E]) -> Option<Vec<Vec<E>>> {
        let (ext, k, n) = (&self.ext, self.k, self.n);
        for v in ext.projective_points(self.dim) {
            if ext.rank(vec![w.to_vec(), v.clone()]) < 2 || !ext.eval_line(self.phi, w, &v).is_empty() {
                continue;
            }
            let p: Vec<UP> = self.forms.iter().map(|f| ext.eval_line(f, w, &v)).collect();
            let matrix: Vec<Vec<UP>> = (0..=k)
                .map(|i| {
                    let mut row = vec![Vec::new(); k + 1];
                    row[i] = p[0].clone();
                    row.extend_from_slice(&p[1 + i * (n - k)..1 + (i + 1) * (n - k)]);
                    row
                })
                .collect();
            let minors: Vec<UP> = subsets(n + 1, k + 1)
                .iter()
                .map(|cols| {
                    let sub: Vec<Vec<UP>> =
                        matrix.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
                    ext.up_det(&sub)
                })
                .collect();
            let Some(order) = minors.iter().filter_map(|m| m.iter().position(|c| *c != (0, 0))).min() else {
                continue;
            };
            let coords: Vec<E> = minors.iter().map(|m| m.get(order).copied().unwrap_or((0, 0))).collect();
            return Some(ext.frame_from_plucker(&coords, k, n));
        }
        None
    }
}

fn fp_points(p: u64, dim: usize) -> Vec<Vec<FieldElement>> {
    let mut out = Vec::new();
    for lead in 0..=dim {
        let tail = dim - lead;
        let total = (p as usize).pow(tail as u32);
        for idx in 0..total {
            let mut pt = vec![FieldElement::Residue { value: 0, modulus: p }; lead];
            pt.push(FieldElement::Residue { value: 1, modulus: p });
            let mut rest = idx;
            for _ in 0..tail {
                pt.push(FieldElement::Residue { value: (rest % p as usize) as u64, modulus: p });
                rest /= p as usize;
            }
            out.push(pt);
        }
    }
    out
}

/// Plane through the library Semple map, when defined and the fibre is a
/// genuine hypersurface.
fn library_check(sys: &SectionSystem, forms: &[Poly], w: &[FieldElement]) -> Result<Option<bool>> {
    let fam = &sys.family;
    let Ok(fibre) = fiber_at(fam, w) else { return Ok(None) };
    let values: Vec<FieldElement> = forms.iter().map(|f| f.evaluate(w)).collect();
    if values.iter().all(FieldElement::is_zero) {
        return Ok(None);
    }
    let x = ExactMatrix::new(fam.field(), sys.k + 1, fam.n() - sys.k, values[1..].to_vec())?;
    match semple_map(&SempleChartPoint::new(values[0].clone(), x)?) {
        Ok(plane) => Ok(Some(contains_plane(&fibre, &plane)?)),
        Err(Error::Indeterminacy(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Checks that the plane attached by the ansatz lies in the fibre at every
/// point of the base over `F_p` and `F_{p²}`. Where the ansatz is
/// indeterminate the plane is a limit along a line of the base; containment
/// is a closed condition, so limits must pass too.
pub fn verify_section(sys: &SectionSystem, lambda: &[FieldElement]) -> Result<SectionVerification> {
    let p = prime_of(sys)?;
    let forms = sys.section_forms(lambda)?;
    let fam = &sys.family;
    let total = fam.total_form()?;
    let v = Verifier {
        ext: Fp2::new(p),
        forms: &forms,
        phi: fam.base().phi(),
        k: sys.k,
        n: fam.n(),
        dim: fam.base().r() + 1,
    };
    let mut report = SectionVerification::default();
    let rational: Vec<Vec<FieldElement>> = fp_points(p, v.dim).into_iter().filter(|w| fam.base().contains(w)).collect();
    let mut points: Vec<(Vec<E>, Option<Vec<FieldElement>>)> =
        rational.into_iter().map(|w| (w.iter().map(|c| v.ext.coeff(c)).collect(), Some(w))).collect();
    report.base_points_fp = points.len();
    for w in v.ext.projective_points(v.dim) {
        if w.iter().any(|c| c.1 != 0) && v.ext.eval(v.phi, &w) == (0, 0) {
            points.push((w, None));
            report.base_points_fp2 += 1;
        }
    }
    for (w, rational) in points {
        let (rows, limit) = match v.direct_rows(&w) {
            Some(rows) => (rows, false),
            None => match v.limit_rows(&w) {
                Some(rows) => (rows, true),
                None => {
                    report.skipped += 1;
                    continue;
                }
            },
        };
        let holds = v.ext.restriction_vanishes(&total, &w, &rows);
        let label = match &rational {
            Some(r) => show(r),
            None => {
                let shown: Vec<String> = w.iter().map(|(a, b)| format!("{a}+{b}t")).collect();
                format!("[{}] over F_{}^2", shown.join(":"), p)
            }
        };
        if let Some(r) = &rational {
            if !limit {
                if let Some(lib) = library_check(sys, &forms, r)? {
                    if lib != holds {
                        report.failures.push(format!("containment checks disagree over {label}"));
                        continue;
                    }
                }
            }
        }
        if !holds {
            report.failures.push(format!("plane not in the fibre over {label}"));
            continue;
        }
        if rational.is_some() {
            report.checked_fp += 1;
        } else {
            report.checked_fp2 += 1;
        }
        if limit {
            report.extended += 1;
        }
    }
    Ok(report)
}

fn show(w: &[FieldElement]) -> String {
    let parts: Vec<String> = w.iter().map(|c| format!("{c}")).collect();
    format!("[{}]", parts.join(":"))
}
