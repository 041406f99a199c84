use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::grassmann::PluckerPoint;
use crate::poly::{Poly, Ring};

use super::{contains_plane, restrict_to_plane, Hypersurface};

/// Whether a hypersurface is smooth at every point of a plane it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// A singular point of the hypersurface on the plane, in `P^n`.
    SingularAt(Vec<FieldElement>),
    /// The partials share this binary form in `s0, s1`; its roots are the
    /// singular points on the line. Over `F_p` none of them is rational.
    SingularAtRootsOf(Poly),
    Inconclusive(String),
}

type UPoly = Vec<FieldElement>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(FieldElement::is_zero) {
        p.pop();
    }
    p
}

fn rem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("trimmed");
    while r.len() >= b.len() {
        let q = r.last().expect("nonempty") * &lead_inv;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            let t = &q * c;
            r[shift + i] -= &t;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd(a: UPoly, b: UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn eval(p: &UPoly, t: &FieldElement) -> FieldElement {
    p.iter().rev().fold(t.spec().zero(), |acc, c| &(&acc * t) + c)
}

/// Image of `s` under the frame rows: a point of `P^n`.
fn image(p: &PluckerPoint, s: &[FieldElement]) -> Vec<FieldElement> {
    let frame = p.frame();
    let m = frame.matrix();
    (0..m.cols())
        .map(|j| s.iter().enumerate().fold(p.field().zero(), |acc, (i, si)| &acc + &(si * m.get(i, j))))
        .collect()
}

fn points_of_projective_space(field: FieldSpec, dim: usize) -> Vec<Vec<FieldElement>> {
    let elements: Vec<FieldElement> = match field.elements() {
        Some(it) => it.collect(),
        None => (-2i64..=2).map(|v| field.from_i64(v)).collect(),
    };
    let mut out = Vec::new();
    for lead in 0..=dim {
        let tail = dim - lead;
        let mut digits = vec![0usize; tail];
        loop {
            let mut pt = vec![field.zero(); lead];
            pt.push(field.one());
            pt.extend(digits.iter().map(|&d| elements[d].clone()));
            out.push(pt);
            let mut pos = tail;
            let mut done = true;
            while pos > 0 {
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < elements.len() {
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

/// Checks the partial derivatives of `f` along a plane contained in `X`.
/// Decided for lines over any field and for points of `P^0`; for higher
/// planes a search over rational points of the plane may only find a
/// witness.
pub fn smooth_along_plane(h: &Hypersurface, p: &PluckerPoint) -> Result<Smoothness> {
    if !contains_plane(h, p)? {
        return Err(Error::precondition("the plane does not lie on the hypersurface"));
    }
    let field = h.field();
    let k = p.k();
    let frame = p.frame();
    let partials = (0..=h.n())
        .map(|i| {
            let g = h.form().partial_derivative(i, 1)?;
            restrict_to_plane(&Hypersurface { n: h.n(), d: h.d(), form: g }, &frame)
        })
        .collect::<Result<Vec<Poly>>>()?;
    let nonzero: Vec<&Poly> = partials.iter().filter(|g| !g.is_zero()).collect();
    let first_point = |s_index: usize| {
        let mut s = vec![field.zero(); k + 1];
        s[s_index] = field.one();
        image(p, &s)
    };
    if nonzero.is_empty() {
        return Ok(Smoothness::SingularAt(first_point(0)));
    }
    match k {
        0 => Ok(Smoothness::Smooth),
        1 => line_verdict(p, &nonzero, h.d() - 1),
        _ => {
            for s in points_of_projective_space(field, k) {
                if nonzero.iter().all(|g| g.evaluate(&s).is_zero()) {
                    return Ok(Smoothness::SingularAt(image(p, &s)));
                }
            }
            let scope = if field.is_finite() { "rational points" } else { "small integer points" };
            Ok(Smoothness::Inconclusive(format!("no singular {scope} on the {k}-plane; extension points not searched")))
        }
    }
}

fn line_verdict(p: &PluckerPoint, gs: &[&Poly], e: u32) -> Result<Smoothness> {
    let field = p.field();
    // [0:1] is a common root when every s1^e coefficient vanishes
    if gs.iter().all(|g| g.coefficient(&[0, e]).is_zero()) {
        return Ok(Smoothness::SingularAt(image(p, &[field.zero(), field.one()])));
    }
    let dehom: Vec<UPoly> = gs.iter().map(|g| (0..=e).map(|j| g.coefficient(&[e - j, j])).collect::<UPoly>()).collect();
    let mut g = Vec::new();
    for d in dehom {
        g = gcd(g, d);
    }
    if g.len() <= 1 {
        return Ok(Smoothness::Smooth);
    }
    if g.len() == 2 {
        let t = -&(&g[0] / &g[1]);
        return Ok(Smoothness::SingularAt(image(p, &[field.one(), t])));
    }
    if let Some(elements) = field.elements() {
        for t in elements {
            if eval(&g, &t).is_zero() {
                return Ok(Smoothness::SingularAt(image(p, &[field.one(), t])));
            }
        }
    }
    // homogenize back: g(s1/s0)·s0^deg
    let ring = Ring::new(["s0", "s1"], field)?;
    let deg = g.len() as u32 - 1;
    let factor = Poly::from_terms(&ring, g.into_iter().enumerate().map(|(j, c)| (vec![deg - j as u32, j as u32], c)));
    Ok(Smoothness::SingularAtRootsOf(factor))
}
