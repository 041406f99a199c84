use super::*;
use alloc::string::ToString;
use alloc::vec;

const Q: FieldSpec = FieldSpec::Rationals;

fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::new(vars.iter().copied(), Q).unwrap()
}

fn p(r: &Arc<Ring>, s: &str) -> Poly {
    parse_poly(s, r).unwrap()
}

#[test]
fn substitute_binomial() {
    let src = ring(&["x"]);
    let dst = ring(&["s", "t"]);
    let img = p(&dst, "s + t");
    let out = p(&src, "x^2").substitute(&[img]).unwrap();
    assert_eq!(out, p(&dst, "s^2 + 2*s*t + t^2"));
}

#[test]
fn substitute_identity() {
    let r = ring(&["x"]);
    let x = p(&r, "x");
    assert_eq!(x.substitute(core::slice::from_ref(&x)).unwrap(), x);
}

#[test]
fn substitute_quadric_on_plane() {
    let src = ring(&["x0", "x1", "x2", "x3"]);
    let dst = ring(&["s0", "s1", "a", "b"]);
    let imgs: Vec<Poly> = ["s0", "s1", "a*s0", "b*s1"].iter().map(|s| p(&dst, s)).collect();
    let out = p(&src, "x0*x3 - x1*x2").substitute(&imgs).unwrap();
    assert_eq!(out, p(&dst, "(b - a)*s0*s1"));
    // coefficient extraction on the same result
    let s = [dst.var_index("s0").unwrap(), dst.var_index("s1").unwrap()];
    assert_eq!(out.coefficient_of(&s, &[1, 1]), p(&dst, "b - a"));
    assert!(out.coefficient_of(&s, &[2, 0]).is_zero());
}

#[test]
fn substitute_rejects_mixed_rings() {
    let src = ring(&["x", "y"]);
    let a = ring(&["s"]);
    let b = ring(&["t"]);
    let err = p(&src, "x*y").substitute(&[p(&a, "s"), p(&b, "t")]);
    assert!(matches!(err, Err(Error::RingMismatch(_))));
    assert!(p(&src, "x").substitute(&[p(&a, "s")]).is_err());
}

#[test]
fn derivatives() {
    let r = ring(&["x", "y"]);
    assert_eq!(p(&r, "x^3").partial_derivative(0, 1).unwrap(), p(&r, "3*x^2"));
    let dxy = p(&r, "x*y").partial_derivative(0, 1).unwrap().partial_derivative(1, 1).unwrap();
    assert_eq!(dxy, Poly::one(&r));
    assert!(p(&r, "x").partial_derivative_by_name("z", 1).is_err());
    assert!(p(&r, "x").partial_derivative(0, 0).is_err());
    // order below the exponent leaves a multiple of y, which vanishes at y = 0
    for k in 1..4u32 {
        let d = p(&r, &alloc::format!("y^{}", k + 1)).partial_derivative(1, 1).unwrap();
        assert!(d.evaluate(&[Q.one(), Q.zero()]).is_zero());
    }
}

#[test]
fn coefficient_extraction() {
    let r = ring(&["a", "b", "s0", "s1"]);
    let poly = p(&r, "a*s0^2 + b*s0*s1");
    assert_eq!(poly.coefficient_of(&[2, 3], &[2, 0]), p(&r, "a"));
    assert!(poly.coefficient_of(&[2, 3], &[0, 2]).is_zero());
}

#[test]
fn homogeneity() {
    let r = ring(&["x0", "x1"]);
    assert_eq!(p(&r, "x0^3 + x1^3").is_homogeneous(), Some(Homogeneity::Degree(3)));
    assert_eq!(p(&r, "x0 + x1^2").is_homogeneous(), None);
    assert_eq!(Poly::zero(&r).is_homogeneous(), Some(Homogeneity::AnyDegree));
}

#[test]
fn reduce_single_step() {
    let r = ring(&["u", "v"]);
    let phi = p(&r, "v^2 - u");
    assert_eq!(p(&r, "v^2").reduce_mod_monic(&phi, 1).unwrap(), p(&r, "u"));
    // lower degree in v: unchanged
    let low = p(&r, "u^3*v + 7");
    assert_eq!(low.reduce_mod_monic(&phi, 1).unwrap(), low);
    // non-monic in v
    let bad = p(&r, "u*v^2 - 1");
    assert!(p(&r, "v^3").reduce_mod_monic(&bad, 1).is_err());
    // unit leading coefficient is accepted
    let scaled = p(&r, "3*v^2 - 3*u");
    assert_eq!(p(&r, "v^2").reduce_mod_monic(&scaled, 1).unwrap(), p(&r, "u"));
}

#[test]
fn multiplicity() {
    let r = ring(&["y", "x"]);
    let f = p(&r, "y*x");
    assert_eq!(f.multiplicity_at(&[Q.zero(), Q.from_i64(2)]), Some(1));
    assert_eq!(f.multiplicity_at(&[Q.zero(), Q.zero()]), Some(2));
    assert_eq!(f.multiplicity_at(&[Q.one(), Q.one()]), Some(0));
    assert_eq!(Poly::zero(&r).multiplicity_at(&[Q.zero(), Q.zero()]), None);
}

#[test]
fn printing_and_parsing() {
    let r = ring(&["x0", "x1", "a_1_3"]);
    let f = p(&r, "-1/2*x0^2*a_1_3 + 3 - x1");
    assert_eq!(f.to_string(), "-1/2*x0^2*a_1_3 - x1 + 3");
    assert_eq!(p(&r, &f.to_string()), f);
    assert_eq!(Poly::zero(&r).to_string(), "0");
    let err = parse_poly("x0 + y", &r).unwrap_err();
    assert_eq!(err, Error::Parse { position: 5, message: "unknown variable `y`".to_string() });
    assert!(parse_poly("x0 +", &r).is_err());
    assert!(parse_poly("(x0", &r).is_err());
    assert!(parse_poly("x0 x1", &r).is_err());
    let fp = Ring::new(["x"], FieldSpec::Prime(5)).unwrap();
    let g = parse_poly("1/2*x - 1", &fp).unwrap();
    assert_eq!(g.to_string(), "3*x + 4");
}

#[test]
fn into_ring_and_det() {
    let r = ring(&["a", "b", "c", "d"]);
    let m = vec![vec![p(&r, "a"), p(&r, "b")], vec![p(&r, "c"), p(&r, "d")]];
    let det = poly_det(&r, &m);
    assert_eq!(det, p(&r, "a*d - b*c"));
    let wide = ring(&["z", "d", "c", "b", "a"]);
    let moved = det.into_ring(&wide).unwrap();
    assert_eq!(moved.to_string(), "d*a - c*b");
    assert!(det.into_ring(&ring(&["a", "b"])).is_err());
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly(r: Arc<Ring>) -> impl Strategy<Value = Poly> {
        let n = r.nvars();
        proptest::collection::vec((proptest::collection::vec(0u32..3, n), -4i64..5), 0..5)
            .prop_map(move |terms| Poly::from_terms(&r, terms.into_iter().map(|(e, c)| (e, Q.from_i64(c)))))
    }

    fn r3() -> Arc<Ring> {
        ring(&["x", "y", "z"])
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(r3()), b in arb_poly(r3()), c in arb_poly(r3())) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn substitution_is_a_homomorphism(a in arb_poly(r3()), b in arb_poly(r3()),
                                          i0 in arb_poly(r3()), i1 in arb_poly(r3()), i2 in arb_poly(r3())) {
            let imgs = [i0, i1, i2];
            let lhs = (&a * &b).substitute(&imgs).unwrap();
            let rhs = &a.substitute(&imgs).unwrap() * &b.substitute(&imgs).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn euler_scaling(a in arb_poly(r3()), deg in 0u32..4, t in -3i64..4) {
            // homogeneous part of degree `deg`
            let h = Poly::from_terms(&a.ring, a.terms().filter(|(m, _)| m.degree() == deg)
                .map(|(m, c)| (m.0.clone(), c.clone())));
            let tt = Poly::constant(&h.ring, Q.from_i64(t));
            let imgs: Vec<Poly> = (0..3).map(|i| &tt * &Poly::var(&h.ring, i)).collect();
            prop_assert_eq!(h.substitute(&imgs).unwrap(), h.scale(&Q.from_i64(t).pow(deg)));
        }

        #[test]
        fn reduction_ignores_multiples(a in arb_poly(r3()), q in arb_poly(r3())) {
            let r = r3();
            let phi = parse_poly("z^2 - x*y + 3*x", &r).unwrap();
            let lhs = (&a + &(&phi * &q)).reduce_mod_monic(&phi, 2).unwrap();
            let rhs = a.reduce_mod_monic(&phi, 2).unwrap();
            prop_assert!(rhs.degree_in(2) < 2);
            prop_assert_eq!(lhs, rhs);
            prop_assert!((&phi * &q).reduce_mod_monic(&phi, 2).unwrap().is_zero());
        }

        #[test]
        fn print_parse_roundtrip(a in arb_poly(r3())) {
            prop_assert_eq!(parse_poly(&a.to_string(), &a.ring).unwrap(), a);
        }
    }
}
