use std::collections::BTreeMap;

use fanokit_core::combinatorics::exponent_vectors;
use fanokit_core::fano::{
    contains_plane, enumerate_planes, fano_equations, fiber_at, relative_fano_equations, BaseVariety, Hypersurface,
    HypersurfaceFamily,
};
use fanokit_core::grassmann::{chart_normalize, plucker_from_matrix, MultiIndex, PlaneFrame};
use fanokit_core::{ExactMatrix, FieldElement, FieldSpec, Poly, Ring, DEFAULT_BUDGET};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_form(rng: &mut ChaCha8Rng, ring: &std::sync::Arc<Ring>, d: u32) -> Poly {
    let field = ring.field();
    let terms = exponent_vectors(ring.nvars(), d).into_iter().map(|e| (e, field.random_element(rng, 3)));
    Poly::from_terms(ring, terms)
}

fn random_frame(rng: &mut ChaCha8Rng, field: FieldSpec, rows: usize, cols: usize) -> PlaneFrame {
    loop {
        let data = (0..rows * cols).map(|_| field.random_element(rng, 3)).collect();
        if let Ok(f) = PlaneFrame::new(ExactMatrix::new(field, rows, cols, data).unwrap()) {
            return f;
        }
    }
}

/// `Σ ℓ_i·g_i` over linear forms `ℓ_i` cutting out the row space of `frame`.
fn hypersurface_through(rng: &mut ChaCha8Rng, frame: &PlaneFrame, d: u32) -> Option<Hypersurface> {
    let field = frame.field();
    let n = frame.ambient();
    let ring = Ring::indexed("x", n + 1, field);
    let mut f = Poly::zero(&ring);
    for l in frame.matrix().kernel_basis() {
        let lin = Poly::from_terms(
            &ring,
            l.iter().enumerate().map(|(j, c)| {
                let mut e = vec![0; n + 1];
                e[j] = 1;
                (e, c.clone())
            }),
        );
        f = &f + &(&lin * &random_form(rng, &ring, d - 1));
    }
    Hypersurface::new(f).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn planes_built_into_a_hypersurface_are_found(seed in any::<u64>(), k in 0usize..=1, d in 2u32..=3, p in prop::sample::select(vec![2u64, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = FieldSpec::Prime(p);
        let n = 3;
        let frame = random_frame(&mut rng, field, k + 1, n + 1);
        let Some(h) = hypersurface_through(&mut rng, &frame, d) else { return Ok(()) };
        let plane = plucker_from_matrix(&frame).unwrap();
        prop_assert!(contains_plane(&h, &plane).unwrap());
        let chart = plane.leading_index();
        let block = chart_normalize(&plane, &chart).unwrap();
        prop_assert!(fano_equations(&h, k, &chart).unwrap().vanishes_at(&block).unwrap());
        let found = enumerate_planes(&h, k, DEFAULT_BUDGET).unwrap();
        prop_assert!(found.contains(&plane));
        for q in &found {
            prop_assert!(contains_plane(&h, q).unwrap());
        }
    }

    #[test]
    fn relative_equations_specialize_at_base_points(seed in any::<u64>(), k in 0usize..=1, chart_pick in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = FieldSpec::Prime(7);
        let (n, d, mu) = (3usize, 2u32, 1u32);
        let base_ring = Ring::indexed("u", 3, field);
        // the conic u0*u2 = u1^2 has the points [1:t:t^2]
        let base = BaseVariety::new(Poly::from_terms(&base_ring, [
            (vec![1, 0, 1], field.one()),
            (vec![0, 2, 0], field.from_i64(-1)),
        ])).unwrap();
        let mut coeffs = BTreeMap::new();
        for e in exponent_vectors(n + 1, d) {
            let key: Vec<usize> = e.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat_n(i, m as usize)).collect();
            coeffs.insert(key, random_form(&mut rng, &base_ring, mu));
        }
        let Ok(fam) = HypersurfaceFamily::new(base, n, d, mu, coeffs) else { return Ok(()) };
        let charts = MultiIndex::all(k + 1, n);
        let chart = &charts[chart_pick % charts.len()];
        let rel = relative_fano_equations(&fam, k, chart).unwrap();
        for t in 0..7i64 {
            let w: Vec<FieldElement> = [1, t, t * t].iter().map(|&v| field.from_i64(v)).collect();
            let Ok(fibre) = fiber_at(&fam, &w) else { continue };
            let special = rel.specialize(&w).unwrap();
            let direct = fano_equations(&fibre, k, chart).unwrap();
            prop_assert_eq!(special.equations(), direct.equations());
        }
    }
}
