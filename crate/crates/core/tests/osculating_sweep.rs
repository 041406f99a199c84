use fanokit_core::grassmann::{osculating_dimension, osculating_rank_empirical};

#[test]
fn empirical_rank_matches_formula_for_small_grassmannians() {
    for k in 1..=3usize {
        for n in 2 * k + 1..=7 {
            for r in 1..=k {
                let formula = osculating_dimension(k, n, r).unwrap();
                assert_eq!(osculating_rank_empirical(k, n, r).unwrap(), formula, "k={k} n={n} r={r}");
            }
        }
    }
}

#[test]
fn named_values() {
    assert_eq!(osculating_dimension(1, 3, 1).unwrap(), 4);
    assert_eq!(osculating_dimension(2, 5, 1).unwrap(), 9);
    assert_eq!(osculating_dimension(2, 5, 2).unwrap(), 18);
    // Vandermonde: order k misses only the C(n-k, k+1) top terms
    use fanokit_core::combinatorics::binomial;
    for k in 1..=4usize {
        for n in 2 * k + 1..=12 {
            let (k64, n64) = (k as u64, n as u64);
            let missing = binomial(n64 - k64, k64 + 1);
            assert_eq!(osculating_dimension(k, n, k).unwrap(), binomial(n64 + 1, k64 + 1) - 1 - missing);
        }
    }
}
