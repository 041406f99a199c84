//! Binomial coefficients, lexicographic subsets and permutation signs.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

/// `C(n, k)` over machine integers; `0` when `k > n`. Panics on overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// `C(n, k)` for an arbitrary integer top and a small bottom, via the
/// falling-factorial formula. Agrees with the polynomial `n(n-1)...(n-k+1)/k!`
/// for negative `n` as well.
pub fn binomial_big(n: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// All `size`-subsets of `0..n` as increasing index vectors, lexicographic.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..size).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - size + i {
                cur[i] += 1;
                for j in i + 1..size {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exponent vectors of all monomials of total degree `degree` in `nvars`
/// variables, in decreasing lexicographic order (`x0^d` first).
pub fn exponent_vectors(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0u32; nvars];
    fill(&mut cur, 0, degree, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(cur.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, remaining - e, out);
    }
    cur[pos] = 0;
}

/// Sign of the permutation given as a sequence of distinct integers
/// (relative order is what counts).
pub fn permutation_sign(seq: &[usize]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Position of an increasing subset of `0..n` in the lexicographic list
/// produced by [`subsets`].
pub fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let size = subset.len();
    let mut rank = 0u64;
    let mut prev = 0usize;
    for (i, &s) in subset.iter().enumerate() {
        for skipped in prev..s {
            rank += binomial((n - skipped - 1) as u64, (size - i - 1) as u64);
        }
        prev = s + 1;
    }
    rank as usize
}

/// Factorial as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}
