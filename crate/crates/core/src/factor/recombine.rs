//! Zassenhaus subset recombination of lifted modular factors.

use super::zpoly::{self, ZPoly};
use super::ModularFactorSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

/// Coefficient bound for any factor of `f` over `Z`: `2^deg * ceil(||f||_2)`.
pub fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let n = zpoly::degree(f).unwrap_or(0);
    (BigInt::from(1) << n) * zpoly::norm2_ceil(f)
}

/// Smallest level with `prime^level > 2 * bound`.
pub fn level_for_bound(prime: u64, bound: &BigInt) -> u32 {
    let target = bound * 2u32;
    let p = BigInt::from(prime);
    let mut m = p.clone();
    let mut level = 1;
    while m <= target {
        m *= &p;
        level += 1;
    }
    level
}

/// Next `k`-subset of `0..n` in lexicographic order.
fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Recovers the irreducible factors over `Z` of the monic polynomial
/// `mf.poly` from its factorization modulo `prime^level`.
///
/// The level must exceed the Mignotte bound of the polynomial for the output
/// to be the complete factorization; every returned polynomial is a true
/// divisor regardless, since candidates are confirmed by trial division.
pub fn recombine(mf: &ModularFactorSet) -> Vec<ZPoly> {
    let modulus = Pow::pow(&BigInt::from(mf.prime), mf.level);
    let bound = mignotte_bound(&mf.poly);
    let mut remaining: Vec<ZPoly> = mf.factors.clone();
    let mut f = mf.poly.clone();
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let n = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let cand = idx
                .iter()
                .fold(vec![BigInt::from(1)], |acc, &i| {
                    zpoly::reduce(&zpoly::mul(&acc, &remaining[i]), &modulus)
                });
            let cand = zpoly::symmetric(&cand, &modulus);
            let f0 = &f[0];
            let plausible = zpoly::max_abs(&cand) <= bound
                && (f0.is_zero() || (!cand[0].is_zero() && f0.is_multiple_of(&cand[0])));
            if plausible {
                let (q, r) = zpoly::divrem_monic(&f, &cand, None);
                if r.is_empty() {
                    found.push(cand);
                    f = q;
                    let mut k = 0;
                    remaining.retain(|_| {
                        let keep = !idx.contains(&k);
                        k += 1;
                        keep
                    });
                    continue 'outer;
                }
            }
            if !next_subset(&mut idx, n) {
                break;
            }
        }
        size += 1;
    }
    if zpoly::degree(&f).is_some_and(|d| d > 0) {
        found.push(f);
    }
    found
}
