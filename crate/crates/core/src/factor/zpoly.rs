//! Integer-coefficient polynomial helpers, ascending coefficients, no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x + y
        })
        .collect();
    trim(out)
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    trim(out)
}

/// Coefficients reduced into `[0, m)`.
pub fn reduce(p: &[BigInt], m: &BigInt) -> ZPoly {
    trim(p.iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients reduced into `(-m/2, m/2]`.
pub fn symmetric(p: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        p.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial modulo `m` (or over `Z` when `m` is `None`).
pub fn divrem_monic(a: &[BigInt], b: &[BigInt], m: Option<&BigInt>) -> (ZPoly, ZPoly) {
    let db = degree(b).expect("nonzero divisor");
    debug_assert!(b[db].is_one());
    let red = |v: BigInt| match m {
        Some(m) => v.mod_floor(m),
        None => v,
    };
    let mut rem: ZPoly = a.iter().cloned().map(red).collect();
    let Some(da) = degree(&rem) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = red(rem[k + db].clone());
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            rem[k + j] = red(&rem[k + j] - &c * d);
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

pub fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Euclidean 2-norm rounded up to an integer.
pub fn norm2_ceil(p: &[BigInt]) -> BigInt {
    let sq: BigInt = p.iter().map(|c| c * c).sum();
    let mut s = sq.sqrt();
    if &s * &s < sq {
        s += 1;
    }
    s
}

pub fn max_abs(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}
