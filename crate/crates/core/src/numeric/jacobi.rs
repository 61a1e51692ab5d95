//! Cyclic Jacobi eigenvalue iteration for small symmetric matrices.

use super::mp::{self, Float};

/// Lower estimate of the smallest eigenvalue of the symmetric matrix `a`:
/// the smallest diagonal entry after Jacobi sweeps, minus the Frobenius norm
/// of what is left off the diagonal.
pub fn smallest_eigenvalue_lower(a: &[Vec<Float>], prec: usize) -> Float {
    let n = a.len();
    let mut a: Vec<Vec<Float>> = a.to_vec();
    let one = mp::from_int(1, prec);
    let two = mp::from_int(2, prec);
    let frob = |a: &[Vec<Float>]| {
        let mut s = mp::zero(prec);
        for row in a {
            for x in row {
                s += x * x;
            }
        }
        s
    };
    let off = |a: &[Vec<Float>]| {
        let mut s = mp::zero(prec);
        for (i, row) in a.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    s += x * x;
                }
            }
        }
        s
    };
    let tol = frob(&a) * mp::pow2(-2 * prec as isize, prec);
    for _ in 0..60 {
        if off(&a) <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if mp::is_zero(&a[p][q]) {
                    continue;
                }
                let tau = (&a[q][q] - &a[p][p]) / (&two * &a[p][q]);
                let r = mp::sqrt(&(&one + &tau * &tau));
                let t = if mp::is_negative(&tau) {
                    -(&one / (mp::abs(&tau) + &r))
                } else {
                    &one / (mp::abs(&tau) + &r)
                };
                let c = &one / mp::sqrt(&(&one + &t * &t));
                let s = &t * &c;
                for k in 0..n {
                    let akp = a[k][p].clone();
                    let akq = a[k][q].clone();
                    a[k][p] = &c * &akp - &s * &akq;
                    a[k][q] = &s * &akp + &c * &akq;
                }
                for k in 0..n {
                    let apk = a[p][k].clone();
                    let aqk = a[q][k].clone();
                    a[p][k] = &c * &apk - &s * &aqk;
                    a[q][k] = &s * &apk + &c * &aqk;
                }
            }
        }
    }
    let min = (0..n)
        .map(|i| a[i][i].clone())
        .reduce(|m, d| if d < m { d } else { m })
        .unwrap_or_else(|| mp::zero(prec));
    min - mp::sqrt(&off(&a))
}
