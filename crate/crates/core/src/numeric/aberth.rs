//! Aberth–Ehrlich simultaneous root iteration: an `f64` warm start refined
//! in software floats.

use super::mp::{self, Cx, Float};
use num_complex::Complex64;

fn horner_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Roots of a monic polynomial in `f64`, from points on a circle enclosing all roots.
pub fn roots_f64(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let radius = (2.0
        * (0..n)
            .map(|i| c[i].abs().powf(1.0 / (n - i) as f64))
            .fold(0.0f64, f64::max))
    .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, t)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = false;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(c, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        1.0 / d
                    }
                })
                .sum();
            let w = ratio / (1.0 - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[k] -= w;
            if w.norm() > 1e-15 * (1.0 + z[k].norm()) {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

/// Refines approximate roots of the real monic polynomial `c` at `prec` bits.
/// A root stops moving once its residual is within the rounding error of
/// Horner's rule, or its step falls below `2^(4-prec)`. Returns `None` when
/// the iteration does not settle.
pub fn refine(c: &[Float], start: &[Complex64], prec: usize) -> Option<Vec<Cx>> {
    let n = start.len();
    let dc: Vec<Float> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * mp::from_int(i as i64, prec))
        .collect();
    let abs_c: Vec<Float> = c.iter().map(mp::abs).collect();
    let mut z: Vec<Cx> = start
        .iter()
        .map(|w| Cx::new(mp::from_f64(w.re, prec), mp::from_f64(w.im, prec)))
        .collect();
    let tol = mp::pow2(-(prec as isize) + 4, prec);
    let noise = mp::pow2(-(prec as isize), prec) * mp::from_int(4 * n as i64 + 4, prec);
    let one = Cx::real(mp::from_int(1, prec));
    let mut done = vec![false; n];
    for _ in 0..200 {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let p = mp::eval_cx(c, &z[k]);
            if p.abs() <= &noise * mp::eval(&abs_c, &z[k].abs()) {
                done[k] = true;
                continue;
            }
            let dp = mp::eval_cx(&dc, &z[k]);
            let Some(ratio) = p.div(&dp) else { continue };
            let mut sum = Cx::zero(prec);
            for j in (0..n).filter(|&j| j != k) {
                if let Some(inv) = one.div(&z[k].sub(&z[j])) {
                    sum = sum.add(&inv);
                }
            }
            let Some(w) = ratio.div(&one.sub(&ratio.mul(&sum))) else { continue };
            z[k] = z[k].sub(&w);
            if w.abs() / (mp::from_int(1, prec) + z[k].abs()) <= tol {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return Some(z);
        }
    }
    None
}
