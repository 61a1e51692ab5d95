//! Floating-point stage: roots of `f`, the Lagrange basis over them, and an
//! interior Gram pair `(Q*, q*)` with `g ≈ xᵀQ*x + q*·f` and `Q*` positive definite.

mod aberth;
mod jacobi;
pub mod mp;

pub use mp::{Cx, Float};

use crate::ratpoly::{norm2_squared, sqrt_upper, sturm_real_root_count, Poly, PolyError, Rational};
use num_traits::Zero;
use thiserror::Error;

/// Precision beyond which root classification is abandoned.
pub const PRECISION_CAP: usize = 848;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("real/complex root classification did not match the Sturm count up to {precision_bits} bits")]
    RootClassificationUnstable { precision_bits: usize },
    #[error("roots too clustered for the Lagrange basis at {precision_bits} bits")]
    IllConditioned { precision_bits: usize },
    #[error("g({root}) = {value} is not strictly positive at a real root")]
    NotStrictlyPositive {
        root: f64,
        value: f64,
        /// the value is within the working-precision noise floor
        ambiguous: bool,
    },
    #[error("interior Gram matrix is not definite (smallest eigenvalue estimate {sigma})")]
    NotDefinite { sigma: f64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Approximate roots of a squarefree polynomial: real roots ascending, and one
/// representative with positive imaginary part per conjugate pair.
#[derive(Clone, Debug)]
pub struct RootProfile {
    pub real_roots: Vec<Float>,
    pub complex_pairs: Vec<Cx>,
    pub precision_bits: usize,
}

impl RootProfile {
    /// All roots in basis order: reals, then each pair as `(ξ, conj ξ)`.
    pub fn all(&self) -> Vec<Cx> {
        let mut out: Vec<Cx> = self.real_roots.iter().cloned().map(Cx::real).collect();
        for z in &self.complex_pairs {
            out.push(z.clone());
            out.push(z.conj());
        }
        out
    }

    pub fn real_roots_f64(&self) -> Vec<f64> {
        self.real_roots.iter().map(mp::to_f64).collect()
    }
}

/// Interior point of the Gram spectrahedron, as floats.
#[derive(Clone, Debug)]
pub struct InteriorGram {
    pub q_star: Vec<Vec<Float>>,
    pub quotient: Vec<Float>,
    pub sigma: f64,
    pub rho: f64,
    pub precision_bits: usize,
}

impl InteriorGram {
    pub fn q_star_rational(&self) -> Vec<Vec<Rational>> {
        self.q_star
            .iter()
            .map(|r| r.iter().map(mp::to_rational).collect())
            .collect()
    }

    pub fn quotient_poly(&self) -> Poly {
        Poly::from_coeffs(self.quotient.iter().map(mp::to_rational).collect())
    }
}

fn float_coeffs(p: &Poly, prec: usize) -> Vec<Float> {
    p.coeffs().iter().map(|c| mp::from_rational(c, prec)).collect()
}

fn roots_once(f: &Poly, prec: usize, real_count: usize) -> Option<RootProfile> {
    let monic = f.monic();
    let n = monic.deg()?;
    let c64: Vec<f64> = monic
        .coeffs()
        .iter()
        .map(|c| num_traits::ToPrimitive::to_f64(c).unwrap_or(0.0))
        .collect();
    let start = aberth::roots_f64(&c64);
    let work = prec + 32;
    let roots = aberth::refine(&float_coeffs(&monic, work), &start, work)?;

    let eps = mp::pow2(-(prec as isize) / 2, work);
    let one = mp::from_int(1, work);
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = 0usize;
    for z in roots {
        if mp::abs(&z.im) < &eps * (&one + mp::abs(&z.re)) {
            real.push(z.re.with_precision(prec).value());
        } else if mp::is_negative(&z.im) {
            lower += 1;
        } else {
            upper.push(Cx::new(
                z.re.with_precision(prec).value(),
                z.im.with_precision(prec).value(),
            ));
        }
    }
    if real.len() != real_count || upper.len() != lower || real.len() + 2 * lower != n {
        return None;
    }
    real.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    upper.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .expect("finite")
            .then(a.im.partial_cmp(&b.im).expect("finite"))
    });
    Some(RootProfile { real_roots: real, complex_pairs: upper, precision_bits: prec })
}

/// Approximates all roots of the squarefree `f`, doubling the precision
/// (up to [`PRECISION_CAP`]) until the real/complex split agrees with Sturm.
pub fn find_roots(f: &Poly, precision_bits: usize) -> Result<RootProfile, NumericError> {
    let real_count = sturm_real_root_count(f)?;
    if f.deg().unwrap_or(0) == 0 {
        return Err(PolyError::ZeroPolynomial.into());
    }
    let mut prec = precision_bits.max(53);
    loop {
        if let Some(r) = roots_once(f, prec, real_count) {
            return Ok(r);
        }
        if prec >= PRECISION_CAP {
            return Err(NumericError::RootClassificationUnstable { precision_bits: prec });
        }
        prec = (prec * 2).min(PRECISION_CAP);
    }
}

/// Complex polynomial, ascending coefficients.
pub type CPoly = Vec<Cx>;

/// `u_i = f / (f'(ξ_i)(x − ξ_i))` for every root, in [`RootProfile::all`] order.
pub fn lagrange_basis(f: &Poly, roots: &RootProfile) -> Result<Vec<CPoly>, NumericError> {
    let prec = roots.precision_bits;
    let ill = NumericError::IllConditioned { precision_bits: prec };
    let fc = float_coeffs(f, prec);
    let dfc = float_coeffs(&f.derivative(), prec);
    let n = fc.len() - 1;

    let basis_at = |xi: &Cx| -> Option<CPoly> {
        let scale = mp::eval_cx(&dfc, xi);
        let mut quot = vec![Cx::zero(prec); n];
        let mut acc = Cx::real(fc[n].clone());
        for k in (0..n).rev() {
            quot[k] = acc.clone();
            acc = acc.mul(xi).add(&Cx::real(fc[k].clone()));
        }
        quot.iter().map(|c| c.div(&scale)).collect()
    };

    let mut out = Vec::with_capacity(n);
    for xi in &roots.real_roots {
        let u = basis_at(&Cx::real(xi.clone())).ok_or_else(|| ill.clone())?;
        // real roots give real polynomials; drop the rounding noise
        out.push(u.into_iter().map(|c| Cx::real(c.re)).collect());
    }
    for xi in &roots.complex_pairs {
        let u = basis_at(xi).ok_or_else(|| ill.clone())?;
        let conj: CPoly = u.iter().map(Cx::conj).collect();
        out.push(u);
        out.push(conj);
    }

    let tol = mp::pow2(-(prec as isize) / 4, prec);
    let one = Cx::real(mp::from_int(1, prec));
    let all = roots.all();
    for (i, u) in out.iter().enumerate() {
        for (j, xj) in all.iter().enumerate() {
            let v = mp::eval_cpoly(u, xj);
            let err = if i == j { v.sub(&one) } else { v };
            if err.abs() > tol {
                return Err(ill);
            }
        }
    }
    Ok(out)
}

/// Sign threshold at `prec` bits, relative to `scale`.
fn noise_floor(prec: usize, scale: &Float) -> Float {
    let one = mp::from_int(1, prec);
    let s = if *scale > one { scale.clone() } else { one };
    mp::pow2(-(prec as isize) / 2, prec) * s
}

/// Builds `Q* = HΔHᵀ` from the weighted squares `h_i` whose sum is
/// congruent to `g` modulo `f`, and `q*` from the division remainder.
///
/// `g` must already be reduced modulo `f`. `lambda_factor` scales the
/// coupling `λ_i = lambda_factor·|g(ξ)|` of each conjugate pair; values
/// above 1 give a definite `Q*`, exactly 1 collapses one square per pair.
pub fn build_interior_gram(
    f: &Poly,
    g: &Poly,
    roots: &RootProfile,
    lambda_factor: &Rational,
) -> Result<InteriorGram, NumericError> {
    let prec = roots.precision_bits;
    let n = f.deg().ok_or(PolyError::ZeroPolynomial)?;
    let basis = lagrange_basis(f, roots)?;
    let gc = float_coeffs(g, prec);
    let g_scale = mp::max_abs(&gc, prec);
    let thr = noise_floor(prec, &g_scale);
    let lf = mp::from_rational(lambda_factor, prec);
    let two = mp::from_int(2, prec);

    let mut hs: Vec<Vec<Float>> = Vec::with_capacity(n);
    let mut ws: Vec<Float> = Vec::with_capacity(n);
    let k = roots.real_roots.len();
    for (i, xi) in roots.real_roots.iter().enumerate() {
        let gamma = mp::eval(&gc, xi);
        if gamma <= thr {
            return Err(NumericError::NotStrictlyPositive {
                root: mp::to_f64(xi),
                value: mp::to_f64(&gamma),
                ambiguous: mp::abs(&gamma) <= thr,
            });
        }
        hs.push(basis[i].iter().map(|c| c.re.clone()).collect());
        ws.push(gamma);
    }
    for (p, xi) in roots.complex_pairs.iter().enumerate() {
        let u = &basis[k + 2 * p];
        let gamma = mp::eval_cx(&gc, xi);
        let modulus = gamma.abs();
        let lambda = if modulus <= thr { lf.clone() } else { &lf * &modulus };
        let denom = &lambda + &gamma.re;
        let rad = &lambda * &lambda - gamma.norm_sqr();
        let rad = if mp::is_negative(&rad) { mp::zero(prec) } else { rad };
        let c1 = &gamma.im / &denom;
        let c2 = mp::sqrt(&rad) / &denom;
        hs.push(u.iter().map(|c| &c.re - &c1 * &c.im).collect());
        hs.push(u.iter().map(|c| &c2 * &c.im).collect());
        let w = &two * &denom;
        ws.push(w.clone());
        ws.push(w);
    }

    let mut q = vec![vec![mp::zero(prec); n]; n];
    for (h, w) in hs.iter().zip(&ws) {
        for r in 0..n {
            let wr = w * &h[r];
            for c in 0..=r {
                q[r][c] += &wr * &h[c];
            }
        }
    }
    for r in 0..n {
        for c in 0..r {
            q[c][r] = q[r][c].clone();
        }
    }

    // q* = quotient of (g − xᵀQ*x) by f
    let mut rem: Vec<Float> = vec![mp::zero(prec); 2 * n - 1];
    for (i, c) in gc.iter().enumerate() {
        rem[i] += c;
    }
    for r in 0..n {
        for c in 0..n {
            rem[r + c] -= &q[r][c];
        }
    }
    let fc = float_coeffs(f, prec);
    let mut quotient = vec![mp::zero(prec); n.saturating_sub(1)];
    for d in (0..n.saturating_sub(1)).rev() {
        let t = &rem[d + n] / &fc[n];
        for (j, fj) in fc.iter().enumerate() {
            rem[d + j] -= &t * fj;
        }
        quotient[d] = t;
    }

    let sigma = jacobi::smallest_eigenvalue_lower(&q, prec);
    let mut frob = mp::zero(prec);
    for row in &q {
        for x in row {
            frob += x * x;
        }
    }
    let definite_floor = noise_floor(prec, &mp::sqrt(&frob));
    let sigma_f = mp::to_f64(&sigma);
    let sigma_f = sigma_f - sigma_f.abs() * f64::EPSILON;
    if sigma <= definite_floor {
        return Err(NumericError::NotDefinite { sigma: sigma_f });
    }

    let gram = InteriorGram {
        q_star: q,
        quotient,
        sigma: sigma_f,
        rho: 0.0,
        precision_bits: prec,
    };
    let rho = residual_norm_upper(&gram, f, g);
    Ok(InteriorGram { rho, ..gram })
}

/// Upper bound, as `f64`, on `‖xᵀQ*x + q*·f − g‖₂` evaluated exactly.
pub fn residual_norm_upper(gram: &InteriorGram, f: &Poly, g: &Poly) -> f64 {
    let q = gram.q_star_rational();
    let n = q.len();
    let mut coeffs = vec![Rational::zero(); 2 * n.max(1) - 1];
    for (r, row) in q.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            coeffs[r + c] += x;
        }
    }
    let res = &(&Poly::from_coeffs(coeffs) + &(&gram.quotient_poly() * f)) - g;
    mp::rational_to_f64_up(&sqrt_upper(&norm2_squared(&res)))
}
