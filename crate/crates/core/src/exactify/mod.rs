//! From a floating interior Gram pair to an exact rational one: rounding,
//! orthogonal projection onto the Gram space of the target, exact LDLᵀ.

mod ldl;

pub use ldl::{check_positive_definite, Ldl, NotPositiveDefinite};

use crate::numeric::{self, NumericError};
use crate::ratpoly::{norm2_squared, rational_from_f64, sqrt_upper, Poly, PolyError, RatMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExactifyError {
    #[error("polynomial of degree {degree} does not fit a {n}x{n} Gram matrix")]
    DegreeTooHigh { degree: usize, n: usize },
    #[error("matrix is not positive definite (pivot {index})")]
    NotPositiveDefinite { index: usize },
    #[error("g({root}) = {value} is not strictly positive at a real root of f")]
    NotStrictlyPositive { root: f64, value: f64 },
    #[error("no certificate up to {precision_bits} bits (sigma {sigma}, rho {rho})")]
    PrecisionExhausted { precision_bits: usize, sigma: f64, rho: f64 },
    #[error("f must have positive degree")]
    ConstantModulus,
    #[error("certificate identity failed after exact reconstruction")]
    IdentityMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Tunables of the strict certification loop.
#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub precision_bits: usize,
    pub digits_cap: u32,
    pub max_retries: u32,
    pub lambda_factor: Rational,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            precision_bits: 106,
            digits_cap: 64,
            max_retries: 3,
            lambda_factor: Rational::from_integer(2.into()),
            seed: crate::factor::FactorOptions::default().seed,
        }
    }
}

/// Exact Gram representation `g = xᵀQx + q·f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLift {
    pub q: RatMatrix,
    pub quotient: Poly,
    pub f: Poly,
    pub g: Poly,
}

impl GramLift {
    pub fn identity_holds(&self) -> bool {
        self.q.is_symmetric() && &self.q.quadratic_form() + &(&self.quotient * &self.f) == self.g
    }
}

/// `Σ ω_i h_i²`, congruent to some `g` modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SOSDecomposition {
    pub weights: Vec<Rational>,
    pub polys: Vec<Poly>,
    pub modulus: Poly,
}

impl SOSDecomposition {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sum(&self) -> Poly {
        self.weights
            .iter()
            .zip(&self.polys)
            .fold(Poly::zero(), |acc, (w, h)| &acc + &(h * h).scale(w))
    }

    /// Positive weights, reduced degrees, and `Σ ω h² ≡ g (mod modulus)`.
    pub fn is_valid_for(&self, g: &Poly) -> bool {
        let m = self.modulus.deg().unwrap_or(0);
        self.weights.len() == self.polys.len()
            && self.weights.iter().all(Signed::is_positive)
            && self.polys.iter().all(|h| h.deg().is_none_or(|d| d < m))
            && (&self.sum() - g)
                .is_divisible_by(&self.modulus)
                .unwrap_or(false)
    }
}

fn antidiagonal_size(k: usize, n: usize) -> usize {
    k.min(2 * n - 2 - k) + 1
}

/// The Gram matrix of `p` that spreads each coefficient evenly along its antidiagonal.
pub fn gram_of_poly(p: &Poly, n: usize) -> Result<RatMatrix, ExactifyError> {
    if n == 0 {
        return Err(ExactifyError::ConstantModulus);
    }
    if let Some(d) = p.deg() {
        if d > 2 * n - 2 {
            return Err(ExactifyError::DegreeTooHigh { degree: d, n });
        }
    }
    let mut m = RatMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let k = i + j;
            let c = p.coeff(k);
            if !c.is_zero() {
                m[(i, j)] = c / Rational::from_integer(antidiagonal_size(k, n).into());
            }
        }
    }
    Ok(m)
}

/// Orthogonal projection of `qbar` onto `{Q : xᵀQx = target}`.
pub fn project(qbar: &RatMatrix, target: &Poly) -> Result<RatMatrix, ExactifyError> {
    let n = qbar.dim();
    let err = &qbar.quadratic_form() - target;
    Ok(qbar.sub(&gram_of_poly(&err, n)?))
}

/// Rounding radius `0.99(σ − ρ)/(n + (n−1)√n‖f‖)` from conservative bounds.
/// Non-positive when `ρ ≥ σ`.
pub fn delta_bound(f: &Poly, sigma: f64, rho: f64) -> Rational {
    let n = f.deg().unwrap_or(0);
    let gap = rational_from_f64(sigma) - rational_from_f64(rho);
    let nr = Rational::from_integer(n.into());
    let denom = if n <= 1 {
        Rational::one().max(nr.clone())
    } else {
        &nr + Rational::from_integer((n - 1).into()) * sqrt_upper(&nr) * sqrt_upper(&norm2_squared(f))
    };
    Rational::new(99.into(), 100.into()) * gap / denom
}

/// Decimal digits `t = ⌈log₁₀(1/δ)⌉`, clamped to `[1, cap]`.
pub fn digits(delta: &Rational, cap: u32) -> u32 {
    let cap = cap.max(1);
    if !delta.is_positive() {
        return cap;
    }
    let mut t = 0u32;
    let mut scaled = delta.clone();
    let ten = Rational::from_integer(10.into());
    while scaled < Rational::one() && t < cap {
        scaled *= &ten;
        t += 1;
    }
    t.clamp(1, cap)
}

/// Nearest multiple of `10^-t`.
pub fn round_rational(r: &Rational, t: u32) -> Rational {
    let scale = Rational::from_integer(Pow::pow(BigInt::from(10), t));
    (r * &scale).round() / scale
}

/// Rounds the lower triangle and mirrors it.
pub fn round_matrix(m: &[Vec<Rational>], t: u32) -> RatMatrix {
    let n = m.len();
    let mut out = RatMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let v = round_rational(&m[i][j], t);
            out[(j, i)] = v.clone();
            out[(i, j)] = v;
        }
    }
    out
}

pub fn round_poly(p: &Poly, t: u32) -> Poly {
    Poly::from_coeffs(p.coeffs().iter().map(|c| round_rational(c, t)).collect())
}

/// Projects a rounded pair `(Q̄, q)` onto the exact identity for `g mod f`.
/// The returned lift is stated against `g` itself.
pub fn lift_from_rounded(
    f: &Poly,
    g: &Poly,
    qbar: &RatMatrix,
    quotient: &Poly,
) -> Result<GramLift, ExactifyError> {
    let (quo, g_red) = g.div_rem(f)?;
    let target = &g_red - &(quotient * f);
    let q = project(qbar, &target)?;
    Ok(GramLift {
        q,
        quotient: quotient + &quo,
        f: f.clone(),
        g: g.clone(),
    })
}

/// Weighted squares read off `Q = LDLᵀ`: `ω = diag(D)`, `h_i` = column `i` of `L`.
pub fn gram_to_sos(lift: &GramLift) -> Result<SOSDecomposition, ExactifyError> {
    let ldl = check_positive_definite(&lift.q)
        .map_err(|e| ExactifyError::NotPositiveDefinite { index: e.index })?;
    Ok(ldl_to_sos(&ldl, &lift.f))
}

fn ldl_to_sos(ldl: &Ldl, modulus: &Poly) -> SOSDecomposition {
    let n = ldl.d.len();
    let polys = (0..n)
        .map(|i| Poly::from_coeffs((0..n).map(|r| ldl.l[(r, i)].clone()).collect()))
        .collect();
    SOSDecomposition {
        weights: ldl.d.clone(),
        polys,
        modulus: modulus.clone(),
    }
}

/// Exact SOS certificate of `g` modulo the squarefree `f`, assuming `g > 0`
/// at every real root of `f`.
pub fn certify_strict_squarefree(
    f: &Poly,
    g: &Poly,
    opts: &CertifyOptions,
) -> Result<(GramLift, SOSDecomposition), ExactifyError> {
    if f.deg().unwrap_or(0) == 0 {
        return Err(ExactifyError::ConstantModulus);
    }
    let g_red = g.rem(f)?;
    let mut prec = opts.precision_bits;
    let (mut sigma, mut rho) = (f64::NAN, f64::NAN);
    for attempt in 0..=opts.max_retries {
        let last = attempt == opts.max_retries;
        let stage = numeric::find_roots(f, prec)
            .and_then(|r| numeric::build_interior_gram(f, &g_red, &r, &opts.lambda_factor));
        let gram = match stage {
            Ok(gram) => gram,
            Err(NumericError::NotStrictlyPositive { root, value, ambiguous }) if !ambiguous || last => {
                return Err(ExactifyError::NotStrictlyPositive { root, value });
            }
            Err(NumericError::NotDefinite { sigma: s }) => {
                sigma = s;
                prec *= 2;
                continue;
            }
            Err(NumericError::Poly(e)) => return Err(e.into()),
            Err(_) => {
                prec *= 2;
                continue;
            }
        };
        prec = gram.precision_bits;
        sigma = gram.sigma;
        rho = gram.rho;
        let delta = delta_bound(f, sigma, rho);
        if delta.is_positive() {
            let t = digits(&delta, opts.digits_cap);
            let q_star = gram.q_star_rational();
            let quotient = gram.quotient_poly();
            for digits in [t, (t + 2).min(opts.digits_cap)] {
                let qbar = round_matrix(&q_star, digits);
                let qq = round_poly(&quotient, digits);
                let lift = lift_from_rounded(f, g, &qbar, &qq)?;
                if let Ok(ldl) = check_positive_definite(&lift.q) {
                    let sos = ldl_to_sos(&ldl, f);
                    if !lift.identity_holds() || !sos.is_valid_for(g) {
                        return Err(ExactifyError::IdentityMismatch);
                    }
                    return Ok((lift, sos));
                }
            }
        }
        prec *= 2;
    }
    Err(ExactifyError::PrecisionExhausted {
        precision_bits: prec / 2,
        sigma,
        rho,
    })
}
