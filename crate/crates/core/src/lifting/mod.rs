//! Non-negative case: reduction to strictly positive targets, Hensel lifting
//! of one square to prime powers, and CRT recombination across factors.

use crate::certificate::{verify, Certificate};
use crate::exactify::{certify_strict_squarefree, CertifyOptions, ExactifyError, SOSDecomposition};
use crate::factor::{factor_over_q_with, FactorError, FactorOptions};
use crate::ratpoly::{extended_gcd, gcd, Poly, PolyError, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifyError {
    #[error("gcd(f, g) and f/gcd(f, g) are not coprime; no certificate exists")]
    HypothesisViolated { d: Poly, cofactor: Poly },
    #[error("g = 0 has only the empty certificate")]
    ZeroG,
    #[error("f must have positive degree")]
    ConstantModulus,
    #[error("no square in the decomposition is invertible modulo the factor")]
    NoInvertibleSquare,
    #[error("modulus is not irreducible")]
    NotIrreducible,
    #[error("moduli are not pairwise coprime")]
    NotCoprime,
    #[error("decomposition is not congruent to the target")]
    InconsistentInput,
    #[error("g is negative at a real root of {factor}: g({root}) = {value}")]
    NotNonnegative { factor: Poly, root: f64, value: f64 },
    #[error("precision exhausted at {precision_bits} bits (sigma {sigma}, rho {rho})")]
    PrecisionExhausted { precision_bits: usize, sigma: f64, rho: f64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `b·d² ≡ g (mod f)` with `d = gcd(f, g)` and `b` positive at the real roots of `f/d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictReduction {
    pub d: Poly,
    pub cofactor: Poly,
    pub b: Poly,
}

fn coprime(a: &Poly, b: &Poly) -> Result<bool, PolyError> {
    Ok(gcd(a, b)?.is_one())
}

/// Newton iterates for a square root of `gbar` modulo `p^e`, starting from
/// `h0` with `h0² ≡ gbar (mod p)`. Entry `k` is the root modulo `p^(2^k)`.
pub fn hensel_iterates(h0: &Poly, gbar: &Poly, p: &Poly, e: u32) -> Result<Vec<Poly>, CertifyError> {
    if !coprime(h0, p)? {
        return Err(CertifyError::NoInvertibleSquare);
    }
    if !(&(h0 * h0) - gbar).is_divisible_by(p)? {
        return Err(CertifyError::InconsistentInput);
    }
    let half = Rational::new(1.into(), 2.into());
    let mut h = h0.rem(p)?;
    let mut out = vec![h.clone()];
    let mut exp = 1u32;
    while exp < e {
        exp *= 2;
        let m = p.pow(exp);
        let (one, s, _) = extended_gcd(&h, &m)?;
        if !one.is_one() {
            return Err(CertifyError::NotIrreducible);
        }
        h = (&h + &(&s * gbar)).scale(&half).rem(&m)?;
        assert!(
            (&(&h * &h) - gbar).is_divisible_by(&m)?,
            "Newton step lost the square-root congruence"
        );
        out.push(h.clone());
    }
    Ok(out)
}

/// Lifts `sos` (valid for `g` modulo the irreducible `p`) to modulus `p^e`
/// by replacing the square at `index` with its Newton lift.
pub fn hensel_lift_sos_at(
    sos: &SOSDecomposition,
    p: &Poly,
    e: u32,
    g: &Poly,
    index: usize,
) -> Result<SOSDecomposition, CertifyError> {
    let m = p.pow(e.max(1));
    let mut rest = g.clone();
    for (i, (w, h)) in sos.weights.iter().zip(&sos.polys).enumerate() {
        if i != index {
            rest = &rest - &(h * h).scale(w);
        }
    }
    let gbar = rest.scale(&sos.weights[index].recip()).rem(&m)?;
    let iterates = hensel_iterates(&sos.polys[index], &gbar, p, e.max(1))?;
    let lifted = iterates.last().expect("at least the start").rem(&m)?;
    let mut polys = sos.polys.clone();
    polys[index] = lifted;
    Ok(SOSDecomposition {
        weights: sos.weights.clone(),
        polys,
        modulus: m,
    })
}

/// [`hensel_lift_sos_at`] on the last square that is invertible modulo `p`.
pub fn hensel_lift_sos(
    sos: &SOSDecomposition,
    p: &Poly,
    e: u32,
    g: &Poly,
) -> Result<SOSDecomposition, CertifyError> {
    let mut index = None;
    for (i, h) in sos.polys.iter().enumerate().rev() {
        if !h.is_zero() && coprime(h, p)? {
            index = Some(i);
            break;
        }
    }
    let index = index.ok_or(CertifyError::NoInvertibleSquare)?;
    hensel_lift_sos_at(sos, p, e, g, index)
}

/// Merges decompositions modulo pairwise coprime `f_i` into one modulo `Π f_i`,
/// mapping each `h` to `s_i f⁽ⁱ⁾ h mod Π f_j` with `s_i f⁽ⁱ⁾ ≡ 1 (mod f_i)`.
pub fn crt_combine_sos(
    parts: &[(Poly, SOSDecomposition)],
    g: &Poly,
) -> Result<SOSDecomposition, CertifyError> {
    let modulus = parts.iter().fold(Poly::one(), |acc, (fi, _)| &acc * fi);
    let mut weights = Vec::new();
    let mut polys = Vec::new();
    for (fi, sos) in parts {
        let others = modulus.exact_div(fi)?.expect("factor of the product");
        let (one, s, _) = extended_gcd(&others, fi)?;
        if !one.is_one() {
            return Err(CertifyError::NotCoprime);
        }
        let idem = (&s * &others).rem(&modulus)?;
        for (w, h) in sos.weights.iter().zip(&sos.polys) {
            weights.push(w.clone());
            polys.push((&idem * h).rem(&modulus)?);
        }
    }
    let out = SOSDecomposition { weights, polys, modulus };
    if !out.is_valid_for(g) {
        return Err(CertifyError::InconsistentInput);
    }
    Ok(out)
}

/// Checks the coprimality hypothesis and builds `b` from the Bézout relation
/// `1 = s·(f/d) + t·d²`.
pub fn reduce_nonneg_to_strict(f: &Poly, g: &Poly) -> Result<StrictReduction, CertifyError> {
    if g.is_zero() {
        return Err(CertifyError::ZeroG);
    }
    let d = gcd(f, g)?;
    let cofactor = f.exact_div(&d)?.expect("gcd divides f");
    if !coprime(&d, &cofactor)? {
        return Err(CertifyError::HypothesisViolated { d, cofactor });
    }
    let d2 = &d * &d;
    let (_, _, t) = extended_gcd(&cofactor, &d2)?;
    let b = (&t * g).rem(&cofactor)?;
    if !(&(&b * &d2) - g).is_divisible_by(f)? {
        return Err(CertifyError::Internal("b·d² − g is not divisible by f".into()));
    }
    Ok(StrictReduction { d, cofactor, b })
}

fn strict_error(e: ExactifyError, factor: &Poly, g: &Poly) -> CertifyError {
    match e {
        ExactifyError::NotStrictlyPositive { root, .. } => CertifyError::NotNonnegative {
            factor: factor.clone(),
            root,
            value: g.eval_f64(root),
        },
        ExactifyError::PrecisionExhausted { precision_bits, sigma, rho } => {
            CertifyError::PrecisionExhausted { precision_bits, sigma, rho }
        }
        ExactifyError::Poly(e) => CertifyError::Poly(e),
        other => CertifyError::Internal(other.to_string()),
    }
}

fn certify_factor(
    p: &Poly,
    e: u32,
    b: &Poly,
    g: &Poly,
    opts: &CertifyOptions,
) -> Result<(Poly, SOSDecomposition), CertifyError> {
    let bi = b.rem(p)?;
    let (_, sos) = certify_strict_squarefree(p, &bi, opts).map_err(|err| strict_error(err, p, g))?;
    let lifted = if e > 1 { hensel_lift_sos(&sos, p, e, b)? } else { sos };
    Ok((p.pow(e), lifted))
}

/// Certificate that `g ≥ 0` at every real root of `f`, or the reason none exists.
pub fn certify_nonnegative(f: &Poly, g: &Poly, opts: &CertifyOptions) -> Result<Certificate, CertifyError> {
    if f.deg().unwrap_or(0) == 0 {
        return Err(CertifyError::ConstantModulus);
    }
    if g.is_zero() {
        return Ok(Certificate::empty(f));
    }
    let red = reduce_nonneg_to_strict(f, g)?;
    if red.cofactor.is_constant() {
        let q = g.exact_div(f)?.ok_or_else(|| CertifyError::Internal("f does not divide g".into()))?;
        return Ok(Certificate { q, ..Certificate { g: g.clone(), ..Certificate::empty(f) } });
    }

    let factor_opts = FactorOptions { seed: opts.seed, ..FactorOptions::default() };
    let fact = factor_over_q_with(&red.cofactor, &factor_opts)?;
    let work = |(p, e): &(Poly, u32)| certify_factor(p, *e, &red.b, g, opts);

    #[cfg(feature = "parallel")]
    let parts: Result<Vec<_>, _> = {
        use rayon::prelude::*;
        fact.factors.par_iter().map(work).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Result<Vec<_>, _> = fact.factors.iter().map(work).collect();

    let combined = crt_combine_sos(&parts?, &red.b)?;
    let polys: Vec<Poly> = combined.polys.iter().map(|h| &red.d * h).collect();
    let mut cert = Certificate {
        f: f.clone(),
        g: g.clone(),
        weights: combined.weights,
        polys,
        q: Poly::zero(),
    };
    cert.q = (g - &cert.sum_of_squares())
        .exact_div(f)?
        .ok_or_else(|| CertifyError::Internal("sum of squares is not congruent to g".into()))?;
    if !verify(&cert).is_valid() {
        return Err(CertifyError::Internal("assembled certificate fails verification".into()));
    }
    Ok(cert)
}
