//! Irreducible factorization over `Q` by the Zassenhaus scheme: squarefree
//! split, modular factorization, quadratic Hensel lifting, subset recombination.

mod hensel;
mod modp;
mod recombine;
pub mod zpoly;

pub use hensel::hensel_lift_factors;
pub use modp::factor_mod_p;
pub use recombine::{level_for_bound, mignotte_bound, recombine};

use crate::ratpoly::{squarefree_decompose, Poly, PolyError, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;
use zpoly::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("cannot factor a zero or constant polynomial")]
    ZeroOrConstant,
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("prime {prime} divides the leading coefficient or the discriminant")]
    BadPrime { prime: u64 },
    #[error("modular factors are not pairwise coprime")]
    LiftFailure,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Monic factors of an integral polynomial modulo `prime^level`.
///
/// `poly` is the integral polynomial being factored; the product of
/// `factors` is congruent to its monic associate modulo `prime^level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularFactorSet {
    pub prime: u64,
    pub level: u32,
    pub poly: ZPoly,
    pub factors: Vec<ZPoly>,
}

/// `unit * prod(p_i^e_i)` with monic irreducible, pairwise distinct `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleFactorization {
    pub unit: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl IrreducibleFactorization {
    pub fn reconstruct(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

#[derive(Clone, Debug)]
pub struct FactorOptions {
    pub seed: u64,
    pub degree_cap: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { seed: 0x5eed, degree_cap: 64 }
    }
}

/// Factors `f` into monic irreducibles over `Q` with default options.
pub fn factor_over_q(f: &Poly) -> Result<IrreducibleFactorization, FactorError> {
    factor_over_q_with(f, &FactorOptions::default())
}

pub fn factor_over_q_with(
    f: &Poly,
    opts: &FactorOptions,
) -> Result<IrreducibleFactorization, FactorError> {
    let degree = match f.deg() {
        Some(d) if d >= 1 => d,
        _ => return Err(FactorError::ZeroOrConstant),
    };
    if degree > opts.degree_cap {
        return Err(FactorError::DegreeTooLarge { degree, cap: opts.degree_cap });
    }
    let sqf = squarefree_decompose(f)?;
    let mut factors = Vec::new();
    for (part, e) in &sqf.parts {
        for p in factor_squarefree(part, opts.seed)? {
            factors.push((p, *e));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(IrreducibleFactorization { unit: sqf.unit, factors })
}

/// Primitive integral polynomial with positive leading coefficient.
fn primitive_integral(p: &Poly) -> ZPoly {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: ZPoly = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut content = zpoly::content(&z);
    if z.last().is_some_and(Signed::is_negative) {
        content = -content;
    }
    z.iter().map(|c| c / &content).collect()
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Irreducible monic factors of a squarefree polynomial of positive degree.
fn factor_squarefree(part: &Poly, seed: u64) -> Result<Vec<Poly>, FactorError> {
    let n = part.deg().ok_or(FactorError::ZeroOrConstant)?;
    if n == 1 {
        return Ok(vec![part.monic()]);
    }
    let f0 = primitive_integral(part);
    let a = f0[n].clone();
    // F(y) = a^(n-1) f0(y/a) is monic with integer coefficients.
    let big_f: ZPoly = (0..=n)
        .map(|i| {
            if i == n {
                BigInt::one()
            } else {
                &f0[i] * Pow::pow(&a, (n - 1 - i) as u32)
            }
        })
        .collect();

    let mut prime = 3u64;
    let lifted = loop {
        if is_prime(prime) {
            if let Ok(mf) = factor_mod_p(&big_f, prime, seed) {
                if mf.factors.len() == 1 {
                    return Ok(vec![part.monic()]);
                }
                let level = level_for_bound(prime, &mignotte_bound(&big_f));
                match hensel_lift_factors(&mf, level) {
                    Ok(l) => break l,
                    Err(FactorError::LiftFailure) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        prime += 2;
    };

    Ok(recombine(&lifted)
        .into_iter()
        .map(|g| {
            // G(a x), then strip content and normalize.
            let back: ZPoly = g
                .iter()
                .enumerate()
                .map(|(i, c)| c * Pow::pow(&a, i as u32))
                .collect();
            let content = zpoly::content(&back);
            let coeffs = back
                .iter()
                .map(|c| Rational::from_integer(c / &content))
                .collect();
            Poly::from_coeffs(coeffs).monic()
        })
        .collect())
}

/// Rational-root test: true when `f` has no root in `Q`.
pub fn has_no_rational_root(f: &Poly) -> bool {
    let z = primitive_integral(f);
    if z.is_empty() || z[0].is_zero() {
        return z.len() <= 1;
    }
    let divisors = |m: &BigInt| -> Vec<BigInt> {
        let m = m.abs();
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= m {
            if (&m % &d).is_zero() {
                out.push(d.clone());
                out.push(&m / &d);
            }
            d += 1;
        }
        out
    };
    let n = z.len() - 1;
    for num in divisors(&z[0]) {
        for den in divisors(&z[n]) {
            for s in [num.clone(), -num.clone()] {
                let r = Rational::new(s, den.clone());
                if f.eval(&r).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn eisenstein_cubic() {
        let r = factor_over_q(&p(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(r.factors, vec![(p(&[-2, 0, 0, 1]), 1)]);
    }

    #[test]
    fn quartic_minus_one() {
        let r = factor_over_q(&p(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(
            r.factors,
            vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1), (p(&[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn repeated_factor_input() {
        // x (x^3 - 2)^2
        let f = &p(&[0, 1]) * &p(&[-2, 0, 0, 1]).pow(2);
        let r = factor_over_q(&f).unwrap();
        assert_eq!(r.factors, vec![(p(&[0, 1]), 1), (p(&[-2, 0, 0, 1]), 2)]);
        assert_eq!(r.reconstruct(), f);
    }

    #[test]
    fn non_monic_rational_input() {
        // (2x - 1)(3x^2 + 1) / 5
        let f = (&p(&[-1, 2]) * &p(&[1, 0, 3])).scale(&rat(1, 5));
        let r = factor_over_q(&f).unwrap();
        assert_eq!(r.unit, rat(6, 5));
        assert_eq!(
            r.factors,
            vec![
                (Poly::from_coeffs(vec![rat(-1, 2), rat(1, 1)]), 1),
                (Poly::from_coeffs(vec![rat(1, 3), rat(0, 1), rat(1, 1)]), 1)
            ]
        );
        assert_eq!(r.reconstruct(), f);
    }

    #[test]
    fn swinnerton_dyer_like_quartic() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime.
        let f = p(&[1, 0, -10, 0, 1]);
        let r = factor_over_q(&f).unwrap();
        assert_eq!(r.factors, vec![(f, 1)]);
    }

    #[test]
    fn errors() {
        assert_eq!(factor_over_q(&Poly::zero()), Err(FactorError::ZeroOrConstant));
        assert_eq!(factor_over_q(&p(&[3])), Err(FactorError::ZeroOrConstant));
        let big = Poly::monomial(rat(1, 1), 65);
        assert_eq!(
            factor_over_q(&big),
            Err(FactorError::DegreeTooLarge { degree: 65, cap: 64 })
        );
    }

    #[test]
    fn rational_root_oracle() {
        assert!(has_no_rational_root(&p(&[-2, 0, 1])));
        assert!(!has_no_rational_root(&p(&[-1, 2])));
        assert!(!has_no_rational_root(&p(&[-4, 0, 9])));
    }
}
