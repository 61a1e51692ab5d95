//! Quadratic Hensel lifting of a modular factorization along a balanced factor tree.

use super::modp::Fp;
use super::zpoly::{self, ZPoly};
use super::{FactorError, ModularFactorSet};
use num_bigint::BigInt;
use num_traits::{One, Pow};

/// One quadratic step: from `f = g*h`, `s*g + t*h = 1` (mod m) to the same
/// congruences mod `m2 = m^2`. `h` must be monic with `deg s < deg h` and
/// `deg t < deg g`.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m2: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let e = zpoly::reduce(&zpoly::sub(f, &zpoly::mul(g, h)), m2);
    let (q, r) = zpoly::divrem_monic(&zpoly::mul(s, &e), h, Some(m2));
    let g2 = zpoly::reduce(
        &zpoly::add(&zpoly::add(g, &zpoly::mul(t, &e)), &zpoly::mul(&q, g)),
        m2,
    );
    let h2 = zpoly::reduce(&zpoly::add(h, &r), m2);

    let b = zpoly::reduce(
        &zpoly::sub(
            &zpoly::add(&zpoly::mul(s, &g2), &zpoly::mul(t, &h2)),
            &[BigInt::one()],
        ),
        m2,
    );
    let (c, d) = zpoly::divrem_monic(&zpoly::mul(s, &b), &h2, Some(m2));
    let s2 = zpoly::reduce(&zpoly::sub(s, &d), m2);
    let t2 = zpoly::reduce(
        &zpoly::sub(&zpoly::sub(t, &zpoly::mul(t, &b)), &zpoly::mul(&c, &g2)),
        m2,
    );
    (g2, h2, s2, t2)
}

fn lift_tree(
    f: &[BigInt],
    factors: &[ZPoly],
    fp: Fp,
    level: u32,
) -> Result<Vec<ZPoly>, FactorError> {
    let p = BigInt::from(fp.p);
    let target = Pow::pow(&p, level);
    if factors.len() == 1 {
        return Ok(vec![zpoly::reduce(f, &target)]);
    }
    let mid = factors.len() / 2;
    let prod = |fs: &[ZPoly]| {
        fs.iter()
            .fold(vec![1u64], |acc, g| fp.mul(&acc, &fp.from_z(g)))
    };
    let (g0, h0) = (prod(&factors[..mid]), prod(&factors[mid..]));
    let (one, s0, t0) = fp.ext_gcd(&g0, &h0);
    if one != vec![1] {
        return Err(FactorError::LiftFailure);
    }
    let (mut g, mut h) = (fp.to_z(&g0), fp.to_z(&h0));
    let (mut s, mut t) = (fp.to_z(&s0), fp.to_z(&t0));
    let mut k = 1u32;
    let mut m = p.clone();
    while k < level {
        let m2 = &m * &m;
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m2);
        m = m2;
        k *= 2;
    }
    let g = zpoly::reduce(&g, &target);
    let h = zpoly::reduce(&h, &target);
    let mut out = lift_tree(&g, &factors[..mid], fp, level)?;
    out.extend(lift_tree(&h, &factors[mid..], fp, level)?);
    Ok(out)
}

/// Lifts a monic modular factorization to `prime^target_level`.
///
/// The set's polynomial must be monic over `Z` and its factors pairwise
/// coprime modulo the prime; a violation surfaces as `LiftFailure`, which the
/// caller treats like a bad prime.
pub fn hensel_lift_factors(
    mf: &ModularFactorSet,
    target_level: u32,
) -> Result<ModularFactorSet, FactorError> {
    if !mf.poly.last().is_some_and(One::is_one) || mf.factors.is_empty() {
        return Err(FactorError::LiftFailure);
    }
    let fp = Fp::new(mf.prime);
    let level = target_level.max(1);
    let factors = lift_tree(&mf.poly, &mf.factors, fp, level)?;
    Ok(ModularFactorSet {
        prime: mf.prime,
        level,
        poly: mf.poly.clone(),
        factors,
    })
}
