use super::{Poly, PolyError};
use num_traits::Zero;

/// Monic greatest common divisor.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1)?;
        r0 = r1;
        // Keeping the remainders monic bounds coefficient growth.
        r1 = r.monic();
    }
    Ok(r0.monic())
}

/// Returns `(g, s, t)` with `g` the monic gcd and `s*a + t*b = g`.
///
/// The cofactors are the canonical minimal-degree pair:
/// `deg s < deg b - deg g` and `deg t < deg a - deg g`.
pub fn extended_gcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly), PolyError> {
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::BothZero);
    }
    if b.is_zero() {
        let inv = a.leading_coeff().expect("nonzero").recip();
        return Ok((a.scale(&inv), Poly::constant(inv), Poly::zero()));
    }

    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = r0.leading_coeff().expect("nonzero gcd").recip();
    let g = r0.scale(&inv);
    let s = s0.scale(&inv);

    // Reduce s modulo b/g; t then follows from the identity.
    let b_red = b.exact_div(&g)?.expect("gcd divides b");
    let s = if b_red.is_constant() {
        Poly::zero()
    } else {
        s.rem(&b_red)?
    };
    let t = (&g - &(&s * a))
        .exact_div(b)?
        .expect("Bezout identity leaves an exact quotient");
    debug_assert!((&(&s * a) + &(&t * b) - &g).coeffs().iter().all(Zero::is_zero));
    Ok((g, s, t))
}
