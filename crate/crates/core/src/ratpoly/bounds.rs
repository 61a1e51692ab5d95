use super::{Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Squared coefficient 2-norm `sum p_i^2`, exact.
pub fn norm2_squared(p: &Poly) -> Rational {
    p.coeffs().iter().map(|c| c * c).sum()
}

/// Exact value of a finite float. Non-finite input is a caller bug.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

// Binary digits of scaling so that the integer square root keeps roughly
// 64 significant bits even for very small arguments.
fn scale_bits(r: &Rational) -> u64 {
    let num = r.numer().bits();
    let den = r.denom().bits();
    64 + den.saturating_sub(num) / 2 + 1
}

/// Rational `u` with `u >= sqrt(r)`. Panics on negative input.
pub fn sqrt_upper(r: &Rational) -> Rational {
    assert!(!r.is_negative(), "square root of a negative rational");
    if r.is_zero() {
        return Rational::zero();
    }
    let k = scale_bits(r);
    let scale = BigInt::one() << (2 * k);
    let scaled = r * Rational::from_integer(scale);
    let n = scaled.ceil().to_integer();
    let mut s = n.sqrt();
    if &s * &s < n {
        s += 1;
    }
    Rational::new(s, BigInt::one() << k)
}

/// Rational `l` with `0 <= l <= sqrt(r)`.
pub fn sqrt_lower(r: &Rational) -> Rational {
    assert!(!r.is_negative(), "square root of a negative rational");
    if r.is_zero() {
        return Rational::zero();
    }
    let k = scale_bits(r);
    let scale = BigInt::one() << (2 * k);
    let n = (r * Rational::from_integer(scale)).floor().to_integer();
    Rational::new(n.sqrt(), BigInt::one() << k)
}
