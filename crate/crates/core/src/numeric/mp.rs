//! Software floating point at a chosen binary precision, and complex numbers over it.

use crate::ratpoly::Rational;
use dashu_float::ops::{Abs, SquareRoot};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, Sign as DSign, UBig};
use num_bigint::{BigInt, Sign};

pub type Float = FBig<HalfEven, 2>;

fn ibig_from(b: &BigInt) -> IBig {
    let (sign, bytes) = b.to_bytes_le();
    let mag = UBig::from_le_bytes(&bytes);
    match sign {
        Sign::Minus => IBig::from_parts(DSign::Negative, mag),
        _ => IBig::from(mag),
    }
}

fn bigint_from(i: &IBig) -> BigInt {
    let (sign, mag) = i.clone().into_parts();
    let v = BigInt::from_bytes_le(Sign::Plus, &mag.to_le_bytes());
    match sign {
        DSign::Negative => -v,
        DSign::Positive => v,
    }
}

pub fn zero(prec: usize) -> Float {
    Float::ZERO.with_precision(prec).value()
}

pub fn from_int(n: i64, prec: usize) -> Float {
    Float::from(IBig::from(n)).with_precision(prec).value()
}

/// Nearest float to `r` at `prec` bits.
pub fn from_rational(r: &Rational, prec: usize) -> Float {
    let num = Float::from(ibig_from(r.numer())).with_precision(prec + 8).value();
    let den = Float::from(ibig_from(r.denom())).with_precision(prec + 8).value();
    (num / den).with_precision(prec).value()
}

/// Exact value of a float as a (dyadic) rational.
pub fn to_rational(x: &Float) -> Rational {
    let repr = x.repr();
    let sig = bigint_from(repr.significand());
    let e = repr.exponent();
    if e >= 0 {
        Rational::from_integer(sig << (e as usize))
    } else {
        Rational::new(sig, BigInt::from(1) << ((-e) as usize))
    }
}

pub fn from_f64(x: f64, prec: usize) -> Float {
    Float::try_from(x).expect("finite").with_precision(prec).value()
}

pub fn to_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

/// Smallest `f64` that is at least `r`.
pub fn rational_to_f64_up(r: &Rational) -> f64 {
    let f = num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::INFINITY);
    match Rational::from_float(f) {
        Some(back) if back < *r => f.next_up(),
        _ => f,
    }
}

pub fn abs(x: &Float) -> Float {
    x.clone().abs()
}

pub fn sqrt(x: &Float) -> Float {
    x.sqrt()
}

pub fn is_negative(x: &Float) -> bool {
    x.repr().significand().sign() == DSign::Negative
}

pub fn is_zero(x: &Float) -> bool {
    *x.repr().significand() == IBig::ZERO
}

/// `2^k` at `prec` bits.
pub fn pow2(k: isize, prec: usize) -> Float {
    Float::from_parts(IBig::from(1), k).with_precision(prec).value()
}

/// Horner evaluation of a real polynomial at a real point.
pub fn eval(coeffs: &[Float], x: &Float) -> Float {
    let prec = x.precision();
    coeffs.iter().rev().fold(zero(prec), |acc, c| acc * x + c)
}

pub fn max_abs(v: &[Float], prec: usize) -> Float {
    v.iter().map(abs).fold(zero(prec), |m, a| if a > m { a } else { m })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl Cx {
    pub fn new(re: Float, im: Float) -> Self {
        Cx { re, im }
    }

    pub fn real(re: Float) -> Self {
        let prec = re.precision();
        Cx { re, im: zero(prec) }
    }

    pub fn zero(prec: usize) -> Self {
        Cx::real(zero(prec))
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        Cx::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, s: &Float) -> Cx {
        Cx::new(&self.re * s, &self.im * s)
    }

    pub fn norm_sqr(&self) -> Float {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Float {
        sqrt(&self.norm_sqr())
    }

    pub fn conj(&self) -> Cx {
        Cx::new(self.re.clone(), -&self.im)
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.re) && is_zero(&self.im)
    }

    /// Quotient; `None` when the divisor is zero.
    pub fn div(&self, o: &Cx) -> Option<Cx> {
        let d = o.norm_sqr();
        if is_zero(&d) {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) / &d;
        let im = (&self.im * &o.re - &self.re * &o.im) / &d;
        Some(Cx::new(re, im))
    }
}

/// Horner evaluation of a real polynomial at a complex point.
pub fn eval_cx(coeffs: &[Float], z: &Cx) -> Cx {
    let prec = z.re.precision();
    coeffs
        .iter()
        .rev()
        .fold(Cx::zero(prec), |acc, c| acc.mul(z).add(&Cx::real(c.clone())))
}

/// Horner evaluation of a complex polynomial at a complex point.
pub fn eval_cpoly(coeffs: &[Cx], z: &Cx) -> Cx {
    let prec = z.re.precision();
    coeffs.iter().rev().fold(Cx::zero(prec), |acc, c| acc.mul(z).add(c))
}
