//! Exact rational sum-of-squares certificates that a univariate polynomial `g`
//! is non-negative at every real root of a polynomial `f`:
//! `g = Σ ω_i h_i² + q·f` with `ω_i > 0` and `deg h_i < deg f`.

pub mod batch;
pub mod certificate;
pub mod exactify;
pub mod expr;
pub mod factor;
pub mod lifting;
pub mod numeric;
pub mod ratpoly;

pub use certificate::{verify, Certificate, Verdict};
pub use exactify::CertifyOptions;
pub use expr::parse_poly;
pub use lifting::{certify_nonnegative, CertifyError};
pub use ratpoly::{Poly, Rational};
