//! Many independent instances at once. With the `parallel` feature the
//! instances are spread over the rayon pool; otherwise they run in order.

use crate::certificate::{verify, Certificate, Verdict};
use crate::exactify::CertifyOptions;
use crate::lifting::{certify_nonnegative, CertifyError};
use crate::ratpoly::Poly;

pub type Outcome = Result<Certificate, CertifyError>;

pub fn certify_all_sequential(instances: &[(Poly, Poly)], opts: &CertifyOptions) -> Vec<Outcome> {
    instances
        .iter()
        .map(|(f, g)| certify_nonnegative(f, g, opts))
        .collect()
}

pub fn verify_all_sequential(certs: &[Certificate]) -> Vec<Verdict> {
    certs.iter().map(verify).collect()
}

#[cfg(feature = "parallel")]
pub fn certify_all(instances: &[(Poly, Poly)], opts: &CertifyOptions) -> Vec<Outcome> {
    use rayon::prelude::*;
    instances
        .par_iter()
        .map(|(f, g)| certify_nonnegative(f, g, opts))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn certify_all(instances: &[(Poly, Poly)], opts: &CertifyOptions) -> Vec<Outcome> {
    certify_all_sequential(instances, opts)
}

#[cfg(feature = "parallel")]
pub fn verify_all(certs: &[Certificate]) -> Vec<Verdict> {
    use rayon::prelude::*;
    certs.par_iter().map(verify).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn verify_all(certs: &[Certificate]) -> Vec<Verdict> {
    verify_all_sequential(certs)
}
