//! Square-root-free Cholesky factorization over `Q`.

use crate::ratpoly::{RatMatrix, Rational};
use num_traits::{Signed, Zero};

/// `Q = L·diag(d)·Lᵀ` with `L` unit lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldl {
    pub l: RatMatrix,
    pub d: Vec<Rational>,
}

impl Ldl {
    pub fn reconstruct(&self) -> RatMatrix {
        let n = self.d.len();
        let mut ld = self.l.clone();
        for i in 0..n {
            for j in 0..n {
                ld[(i, j)] = &self.l[(i, j)] * &self.d[j];
            }
        }
        ld.matmul(&self.l.transpose())
    }
}

/// First pivot that is not strictly positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotPositiveDefinite {
    pub index: usize,
    pub pivot: Rational,
}

/// Exact `LDLᵀ`; succeeds iff the symmetric `q` is positive definite.
pub fn check_positive_definite(q: &RatMatrix) -> Result<Ldl, NotPositiveDefinite> {
    let n = q.dim();
    let mut l = RatMatrix::identity(n);
    let mut d: Vec<Rational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut pivot = q[(j, j)].clone();
        for k in 0..j {
            pivot -= &l[(j, k)] * &l[(j, k)] * &d[k];
        }
        if !pivot.is_positive() {
            return Err(NotPositiveDefinite { index: j, pivot });
        }
        for i in j + 1..n {
            let mut s = q[(i, j)].clone();
            for k in 0..j {
                s -= &l[(i, k)] * &l[(j, k)] * &d[k];
            }
            l[(i, j)] = if s.is_zero() { s } else { s / &pivot };
        }
        d.push(pivot);
    }
    Ok(Ldl { l, d })
}
