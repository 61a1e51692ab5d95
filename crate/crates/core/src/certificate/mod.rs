//! Certificates `g = Σ ω_i h_i² + q·f`, their exact verifier, and the JSON file format.

mod json;

pub use json::{deserialize, serialize, ParseError, FORMAT_VERSION};

use crate::ratpoly::{Poly, Rational};
use num_traits::Signed;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub f: Poly,
    pub g: Poly,
    pub weights: Vec<Rational>,
    pub polys: Vec<Poly>,
    pub q: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    LengthMismatch { weights: usize, polys: usize },
    NonPositiveWeight { index: usize },
    DegreeTooHigh { index: usize },
    /// `g − Σ ω h² − q f`, nonzero.
    Residual(Poly),
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidReason::LengthMismatch { weights, polys } => {
                write!(out, "{weights} weights but {polys} polynomials")
            }
            InvalidReason::NonPositiveWeight { index } => write!(out, "weight {index} is not positive"),
            InvalidReason::DegreeTooHigh { index } => {
                write!(out, "polynomial {index} has degree not below deg f")
            }
            InvalidReason::Residual(r) => write!(out, "identity fails, residual {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(InvalidReason),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl Certificate {
    /// The empty certificate of `g = 0`.
    pub fn empty(f: &Poly) -> Self {
        Certificate {
            f: f.clone(),
            g: Poly::zero(),
            weights: Vec::new(),
            polys: Vec::new(),
            q: Poly::zero(),
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sum_of_squares(&self) -> Poly {
        self.weights
            .iter()
            .zip(&self.polys)
            .fold(Poly::zero(), |acc, (w, h)| &acc + &(h * h).scale(w))
    }

    pub fn residual(&self) -> Poly {
        &(&self.g - &self.sum_of_squares()) - &(&self.q * &self.f)
    }

    /// Largest bit size among all numerators and denominators.
    pub fn max_coeff_bits(&self) -> u64 {
        let polys = [&self.f, &self.g, &self.q].into_iter().chain(&self.polys);
        let w = self
            .weights
            .iter()
            .map(|r| r.numer().bits().max(r.denom().bits()))
            .max()
            .unwrap_or(0);
        polys.map(Poly::max_coeff_bits).max().unwrap_or(0).max(w)
    }

    /// Human-readable identity, descending powers.
    pub fn to_pretty(&self) -> String {
        let mut s = format!("f = {}\ng = {}\n", self.f.to_pretty(), self.g.to_pretty());
        s.push_str("g = ");
        let mut terms: Vec<String> = self
            .weights
            .iter()
            .zip(&self.polys)
            .map(|(w, h)| format!("{w} * ({})^2", h.to_pretty()))
            .collect();
        terms.push(format!("({}) * ({})", self.q.to_pretty(), self.f.to_pretty()));
        s.push_str(&terms.join("\n    + "));
        s.push('\n');
        s
    }
}

/// Exact check of every certificate clause, reporting the first failure.
pub fn verify(c: &Certificate) -> Verdict {
    if c.weights.len() != c.polys.len() {
        return Verdict::Invalid(InvalidReason::LengthMismatch {
            weights: c.weights.len(),
            polys: c.polys.len(),
        });
    }
    if let Some(index) = c.weights.iter().position(|w| !w.is_positive()) {
        return Verdict::Invalid(InvalidReason::NonPositiveWeight { index });
    }
    let n = c.f.deg();
    if let Some(index) = c
        .polys
        .iter()
        .position(|h| h.deg().is_some_and(|d| n.is_none_or(|n| d >= n)))
    {
        return Verdict::Invalid(InvalidReason::DegreeTooHigh { index });
    }
    let r = c.residual();
    if r.is_zero() {
        Verdict::Valid
    } else {
        Verdict::Invalid(InvalidReason::Residual(r))
    }
}
