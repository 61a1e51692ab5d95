//! `sos-cert/1` JSON: every rational is a canonical `"num/den"` or integer
//! string, every polynomial an ascending coefficient array.

use super::Certificate;
use crate::ratpoly::{Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub const FORMAT_VERSION: &str = "sos-cert/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Rat(Rational);

fn parse_digits(s: &str) -> Option<BigInt> {
    let ok = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'));
    if ok {
        BigInt::from_str(s).ok()
    } else {
        None
    }
}

/// Parses a canonical rational: reduced, positive denominator other than 1, no `-0`.
fn parse_canonical(s: &str) -> Result<Rational, String> {
    let bad = || format!("\"{s}\" is not a canonical rational");
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (parse_digits(n).ok_or_else(bad)?, parse_digits(d).ok_or_else(bad)?),
        None => (parse_digits(body).ok_or_else(bad)?, BigInt::one()),
    };
    if den.is_zero() || (neg && num.is_zero()) || (body.contains('/') && den.is_one()) {
        return Err(bad());
    }
    let r = Rational::new(if neg { -num.clone() } else { num.clone() }, den.clone());
    if r.denom() != &den {
        return Err(bad());
    }
    Ok(r)
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational number as a string")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                parse_canonical(v).map(Rat).map_err(E::custom)
            }
        }
        d.deserialize_str(V)
    }
}

#[derive(Clone, Debug)]
struct Version;

impl Serialize for Version {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(FORMAT_VERSION)
    }
}

impl<'de> Deserialize<'de> for Version {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = String::deserialize(d)?;
        if v == FORMAT_VERSION {
            Ok(Version)
        } else {
            Err(de::Error::custom(format!("unsupported version \"{v}\"")))
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Term {
    omega: Rat,
    h: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Doc {
    version: Version,
    f: Vec<Rat>,
    g: Vec<Rat>,
    q: Vec<Rat>,
    terms: Vec<Term>,
}

fn to_rats(p: &Poly) -> Vec<Rat> {
    p.coeffs().iter().cloned().map(Rat).collect()
}

fn from_rats(v: Vec<Rat>) -> Poly {
    Poly::from_coeffs(v.into_iter().map(|r| r.0).collect())
}

pub fn serialize(c: &Certificate) -> String {
    let doc = Doc {
        version: Version,
        f: to_rats(&c.f),
        g: to_rats(&c.g),
        q: to_rats(&c.q),
        terms: c
            .weights
            .iter()
            .zip(&c.polys)
            .map(|(w, h)| Term { omega: Rat(w.clone()), h: to_rats(h) })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn deserialize(text: &str) -> Result<Certificate, ParseError> {
    let doc: Doc = serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let (weights, polys) = doc
        .terms
        .into_iter()
        .map(|t| (t.omega.0, from_rats(t.h)))
        .unzip();
    Ok(Certificate {
        f: from_rats(doc.f),
        g: from_rats(doc.g),
        q: from_rats(doc.q),
        weights,
        polys,
    })
}
