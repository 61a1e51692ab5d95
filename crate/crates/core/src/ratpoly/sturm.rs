use super::{gcd, Poly, PolyError, Rational};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

/// Sturm sequence `f, f', -rem(f, f'), ...` down to a constant.
pub fn sturm_sequence(f: &Poly) -> Result<Vec<Poly>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut seq = vec![f.clone()];
    let mut cur = f.derivative();
    while !cur.is_zero() {
        let prev = seq.last().expect("nonempty");
        // Positive rescaling keeps signs and tames coefficient growth.
        let next = -prev.rem(&cur)?;
        let next = match next.leading_coeff() {
            Some(lc) => next.scale(&lc.abs().recip()),
            None => next,
        };
        seq.push(cur);
        cur = next;
    }
    Ok(seq)
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_at_infinity(p: &Poly, negative: bool) -> Ordering {
    let Some(lc) = p.leading_coeff() else {
        return Ordering::Equal;
    };
    let s = lc.cmp(&Rational::zero());
    let odd = p.deg().unwrap_or(0) % 2 == 1;
    if negative && odd {
        s.reverse()
    } else {
        s
    }
}

/// Sign variations of the sequence evaluated at `x`.
pub fn sign_variations_at(seq: &[Poly], x: &Rational) -> usize {
    variations(seq.iter().map(|p| p.eval(x).cmp(&Rational::zero())))
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn sturm_real_root_count(f: &Poly) -> Result<usize, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !gcd(f, &f.derivative())?.is_constant() {
        return Err(PolyError::NotSquarefree);
    }
    let seq = sturm_sequence(f)?;
    let at_neg = variations(seq.iter().map(|p| sign_at_infinity(p, true)));
    let at_pos = variations(seq.iter().map(|p| sign_at_infinity(p, false)));
    Ok(at_neg - at_pos)
}
