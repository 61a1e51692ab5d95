use super::{gcd, Poly, PolyError, Rational};

/// `unit * prod(factor^multiplicity)` with monic, squarefree, pairwise coprime factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    pub parts: Vec<(Poly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> Poly {
        self.parts
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (p, m)| &acc * &p.pow(*m))
    }

    /// Product of the distinct factors (the squarefree part, monic).
    pub fn radical(&self) -> Poly {
        self.parts.iter().fold(Poly::one(), |acc, (p, _)| &acc * p)
    }
}

/// Yun's squarefree decomposition over `Q`.
pub fn squarefree_decompose(f: &Poly) -> Result<SquarefreeDecomposition, PolyError> {
    let unit = f.leading_coeff().ok_or(PolyError::ZeroPolynomial)?.clone();
    let f = f.monic();
    let mut parts = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition { unit, parts });
    }
    let df = f.derivative();
    let a0 = gcd(&f, &df)?;
    let mut b = f.exact_div(&a0)?.expect("gcd divides f");
    let c = df.exact_div(&a0)?.expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = gcd(&b, &d)?;
        let b_next = b.exact_div(&a)?.expect("gcd divides b");
        let c_next = d.exact_div(&a)?.expect("gcd divides d");
        d = &c_next - &b_next.derivative();
        if !a.is_constant() {
            parts.push((a, i));
        }
        b = b_next;
        i += 1;
    }
    Ok(SquarefreeDecomposition { unit, parts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::int;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn example_with_repeated_cubic() {
        let cubic = p(&[-2, 0, 0, 1]);
        let f = &Poly::x() * &cubic.pow(2);
        let sf = squarefree_decompose(&f).unwrap();
        assert_eq!(sf.parts, vec![(Poly::x(), 1), (cubic, 2)]);
        assert_eq!(sf.reconstruct(), f);
    }

    #[test]
    fn already_squarefree() {
        let cubic = p(&[-2, 0, 0, 1]);
        let sf = squarefree_decompose(&cubic).unwrap();
        assert_eq!(sf.parts, vec![(cubic, 1)]);
    }

    #[test]
    fn mixed_multiplicities() {
        // Oracle: expand (x-1)^2 (x+1)^3 independently and decompose.
        let f = &p(&[-1, 1]).pow(2) * &p(&[1, 1]).pow(3);
        assert_eq!(f, p(&[-1, -1, 2, 2, -1, -1]).scale(&int(-1)));
        let sf = squarefree_decompose(&f).unwrap();
        assert_eq!(sf.parts, vec![(p(&[-1, 1]), 2), (p(&[1, 1]), 3)]);
    }

    #[test]
    fn unit_and_constant() {
        let sf = squarefree_decompose(&p(&[6, 3])).unwrap();
        assert_eq!(sf.unit, int(3));
        assert_eq!(sf.parts, vec![(p(&[2, 1]), 1)]);
        assert!(squarefree_decompose(&p(&[5])).unwrap().parts.is_empty());
        assert_eq!(squarefree_decompose(&Poly::zero()), Err(PolyError::ZeroPolynomial));
    }
}
