//! Arithmetic in `F_p[x]` for small odd primes and complete factorization by
//! distinct-degree then equal-degree (Cantor–Zassenhaus) splitting.

use super::{zpoly::ZPoly, FactorError, ModularFactorSet};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Polynomial over `F_p`, ascending, no trailing zeros.
pub(crate) type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!((3..1 << 31).contains(&p), "prime out of supported range");
        Fp { p }
    }

    fn trim(&self, mut a: FpPoly) -> FpPoly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn from_z(&self, a: &[BigInt]) -> FpPoly {
        let m = BigInt::from(self.p);
        self.trim(
            a.iter()
                .map(|c| c.mod_floor(&m).to_u64().expect("residue fits"))
                .collect(),
        )
    }

    pub fn to_z(&self, a: &[u64]) -> ZPoly {
        a.iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow_scalar(a, self.p - 2)
    }

    fn pow_scalar(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        self.trim(out)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> FpPoly {
        self.trim(a.iter().map(|&x| x * c % self.p).collect())
    }

    pub fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        let db = b.len().checked_sub(1).expect("nonzero divisor");
        if a.len() <= db {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(b[db]);
        let mut rem = a.to_vec();
        let mut quot = vec![0u64; a.len() - db];
        for k in (0..quot.len()).rev() {
            let c = rem[k + db] * inv % self.p;
            if c == 0 {
                continue;
            }
            for (j, &d) in b.iter().enumerate() {
                rem[k + j] = (rem[k + j] + self.p - c * d % self.p) % self.p;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (self.trim(quot), self.trim(rem))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        while !r1.is_empty() {
            let r = self.rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
        }
        self.monic(&r0)
    }

    /// `(g, s, t)` with `s*a + t*b = g` monic, `deg s < deg b - deg g`.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("nonzero gcd"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &[u64]) -> FpPoly {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (i as u64 % self.p) * c % self.p)
                .collect(),
        )
    }

    pub fn powmod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> FpPoly {
        let mut acc = vec![1u64];
        let base = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        self.rem(&acc, m)
    }

    fn is_one(a: &[u64]) -> bool {
        a.len() == 1 && a[0] == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn distinct_degree(&self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let p = BigUint::from(self.p);
        let mut d = 1usize;
        while f.len() > 2 * d {
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if !Self::is_one(&g) {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    /// Splits a monic product of distinct irreducibles of degree `d`.
    fn equal_degree(&self, g: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.to_vec());
            return;
        }
        let exp: BigUint = (BigUint::from(self.p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a: FpPoly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let c = self.gcd(&a, g);
            let splitter = if !Self::is_one(&c) {
                c
            } else {
                let b = self.powmod(&a, &exp, g);
                self.gcd(&self.sub(&b, &[1]), g)
            };
            let k = splitter.len().saturating_sub(1);
            if k > 0 && k < n {
                let rest = self.divrem(g, &splitter).0;
                self.equal_degree(&splitter, d, rng, out);
                self.equal_degree(&rest, d, rng, out);
                return;
            }
        }
    }
}

/// Complete monic factorization of `f` modulo `prime`.
///
/// `f` must have a leading coefficient not divisible by `prime` and be
/// squarefree modulo `prime`; otherwise `BadPrime` is returned.
pub fn factor_mod_p(f: &[BigInt], prime: u64, seed: u64) -> Result<ModularFactorSet, FactorError> {
    let fp = Fp::new(prime);
    let fbar = fp.from_z(f);
    if fbar.len() != f.len() || f.is_empty() {
        return Err(FactorError::BadPrime { prime });
    }
    let fbar = fp.monic(&fbar);
    if !Fp::is_one(&fp.gcd(&fbar, &fp.derivative(&fbar))) {
        return Err(FactorError::BadPrime { prime });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ prime);
    let mut factors = Vec::new();
    if fbar.len() > 1 {
        for (g, d) in fp.distinct_degree(&fbar) {
            fp.equal_degree(&g, d, &mut rng, &mut factors);
        }
    }
    factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(ModularFactorSet {
        prime,
        level: 1,
        poly: super::zpoly::trim(f.to_vec()),
        factors: factors.iter().map(|g| fp.to_z(g)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cubic_mod_five() {
        // Oracle: x = 3 is the only root of x^3 - 2 mod 5 (brute force), so
        // the cofactor x^2 + 3x + 4 has no roots and is irreducible.
        let roots: Vec<i64> = (0i64..5).filter(|x| (x * x * x - 2).rem_euclid(5) == 0).collect();
        assert_eq!(roots, vec![3]);
        let quad_roots = (0..5).filter(|x| (x * x + 3 * x + 4) % 5 == 0).count();
        assert_eq!(quad_roots, 0);

        let mf = factor_mod_p(&z(&[-2, 0, 0, 1]), 5, 1).unwrap();
        assert_eq!(mf.factors, vec![z(&[2, 1]), z(&[4, 3, 1])]);
    }

    #[test]
    fn irreducible_mod_three() {
        let mf = factor_mod_p(&z(&[1, 0, 1]), 3, 1).unwrap();
        assert_eq!(mf.factors, vec![z(&[1, 0, 1])]);
    }

    #[test]
    fn splits_mod_seven() {
        let mf = factor_mod_p(&z(&[-1, 0, 1]), 7, 1).unwrap();
        assert_eq!(mf.factors, vec![z(&[1, 1]), z(&[6, 1])]);
    }

    #[test]
    fn bad_primes() {
        // leading coefficient vanishes
        assert!(matches!(factor_mod_p(&z(&[1, 3]), 3, 1), Err(FactorError::BadPrime { .. })));
        // x^2 + 2x + 1 + 3 = (x+1)^2 mod 3
        assert!(matches!(factor_mod_p(&z(&[4, 2, 1]), 3, 1), Err(FactorError::BadPrime { .. })));
    }

    #[test]
    fn product_of_factors_matches() {
        let f = z(&[5, -3, 0, 7, 2, 0, 1]);
        for p in [3u64, 5, 7, 11, 13] {
            let Ok(mf) = factor_mod_p(&f, p, 9) else { continue };
            let fp = Fp::new(p);
            let prod = mf.factors.iter().fold(vec![1u64], |acc, g| fp.mul(&acc, &fp.from_z(g)));
            assert_eq!(prod, fp.monic(&fp.from_z(&f)));
        }
    }
}
