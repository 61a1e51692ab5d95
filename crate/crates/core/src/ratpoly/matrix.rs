use super::{Poly, Rational};
use num_traits::Zero;
use std::fmt;
use std::ops::{Index, IndexMut};

/// Dense square matrix over `Q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Rational::from_integer(1.into());
        }
        m
    }

    /// Panics unless the rows form a square matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RatMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &RatMatrix) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &RatMatrix) -> Self {
        assert_eq!(self.n, rhs.n);
        RatMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, rhs: &RatMatrix) -> Self {
        assert_eq!(self.n, rhs.n);
        RatMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Sum of squared entries.
    pub fn frobenius_norm_squared(&self) -> Rational {
        self.data.iter().map(|a| a * a).sum()
    }

    /// The polynomial `x^T Q x` with `x = [1, x, ..., x^(n-1)]`.
    pub fn quadratic_form(&self) -> Poly {
        if self.n == 0 {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); 2 * self.n - 1];
        for i in 0..self.n {
            for j in 0..self.n {
                coeffs[i + j] += &self[(i, j)];
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Determinant by Gaussian elimination over `Q`.
    pub fn determinant(&self) -> Rational {
        let n = self.n;
        let mut a = self.clone();
        let mut det = Rational::from_integer(1.into());
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Rational::zero();
            };
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                }
                det = -det;
            }
            let p = a[(c, c)].clone();
            det *= &p;
            for r in c + 1..n {
                let factor = &a[(r, c)] / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = &factor * &a[(c, j)];
                    a[(r, j)] -= v;
                }
            }
        }
        det
    }

    /// Leading principal `k x k` submatrix.
    pub fn leading(&self, k: usize) -> Self {
        let mut m = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        m
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
