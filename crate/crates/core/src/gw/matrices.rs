//! The lower-triangular correspondence matrices `L` (closed form) and
//! `K = L^{-1}`. Values beyond the diagonal and `(2,1)` entries of `K` are
//! conditional on the constancy conjecture for the correspondence matrix.

use std::fmt;

use crate::algebra::binomial::binom;
use crate::algebra::gaussian::GaussianRational;
use crate::algebra::ring::{int, Ring};
use crate::error::{Error, Result};

/// Lower-triangular matrix over `ℚ[i]`, indexed from 1.
#[derive(Clone, PartialEq, Debug)]
pub struct GaussTriangularMatrix {
    rows: Vec<Vec<GaussianRational>>,
}

impl GaussTriangularMatrix {
    fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        Self {
            rows: (1..=size)
                .map(|a| (1..=a).map(|b| f(a, b)).collect())
                .collect(),
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |a, b| {
            if a == b {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(a, b)`; zero above the diagonal.
    pub fn get(&self, a: usize, b: usize) -> GaussianRational {
        if b > a || a == 0 || b == 0 || a > self.size() {
            return GaussianRational::zero();
        }
        self.rows[a - 1][b - 1].clone()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::InvalidArgument(format!(
                "matrix sizes differ: {} vs {}",
                self.size(),
                other.size()
            )));
        }
        Ok(Self::from_fn(self.size(), |a, b| {
            (b..=a).fold(GaussianRational::zero(), |acc, k| {
                acc.plus(&self.get(a, k).times(&other.get(k, b)))
            })
        }))
    }

    /// Inverse by forward substitution; needs unit diagonal entries.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.size();
        let mut inv = vec![vec![GaussianRational::zero(); n]; n];
        for a in 1..=n {
            let diag = self
                .get(a, a)
                .inverse()
                .ok_or_else(|| Error::NonUnitLeadingCoefficient(format!("diagonal entry {a}")))?;
            for b in (1..=a).rev() {
                let mut s = if a == b {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                };
                for k in b..a {
                    s = s.minus(&self.get(a, k).times(&inv[k - 1][b - 1]));
                }
                inv[a - 1][b - 1] = s.times(&diag);
            }
        }
        Ok(Self::from_fn(n, |a, b| inv[a - 1][b - 1].clone()))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size())
    }
}

impl fmt::Display for GaussTriangularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join("  "))?;
        }
        Ok(())
    }
}

/// `L_ab = i^{b−1} (−1)^{a−1} Σ_{j=1}^{b} (−1)^{b−j} C(b, j) j^{b−a}`.
pub fn l_entry(a: i64, b: i64) -> GaussianRational {
    let sum: crate::algebra::ring::Rational = (1..=b)
        .map(|j| {
            let sign = if (b - j) % 2 == 0 { 1 } else { -1 };
            int(sign) * binom(b, j) * int(j).pow((b - a) as i32)
        })
        .sum();
    let sign = if (a - 1) % 2 == 0 { 1 } else { -1 };
    GaussianRational::i_pow(b - 1).scaled(&(sum * int(sign)))
}

pub fn l_matrix(size: usize) -> GaussTriangularMatrix {
    GaussTriangularMatrix::from_fn(size, |a, b| l_entry(a as i64, b as i64))
}

pub fn k_matrix(size: usize) -> Result<GaussTriangularMatrix> {
    l_matrix(size).inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::binomial::factorial_rational;
    use crate::identities::c_value;

    #[test]
    fn l_values() {
        let l = l_matrix(3);
        assert_eq!(l.get(1, 1), GaussianRational::one());
        assert_eq!(l.get(2, 1), GaussianRational::from_int(-1));
        assert_eq!(l.get(2, 2), GaussianRational::i());
        assert_eq!(l.get(1, 2), GaussianRational::zero());
    }

    #[test]
    fn known_k_values() {
        let k = k_matrix(4).unwrap();
        let minus_i = GaussianRational::i().negated();
        assert_eq!(k.get(1, 1), GaussianRational::one());
        assert_eq!(k.get(2, 2), minus_i);
        assert_eq!(k.get(2, 1), minus_i);
        for a in 1..=4 {
            assert_eq!(k.get(a, a), GaussianRational::i_pow(1 - a as i64));
        }
    }

    #[test]
    fn inverse_up_to_twelve() {
        for n in 1..=12 {
            let l = l_matrix(n);
            let k = k_matrix(n).unwrap();
            assert!(k.mul(&l).unwrap().is_identity(), "n={n}");
            assert!(l.mul(&k).unwrap().is_identity(), "n={n}");
        }
    }

    #[test]
    fn l_matches_appendix_coefficients() {
        // (−i)^{b−1} L_ab / b! = (−1)^{a−1} c_b(a)
        for a in 1..=10 {
            for b in 1..=a {
                let lhs = GaussianRational::i_pow(1 - b)
                    .times(&l_entry(a, b))
                    .scaled(&factorial_rational(b as u64).recip());
                let sign = if (a - 1) % 2 == 0 { 1 } else { -1 };
                let want = GaussianRational::real(c_value(b, a) * int(sign));
                assert_eq!(lhs, want, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn singular_diagonal_is_rejected() {
        let m = GaussTriangularMatrix::from_fn(2, |a, b| {
            if a == 2 && b == 2 {
                GaussianRational::zero()
            } else {
                GaussianRational::one()
            }
        });
        assert!(m.inverse().is_err());
    }
}
