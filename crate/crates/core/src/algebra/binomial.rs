//! Binomial coefficients under the negative-top convention, and the
//! factorial family.

use num_bigint::BigInt;
use num_traits::One;

use super::ring::{big, Rational};
use crate::error::{Error, Result};

/// Integer binomial coefficient for every `(n, k) ∈ ℤ²`.
///
/// For `n < 0, k ≥ 0` this is `(-1)^k·C(k-n-1, k)`; it is zero for `k < 0`
/// and for `k > n ≥ 0`. With this convention `(1+x)^n = Σ_k C(n,k) x^k`
/// holds for every integer `n`.
pub fn binom_int(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::from(0);
    }
    if n >= 0 {
        if k > n {
            return BigInt::from(0);
        }
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        acc
    } else {
        let v = binom_int(k - n - 1, k);
        if k % 2 == 0 {
            v
        } else {
            -v
        }
    }
}

pub fn binom(n: i64, k: i64) -> Rational {
    big(binom_int(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial_rational(n: u64) -> Rational {
    big(factorial(n))
}

/// `(2α-1)!! = (2α-1)(2α-3)⋯1`.
pub fn double_factorial_odd(alpha: i64) -> Result<BigInt> {
    if alpha <= 0 {
        return Err(Error::InvalidArgument(format!(
            "double_factorial_odd needs alpha >= 1, got {alpha}"
        )));
    }
    Ok((1..=alpha).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::int;

    #[test]
    fn convention_examples() {
        assert_eq!(binom(5, 2), int(10));
        assert_eq!(binom(-1, 2), int(1));
        assert_eq!(binom(3, 5), int(0));
        assert_eq!(binom(4, -1), int(0));
        assert_eq!(binom(-2, 3), int(-4));
        assert_eq!(binom(0, 0), int(1));
        assert_eq!(binom(-3, 0), int(1));
    }

    #[test]
    fn pascal_recurrence_on_grid() {
        for n in -20..=20 {
            for k in -20..=20 {
                assert_eq!(
                    binom_int(n, k),
                    binom_int(n - 1, k) + binom_int(n - 1, k - 1),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn chu_vandermonde() {
        for a in -8..=8 {
            for b in -8..=8 {
                for c in 0..=12 {
                    let lhs: BigInt = (0..=c).map(|k| binom_int(a, c - k) * binom_int(b, k)).sum();
                    assert_eq!(lhs, binom_int(a + b, c), "a={a} b={b} c={c}");
                }
            }
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial_odd(1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial_odd(2).unwrap(), BigInt::from(3));
        assert_eq!(double_factorial_odd(4).unwrap(), BigInt::from(7 * 5 * 3));
        assert!(double_factorial_odd(0).is_err());
        assert!(double_factorial_odd(-3).is_err());
    }
}
