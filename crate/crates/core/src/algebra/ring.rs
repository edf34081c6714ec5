//! The coefficient-ring abstraction shared by every series type, and the
//! arbitrary-precision rational field underneath it.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rationals, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// The minimal commutative-ring surface the series code needs.
///
/// Method names avoid `add`/`mul` so they never collide with `std::ops`
/// on types (like [`Rational`]) that implement both.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Multiplicative inverse when `self` is a unit of the ring.
    fn inverse(&self) -> Option<Self>;

    fn scaled(&self, r: &Rational) -> Self {
        self.times(&Self::from_rational(r))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `base^exp` for any integer exponent; a zero base with negative exponent
/// is rejected.
pub fn rational_powi(base: &Rational, exp: i64) -> Result<Rational> {
    if exp >= 0 {
        Ok(Ring::pow(base, exp as u32))
    } else if Zero::is_zero(base) {
        Err(Error::InvalidArgument(
            "zero raised to a negative power".into(),
        ))
    } else {
        Ok(Ring::pow(&base.recip(), (-exp) as u32))
    }
}

/// `(-1)^e` as an `i64`.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Canonical `"p/q"` (or `"p"`) string form.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if Zero::is_zero(&d) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => big(s
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?),
    };
    Ok(parsed)
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_are_canonical() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 12 ").unwrap(), int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn negative_powers() {
        assert_eq!(rational_powi(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(rational_powi(&int(5), 0).unwrap(), int(1));
        assert!(rational_powi(&int(0), -1).is_err());
    }
}
