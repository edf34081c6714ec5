use std::fmt;

use num_traits::Zero;

use super::ring::{int, is_negative, Rational, Ring};

/// `re + i·im` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Zero::zero(),
        }
    }

    pub fn i() -> Self {
        Self {
            re: Zero::zero(),
            im: int(1),
        }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::real(int(1)),
            1 => Self::i(),
            2 => Self::real(int(-1)),
            _ => Self::i().negated(),
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn is_real(&self) -> bool {
        Zero::is_zero(&self.im)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        Self::real(Zero::zero())
    }
    fn one() -> Self {
        Self::real(int(1))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn plus(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn minus(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn times(&self, o: &Self) -> Self {
        if self.is_real() && o.is_real() {
            return Self::real(&self.re * &o.re);
        }
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn negated(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }
    fn from_rational(r: &Rational) -> Self {
        Self::real(r.clone())
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }
    fn scaled(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (Zero::is_zero(&self.re), Zero::is_zero(&self.im)) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write_imag(f, &self.im),
            (false, false) => {
                write!(f, "{}", self.re)?;
                if is_negative(&self.im) {
                    write!(f, "-")?;
                    write_imag(f, &-&self.im)
                } else {
                    write!(f, "+")?;
                    write_imag(f, &self.im)
                }
            }
        }
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &Rational) -> fmt::Result {
    if *im == int(1) {
        write!(f, "i")
    } else if *im == int(-1) {
        write!(f, "-i")
    } else {
        write!(f, "{im}i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.times(&i), GaussianRational::from_int(-1));
        assert_eq!(GaussianRational::i_pow(-1), i.negated());
        assert_eq!(GaussianRational::i_pow(6), GaussianRational::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = GaussianRational::new(rat(3, 2), rat(-2, 5));
        assert!(z.times(&z.inverse().unwrap()).is_one());
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(
            GaussianRational::new(rat(1, 2), int(-1)).to_string(),
            "1/2-i"
        );
        assert_eq!(GaussianRational::new(int(0), rat(3, 4)).to_string(), "3/4i");
        assert_eq!(GaussianRational::from_int(-2).to_string(), "-2");
    }
}
