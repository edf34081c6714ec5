use std::collections::BTreeMap;
use std::fmt;

use super::gaussian::GaussianRational;
use super::ring::{Rational, Ring};

/// Laurent polynomial in the equivariant parameter `t` with Gaussian
/// rational coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TLaurentPoly {
    terms: BTreeMap<i64, GaussianRational>,
}

impl TLaurentPoly {
    pub fn monomial(coeff: GaussianRational, t_exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(t_exp, coeff);
        }
        Self { terms }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn rational(r: Rational) -> Self {
        Self::constant(GaussianRational::real(r))
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(GaussianRational::one(), k)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (i64, GaussianRational)>) -> Self {
        let mut p = Self::default();
        for (e, c) in iter {
            p.add_term(e, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, t_exp: i64) -> GaussianRational {
        self.terms
            .get(&t_exp)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t_exp: i64, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(t_exp)
            .or_insert_with(GaussianRational::zero);
        *slot = slot.plus(c);
        if slot.is_zero() {
            self.terms.remove(&t_exp);
        }
    }

    /// `Some((k, c))` when the polynomial is the single monomial `c·t^k`.
    pub fn as_monomial(&self) -> Option<(i64, &GaussianRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// The value as a plain Gaussian rational when it has no `t`-dependence.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn shift_t(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn min_t(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_t(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }
}

impl Ring for TLaurentPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }
    fn minus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, &c.negated());
        }
        out
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, &c1.times(c2));
            }
        }
        out
    }
    fn negated(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c.negated())).collect(),
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial(c.inverse()?, -e))
    }
    fn scaled(&self, r: &Rational) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            out.add_term(*e, &c.scaled(r));
        }
        out
    }
}

impl From<GaussianRational> for TLaurentPoly {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<Rational> for TLaurentPoly {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl fmt::Display for TLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = if c.is_real() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match *e {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*t")?,
                k => write!(f, "{cs}*t^{k}")?,
            }
        }
        Ok(())
    }
}
