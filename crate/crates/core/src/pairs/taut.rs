//! Polynomials in the tautological classes `ω` (hyperplane) and `θ`
//! (pulled-back theta divisor) on a symmetric product `C^{[n_0]}`.

use std::collections::BTreeMap;

use crate::algebra::binomial::{binom, factorial_rational};
use crate::algebra::ring::Ring;
use crate::algebra::tpoly::TLaurentPoly;

/// Map from `(ω-power, θ-power)` to a `t`-coefficient.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct TautPoly {
    terms: BTreeMap<(u32, u32), TLaurentPoly>,
}

impl TautPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, TLaurentPoly::one())
    }

    pub fn monomial(omega: u32, theta: u32, c: TLaurentPoly) -> Self {
        let mut p = Self::default();
        p.add_term(omega, theta, &c);
        p
    }

    pub fn add_term(&mut self, omega: u32, theta: u32, c: &TLaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((omega, theta)).or_default();
        *slot = slot.plus(c);
        if slot.is_zero() {
            self.terms.remove(&(omega, theta));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &TLaurentPoly)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(*a, *b, c);
        }
        out
    }

    pub fn scale(&self, c: &TLaurentPoly) -> Self {
        let mut out = Self::default();
        for ((a, b), x) in &self.terms {
            out.add_term(*a, *b, &x.times(c));
        }
        out
    }

    /// Product, dropping every monomial of `(ω, θ)`-degree above `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        let mut out = Self::default();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                let (a, b) = (a1 + a2, b1 + b2);
                if a + b <= max_degree {
                    out.add_term(a, b, &c1.times(c2));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, u32::MAX)
    }
}

/// `∫_{C^{[n_0]}}` over a curve of genus `h`: `ω^a θ^b ↦ b!·C(h, b)` when
/// `a + b = n_0`, and zero otherwise for degree reasons.
pub fn symmetric_product_integral(h: i64, n0: u32, p: &TautPoly) -> TLaurentPoly {
    let mut acc = TLaurentPoly::zero();
    for ((a, b), c) in p.terms() {
        if a + b == n0 {
            let w = factorial_rational(u64::from(b)) * binom(h, i64::from(b));
            acc = acc.plus(&c.scaled(&w));
        }
    }
    acc
}
