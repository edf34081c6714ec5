//! Truncated Laurent series in a single integer-exponent variable (`u` on
//! the Gromov-Witten side, `x` in the generating-function identities).
//!
//! A series is either exact (a finite Laurent polynomial) or carries an
//! order `N`: every coefficient below `N` is known, nothing at or above it
//! is. Arithmetic never reports a coefficient it could not have verified.

use std::collections::BTreeMap;
use std::fmt;

use super::binomial::factorial_rational;
use super::gaussian::GaussianRational;
use super::ring::{Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct UPowerSeries<C: Ring = GaussianRational> {
    terms: BTreeMap<i64, C>,
    order: Option<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TrigKind {
    Sin,
    Cos,
    Exp,
}

/// min over optional bounds, with `None` meaning +∞.
fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

impl<C: Ring> UPowerSeries<C> {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>, order: Option<i64>) -> Self {
        let mut s = Self {
            terms: BTreeMap::new(),
            order,
        };
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        s
    }

    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
            order: None,
        }
    }

    /// `O(u^order)`.
    pub fn big_o(order: i64) -> Self {
        Self {
            terms: BTreeMap::new(),
            order: Some(order),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        Self::from_terms([(exp, c)], None)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    fn add_term(&mut self, e: i64, c: &C) {
        if c.is_zero() || self.order.is_some_and(|n| e >= n) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot = slot.plus(c);
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    /// `None` for exact series.
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `u^e`, or an error when `e` lies beyond the truncation.
    pub fn coeff(&self, e: i64) -> Result<C> {
        if let Some(n) = self.order {
            if e >= n {
                return Err(Error::TruncationTooSmall {
                    needed: e,
                    available: n,
                });
            }
        }
        Ok(self.coeff_or_zero(e))
    }

    pub fn coeff_or_zero(&self, e: i64) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Lowest exponent with a nonzero stored coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lower bound for the true valuation: the stored one, or the order for
    /// a series known to vanish below its truncation.
    fn valuation_bound(&self) -> Option<i64> {
        self.valuation().or(self.order)
    }

    pub fn truncate(&self, n: i64) -> Self {
        let order = min_opt(self.order, Some(n));
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone())), order)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> UPowerSeries<D> {
        UPowerSeries::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))), self.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = min_opt(self.order, other.order);
        let mut out = Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.clone())), order);
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.times(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|x| x.scaled(r))
    }

    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(e, c)| (e + k, c.clone())),
            self.order.map(|n| n + k),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_capped(other, None)
    }

    /// Product, additionally truncated at `cap` when given.
    pub fn mul_capped(&self, other: &Self, cap: Option<i64>) -> Self {
        if (self.terms.is_empty() && self.order.is_none())
            || (other.terms.is_empty() && other.order.is_none())
        {
            return Self::zero();
        }
        let order = min_opt(
            min_opt(
                add_opt(self.order, other.valuation_bound()),
                add_opt(other.order, self.valuation_bound()),
            ),
            cap,
        );
        let mut acc: BTreeMap<i64, C> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if order.is_some_and(|n| e >= n) {
                    // exponents are sorted: the rest of this row is out of range too
                    break;
                }
                let p = c1.times(c2);
                match acc.get_mut(&e) {
                    Some(slot) => *slot = slot.plus(&p),
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        Self::from_terms(acc, order)
    }

    pub fn pow(&self, n: u32) -> Self {
        self.pow_capped(n, None)
    }

    pub fn pow_capped(&self, n: u32, cap: Option<i64>) -> Self {
        let mut acc = Self::one().truncate_opt(cap);
        let mut base = self.truncate_opt(cap);
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_capped(&base, cap);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_capped(&base, cap);
            }
        }
        acc
    }

    fn truncate_opt(&self, cap: Option<i64>) -> Self {
        match cap {
            Some(n) => self.truncate(n),
            None => self.clone(),
        }
    }

    /// Multiplicative inverse. Exact inputs are expanded up to `order`;
    /// truncated inputs stop at their intrinsic precision if that is lower.
    pub fn inverse(&self, order: i64) -> Result<Self> {
        let v = self
            .valuation()
            .ok_or_else(|| Error::NonUnitLeadingCoefficient("0".into()))?;
        let lead = self.coeff_or_zero(v);
        let lead_inv = lead
            .inverse()
            .ok_or_else(|| Error::NonUnitLeadingCoefficient(format!("{lead:?}")))?;
        // relative precision of self is N - v; inverse has valuation -v
        let target = match self.order {
            Some(n) => order.min(n - 2 * v),
            None => order,
        };
        let mut out: BTreeMap<i64, C> = BTreeMap::new();
        // out_k for k = -v, -v+1, ... ; sum_{j} self_{v+j} out_{k-j} = [k == -v]
        let mut k = -v;
        while k < target {
            let mut s = if k == -v { C::one() } else { C::zero() };
            for (e, c) in self.terms.range(v + 1..) {
                let j = e - v;
                if k - j < -v {
                    break;
                }
                if let Some(o) = out.get(&(k - j)) {
                    s = s.minus(&c.times(o));
                }
            }
            let val = s.times(&lead_inv);
            if !val.is_zero() {
                out.insert(k, val);
            }
            k += 1;
        }
        Ok(Self::from_terms(out, Some(target)))
    }

    /// `self / other`, exact inputs expanded up to `order`.
    pub fn div(&self, other: &Self, order: i64) -> Result<Self> {
        let va = self.valuation_bound().unwrap_or(order);
        // 1/other must be good to order - va for the quotient to reach `order`
        let inv = other.inverse(order - va)?;
        Ok(self.mul_capped(&inv, Some(order)))
    }

    /// `self(inner(u))`. The inner series must have positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let v = inner.valuation().ok_or(Error::NonPositiveValuation)?;
        if v < 1 {
            return Err(Error::NonPositiveValuation);
        }
        // missing outer terms u^k (k >= N_outer) start at u^{k v}
        let cap = self.order.map(|n| n * v);
        let min_k = self.valuation().unwrap_or(0).min(0);
        let max_k = self.max_exponent().unwrap_or(0);
        let mut acc = Self::zero().truncate_opt(cap);
        if let Some(c0) = self.terms.get(&0) {
            acc = acc.add(&Self::constant(c0.clone()));
        }
        if max_k > 0 {
            let mut power = inner.truncate_opt(cap);
            for k in 1..=max_k {
                if let Some(c) = self.terms.get(&k) {
                    acc = acc.add(&power.scale(c));
                }
                if k < max_k {
                    power = power.mul_capped(inner, cap);
                }
            }
        }
        if min_k < 0 {
            let inv_order = match cap {
                Some(n) => n,
                None => {
                    if inner.is_exact() {
                        return Err(Error::InvalidArgument(
                            "exact composition with a principal part needs a truncated outer series"
                                .into(),
                        ));
                    }
                    i64::MAX / 4
                }
            };
            let inv = inner.inverse(inv_order - (min_k + 1) * v)?;
            let mut power = inv.clone();
            for k in (min_k..0).rev() {
                if let Some(c) = self.terms.get(&k) {
                    acc = acc.add(&power.scale(c));
                }
                if k > min_k {
                    power = power.mul_capped(&inv, cap);
                }
            }
        }
        Ok(acc.truncate_opt(cap))
    }

    /// `d/du`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e - 1, c.scaled(&super::ring::int(*e)))),
            self.order.map(|n| n - 1),
        )
    }

    /// `f(s·u)`.
    pub fn rescale_variable(&self, s: &C) -> Result<Self> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let factor = if *e >= 0 {
                s.pow(*e as u32)
            } else {
                s.inverse()
                    .ok_or_else(|| Error::NonUnitLeadingCoefficient(format!("{s:?}")))?
                    .pow((-e) as u32)
            };
            out.push((*e, c.times(&factor)));
        }
        Ok(Self::from_terms(out, self.order))
    }

    /// Coefficientwise equality on every exponent below `n` (both series
    /// must be known there).
    pub fn agrees_below(&self, other: &Self, n: i64) -> Result<bool> {
        for s in [self, other] {
            if let Some(o) = s.order {
                if o < n {
                    return Err(Error::TruncationTooSmall {
                        needed: n - 1,
                        available: o,
                    });
                }
            }
        }
        let lo = min_opt(self.valuation(), other.valuation()).unwrap_or(n);
        Ok((lo..n).all(|e| self.coeff_or_zero(e) == other.coeff_or_zero(e)))
    }
}

/// Exact Taylor coefficients of `sin(s u)`, `cos(s u)` or `exp(s u)` below
/// `u^order`.
pub fn trig_series<C: Ring>(kind: TrigKind, scale: &C, order: i64) -> UPowerSeries<C> {
    let mut terms = Vec::new();
    let mut s_pow = C::one();
    for k in 0..order.max(0) {
        let keep = match kind {
            TrigKind::Exp => Some(1i64),
            TrigKind::Sin if k % 2 == 1 => Some(if (k / 2) % 2 == 0 { 1 } else { -1 }),
            TrigKind::Cos if k % 2 == 0 => Some(if (k / 2) % 2 == 0 { 1 } else { -1 }),
            _ => None,
        };
        if let Some(sign) = keep {
            let c = s_pow.scaled(&(super::ring::int(sign) / factorial_rational(k as u64)));
            terms.push((k, c));
        }
        s_pow = s_pow.times(scale);
    }
    UPowerSeries::from_terms(terms, Some(order))
}

impl<C: Ring + fmt::Display> UPowerSeries<C> {
    /// Ascending-exponent text form, e.g. `-u^2 + 1/12*u^4 + O(u^6)`.
    pub fn to_text(&self, var: &str) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (e, c) in &self.terms {
            parts.push(super::format::term(&c.to_string(), var, *e));
        }
        if let Some(n) = self.order {
            parts.push((false, format!("O({})", super::format::power(var, n))));
        }
        super::format::join(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, rat};

    type RS = UPowerSeries<Rational>;

    fn poly(coeffs: &[(i64, i64, i64)], order: Option<i64>) -> RS {
        RS::from_terms(coeffs.iter().map(|&(e, n, d)| (e, rat(n, d))), order)
    }

    #[test]
    fn sine_and_cosine_coefficients() {
        let s = trig_series(TrigKind::Sin, &int(1), 6);
        assert_eq!(s, poly(&[(1, 1, 1), (3, -1, 6), (5, 1, 120)], Some(6)));
        let c = trig_series(TrigKind::Cos, &int(1), 5);
        assert_eq!(c, poly(&[(0, 1, 1), (2, -1, 2), (4, 1, 24)], Some(5)));
    }

    #[test]
    fn exp_with_gaussian_scale() {
        let half_i = GaussianRational::new(int(0), rat(1, 2));
        let e = trig_series(TrigKind::Exp, &half_i, 3);
        assert_eq!(e.coeff(0).unwrap(), GaussianRational::one());
        assert_eq!(e.coeff(1).unwrap(), half_i);
        assert_eq!(e.coeff(2).unwrap(), GaussianRational::real(rat(-1, 8)));
        assert!(e.coeff(3).is_err());
    }

    #[test]
    fn composition_of_polynomials() {
        let outer = poly(&[(2, 1, 1)], None);
        let inner = poly(&[(1, 1, 1), (2, 1, 1)], None);
        assert_eq!(
            outer.compose(&inner).unwrap(),
            poly(&[(2, 1, 1), (3, 2, 1), (4, 1, 1)], None)
        );
        let c = poly(&[(0, 7, 3)], None);
        assert_eq!(c.compose(&inner).unwrap(), c);
        assert_eq!(
            outer.compose(&poly(&[(0, 1, 1)], None)),
            Err(Error::NonPositiveValuation)
        );
    }

    #[test]
    fn sine_composed_with_double_is_sine_of_double() {
        let sin = trig_series(TrigKind::Sin, &int(1), 12);
        let two_u = poly(&[(1, 2, 1)], None);
        let lhs = sin.compose(&two_u).unwrap();
        let rhs = trig_series(TrigKind::Sin, &int(2), 12);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_and_principal_parts() {
        // 1/sin(u) = u^-1 + u/6 + 7u^3/360 + ...
        let sin = trig_series(TrigKind::Sin, &int(1), 10);
        let inv = sin.inverse(5).unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.coeff(-1).unwrap(), int(1));
        assert_eq!(inv.coeff(1).unwrap(), rat(1, 6));
        assert_eq!(inv.coeff(3).unwrap(), rat(7, 360));
        let one = sin.mul(&inv);
        assert!(one.agrees_below(&RS::one(), one.order().unwrap()).unwrap());
    }

    #[test]
    fn truncation_propagates_through_products() {
        let a = poly(&[(1, 1, 1)], Some(4)); // u + O(u^4)
        let b = poly(&[(2, 1, 1)], Some(5)); // u^2 + O(u^5)
        let p = a.mul(&b);
        assert_eq!(p.order(), Some(6));
        assert_eq!(p.coeff(3).unwrap(), int(1));
        let exact = poly(&[(0, 1, 1), (3, 1, 1)], None);
        assert_eq!(exact.mul(&a).order(), Some(4));
    }

    #[test]
    fn division_by_sine_power() {
        // sin(2u)/sin(u)^2 = 2 cot u = 2/u - 2u/3 - 2u^3/45 + ...
        let num = trig_series(TrigKind::Sin, &int(2), 8);
        let den = trig_series(TrigKind::Sin, &int(1), 8).pow(2);
        let q = num.div(&den, 4).unwrap();
        assert_eq!(q.coeff(-1).unwrap(), int(2));
        assert_eq!(q.coeff(0).unwrap(), int(0));
        assert_eq!(q.coeff(1).unwrap(), rat(-2, 3));
        assert_eq!(q.coeff(3).unwrap(), rat(-2, 45));
    }

    #[test]
    fn text_form() {
        let s = poly(&[(2, -1, 1), (4, 1, 12)], Some(6));
        assert_eq!(s.to_text("u"), "-u^2 + 1/12*u^4 + O(u^6)");
    }

    mod laws {
        use super::*;
        use crate::algebra::binomial::binom;
        use proptest::prelude::*;

        fn series(min_exp: i64) -> impl Strategy<Value = RS> {
            (
                prop::collection::vec((min_exp..8i64, -6i64..=6, 1i64..=4), 0..6),
                prop::option::of(8i64..12),
            )
                .prop_map(|(ts, order)| poly(&ts, order))
        }

        /// Equal on every coefficient both sides know. Exact zero factors can
        /// make one side more precise than the other.
        fn agree(x: &RS, y: &RS) -> bool {
            let n = min_opt(x.order(), y.order()).unwrap_or(20);
            x.agrees_below(y, n).unwrap()
        }

        proptest! {
            #[test]
            fn ring_laws(a in series(0), b in series(0), c in series(0)) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert!(agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
                prop_assert!(agree(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
                prop_assert!(agree(&a.add(&b).sub(&b), &a));
            }

            #[test]
            fn exp_of_negation_is_inverse(f in series(1)) {
                prop_assume!(f.valuation().is_some());
                let exp = trig_series(TrigKind::Exp, &int(1), 9);
                let plus = exp.compose(&f).unwrap();
                let minus = exp.compose(&f.neg()).unwrap();
                let known = f.order().map_or(9, |n| n.min(9));
                prop_assert!(plus.mul(&minus).agrees_below(&RS::one(), known).unwrap());
            }
        }

        #[test]
        fn binomial_theorem_for_integer_exponents() {
            let order = 12;
            let one_plus = poly(&[(0, 1, 1), (1, 1, 1)], None);
            let inv = one_plus.inverse(order).unwrap();
            for n in -10i64..=10 {
                let lhs = if n >= 0 {
                    one_plus.pow(n as u32).truncate(order)
                } else {
                    inv.pow_capped((-n) as u32, Some(order))
                };
                let rhs = RS::from_terms((0..order).map(|k| (k, binom(n, k))), Some(order));
                assert_eq!(lhs, rhs, "n = {n}");
            }
        }
    }
}
