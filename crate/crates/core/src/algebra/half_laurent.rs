//! Laurent objects in `Q^{1/2}` (or in `q`), with `t`-polynomial
//! coefficients.
//!
//! Exponents are stored doubled when the lattice is `½ℤ`: a stored exponent
//! `e` with `exponent_denominator == 2` stands for `Q^{e/2}`.

use std::collections::BTreeMap;

use super::gaussian::GaussianRational;
use super::ring::{sign_pow, Rational, Ring};
use super::tpoly::TLaurentPoly;
use crate::error::{Error, Result};

/// Which of the two related variables the exponents refer to. `Q = -q`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum QVariable {
    /// The sign-twisted variable `Q = -q` in which the product formulas are stated.
    UpperQ,
    /// The generating-function variable `q`.
    LowerQ,
}

impl QVariable {
    pub fn name(self) -> &'static str {
        match self {
            QVariable::UpperQ => "Q",
            QVariable::LowerQ => "q",
        }
    }
}

/// What is known about the coefficients, in scaled exponent units.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Extent {
    /// A finite Laurent polynomial: every coefficient is known.
    Exact,
    /// Coefficients are known exactly on `[lo, hi]`; `lo == None` means
    /// every exponent up to `hi` is known. `lo > hi` means nothing is known.
    Window { lo: Option<i64>, hi: i64 },
}

impl Extent {
    pub fn contains(&self, e: i64) -> bool {
        match *self {
            Extent::Exact => true,
            Extent::Window { lo, hi } => e <= hi && lo.is_none_or(|l| e >= l),
        }
    }

    fn intersect(self, other: Extent) -> Extent {
        match (self, other) {
            (Extent::Exact, x) | (x, Extent::Exact) => x,
            (Extent::Window { lo: l1, hi: h1 }, Extent::Window { lo: l2, hi: h2 }) => {
                let lo = match (l1, l2) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    (a, None) => a,
                    (None, b) => b,
                };
                Extent::Window { lo, hi: h1.min(h2) }
            }
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct HalfLaurentSeries {
    variable: QVariable,
    exponent_denominator: u8,
    terms: BTreeMap<i64, TLaurentPoly>,
    extent: Extent,
}

impl HalfLaurentSeries {
    pub fn new(
        variable: QVariable,
        exponent_denominator: u8,
        terms: impl IntoIterator<Item = (i64, TLaurentPoly)>,
        extent: Extent,
    ) -> Result<Self> {
        if exponent_denominator != 1 && exponent_denominator != 2 {
            return Err(Error::InvalidArgument(format!(
                "exponent denominator must be 1 or 2, got {exponent_denominator}"
            )));
        }
        let mut s = Self {
            variable,
            exponent_denominator,
            terms: BTreeMap::new(),
            extent,
        };
        for (e, c) in terms {
            s.add_term(e, &c);
        }
        Ok(s)
    }

    pub fn zero(variable: QVariable, exponent_denominator: u8) -> Self {
        Self {
            variable,
            exponent_denominator,
            terms: BTreeMap::new(),
            extent: Extent::Exact,
        }
    }

    /// Exact series with rational coefficients, exponents in scaled units.
    pub fn from_rationals(
        variable: QVariable,
        exponent_denominator: u8,
        terms: impl IntoIterator<Item = (i64, Rational)>,
    ) -> Self {
        let mut s = Self::zero(variable, exponent_denominator);
        for (e, c) in terms {
            s.add_term(e, &TLaurentPoly::rational(c));
        }
        s
    }

    pub fn constant(variable: QVariable, exponent_denominator: u8, c: TLaurentPoly) -> Self {
        let mut s = Self::zero(variable, exponent_denominator);
        s.add_term(0, &c);
        s
    }

    pub fn one(variable: QVariable, exponent_denominator: u8) -> Self {
        Self::constant(variable, exponent_denominator, TLaurentPoly::one())
    }

    fn add_term(&mut self, e: i64, c: &TLaurentPoly) {
        if c.is_zero() || !self.extent.contains(e) {
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

    pub fn variable(&self) -> QVariable {
        self.variable
    }

    pub fn exponent_denominator(&self) -> u8 {
        self.exponent_denominator
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn is_exact(&self) -> bool {
        self.extent == Extent::Exact
    }

    /// Terms in scaled exponent units, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &TLaurentPoly)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient at a scaled exponent; errors outside the known window.
    pub fn coeff(&self, e: i64) -> Result<TLaurentPoly> {
        if !self.extent.contains(e) {
            let available = match self.extent {
                Extent::Window { hi, .. } => hi + 1,
                Extent::Exact => unreachable!(),
            };
            return Err(Error::TruncationTooSmall {
                needed: e,
                available,
            });
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_default())
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.variable != other.variable {
            return Err(Error::VariableMismatch);
        }
        if self.exponent_denominator != other.exponent_denominator {
            return Err(Error::IncompatibleLattice(
                self.exponent_denominator,
                other.exponent_denominator,
            ));
        }
        Ok(())
    }

    /// Re-express on the `½ℤ` lattice (a no-op when already there).
    pub fn with_half_lattice(&self) -> Self {
        if self.exponent_denominator == 2 {
            return self.clone();
        }
        let extent = match self.extent {
            Extent::Exact => Extent::Exact,
            Extent::Window { lo, hi } => Extent::Window {
                lo: lo.map(|l| 2 * l),
                hi: 2 * hi + 1,
            },
        };
        Self {
            variable: self.variable,
            exponent_denominator: 2,
            terms: self.terms.iter().map(|(e, c)| (2 * e, c.clone())).collect(),
            extent,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let extent = self.extent.intersect(other.extent);
        let mut out = Self::new(
            self.variable,
            self.exponent_denominator,
            self.terms.iter().map(|(e, c)| (*e, c.clone())),
            extent,
        )?;
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn map_coeffs(&self, f: impl Fn(&TLaurentPoly) -> TLaurentPoly) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c));
        }
        out
    }

    pub fn scale(&self, c: &TLaurentPoly) -> Self {
        self.map_coeffs(|x| x.times(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|x| x.scaled(r))
    }

    /// Multiply by the monomial `var^{e/den}` (scaled units).
    pub fn shift(&self, e: i64) -> Self {
        let extent = match self.extent {
            Extent::Exact => Extent::Exact,
            Extent::Window { lo, hi } => Extent::Window {
                lo: lo.map(|l| l + e),
                hi: hi + e,
            },
        };
        Self {
            variable: self.variable,
            exponent_denominator: self.exponent_denominator,
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
            extent,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let extent = product_extent(self, other);
        let mut acc: BTreeMap<i64, TLaurentPoly> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                if !extent.contains(e) {
                    continue;
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
        Self::new(self.variable, self.exponent_denominator, acc, extent)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(self.variable, self.exponent_denominator);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    fn unit_lead(&self, at_top: bool) -> Result<(i64, TLaurentPoly)> {
        let entry = if at_top {
            self.terms.iter().next_back()
        } else {
            self.terms.iter().next()
        };
        let (e, c) = entry.ok_or_else(|| Error::NonUnitLeadingCoefficient("0".into()))?;
        let inv = c
            .inverse()
            .ok_or_else(|| Error::NonUnitLeadingCoefficient(c.to_string()))?;
        Ok((*e, inv))
    }

    /// Exact division of Laurent polynomials. A nonzero remainder is an error
    /// carrying the residue; nothing is ever silently truncated.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_compatible(divisor)?;
        if !self.is_exact() || !divisor.is_exact() {
            return Err(Error::InexactInput);
        }
        let (d_top, d_top_inv) = divisor.unit_lead(true)?;
        let d_min = divisor.min_exponent().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.variable, self.exponent_denominator);
        let floor = match self.min_exponent() {
            Some(m) => m - d_min,
            None => return Ok(quot),
        };
        while let Some(r_top) = rem.max_exponent() {
            let shift = r_top - d_top;
            if shift < floor {
                break;
            }
            let c = rem.terms[&r_top].times(&d_top_inv);
            quot.add_term(shift, &c);
            rem = rem.sub(&divisor.scale(&c).shift(shift))?;
        }
        if rem.terms.is_empty() {
            Ok(quot)
        } else {
            Err(Error::InexactDivision {
                residue: rem.to_text(),
            })
        }
    }

    /// Laurent expansion of `self / divisor` around 0, with every
    /// coefficient up to scaled exponent `hi` determined.
    pub fn div_expand(&self, divisor: &Self, hi: i64) -> Result<Self> {
        self.check_compatible(divisor)?;
        if !divisor.is_exact() {
            return Err(Error::InexactInput);
        }
        let num_hi = match self.extent {
            Extent::Exact => None,
            Extent::Window { lo: None, hi } => Some(hi),
            Extent::Window { lo: Some(_), .. } => return Err(Error::InexactInput),
        };
        let (d_min, d_min_inv) = divisor.unit_lead(false)?;
        let target = match num_hi {
            Some(h) => hi.min(h - d_min),
            None => hi,
        };
        let extent = Extent::Window {
            lo: None,
            hi: target,
        };
        let mut rem = self.clone();
        rem.extent = Extent::Window {
            lo: None,
            hi: target + divisor.max_exponent().unwrap_or(d_min),
        };
        let mut quot = Self::new(self.variable, self.exponent_denominator, [], extent)?;
        while let Some(r_min) = rem.min_exponent() {
            let shift = r_min - d_min;
            if shift > target {
                break;
            }
            let c = rem.terms[&r_min].times(&d_min_inv);
            quot.add_term(shift, &c);
            let sub = divisor.scale(&c).shift(shift);
            for (e, t) in &sub.terms {
                rem.add_term(*e, &t.negated());
            }
        }
        Ok(quot)
    }

    /// Restrict to the closed scaled-exponent window `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        let extent = self.extent.intersect(Extent::Window { lo: Some(lo), hi });
        let mut out = Self {
            terms: BTreeMap::new(),
            extent,
            ..self.clone()
        };
        for (e, c) in &self.terms {
            out.add_term(*e, c);
        }
        out
    }

    /// Rewrite a series in `Q = -q` as a series in `q`. Half-integer powers
    /// of `Q` must have cancelled; one surviving is an error.
    pub fn to_lower_q(&self) -> Result<Self> {
        if self.variable == QVariable::LowerQ {
            return Ok(self.clone());
        }
        let den = i64::from(self.exponent_denominator);
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if e % den != 0 {
                return Err(Error::HalfIntegerExponent(*e));
            }
            let m = e / den;
            terms.push((m, c.scaled(&super::ring::int(sign_pow(m)))));
        }
        let extent = match self.extent {
            Extent::Exact => Extent::Exact,
            Extent::Window { lo, hi } => Extent::Window {
                lo: lo.map(|l| l.div_euclid(den) + i64::from(l.rem_euclid(den) != 0)),
                hi: hi.div_euclid(den),
            },
        };
        Self::new(QVariable::LowerQ, 1, terms, extent)
    }

    /// `var ↦ var^{-1}`; only meaningful for exact series.
    pub fn invert_variable(&self) -> Result<Self> {
        if !self.is_exact() {
            return Err(Error::InexactInput);
        }
        Ok(Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
            ..self.clone()
        })
    }

    /// Splits `t^k · (series with t-free coefficients)`. Fails unless every
    /// coefficient is a multiple of the same `t^k`.
    pub fn collapse_t(&self) -> Result<(Option<i64>, Self)> {
        let mut power = None;
        let mut out = Self {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (e, c) in &self.terms {
            let (k, coeff) = c.as_monomial().ok_or_else(|| {
                Error::TCollapse(format!(
                    "coefficient {c} at exponent {e} is not a t-monomial"
                ))
            })?;
            match power {
                None => power = Some(k),
                Some(p) if p != k => {
                    return Err(Error::TCollapse(format!("mixed t-powers t^{p} and t^{k}")))
                }
                _ => {}
            }
            out.add_term(*e, &TLaurentPoly::constant(coeff.clone()));
        }
        Ok((power, out))
    }

    /// Coefficientwise comparison on the scaled window `[lo, hi]`; both
    /// sides must know every coefficient there.
    pub fn agrees_on(&self, other: &Self, lo: i64, hi: i64) -> Result<bool> {
        self.check_compatible(other)?;
        for e in lo..=hi {
            if self.coeff(e)? != other.coeff(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coefficients as plain Gaussian rationals when none depends on `t`.
    pub fn constant_coefficients(&self) -> Option<Vec<(i64, GaussianRational)>> {
        self.terms
            .iter()
            .map(|(e, c)| c.as_constant().map(|g| (*e, g)))
            .collect()
    }

    /// Ascending-exponent text form, e.g. `-q^-1 - 2 - q`.
    pub fn to_text(&self) -> String {
        let var = self.variable.name();
        let den = i64::from(self.exponent_denominator);
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let cs = c.to_string();
            if e % den == 0 {
                parts.push(super::format::term(&cs, var, e / den));
            } else {
                let pw = format!("{var}^({e}/{den})");
                let (neg, body) = super::format::term(&cs, "\u{0}", 1);
                parts.push((neg, body.replace('\u{0}', &pw)));
            }
        }
        if let Extent::Window { lo, hi } = self.extent {
            let lo = lo.map_or("-inf".to_string(), |l| l.to_string());
            parts.push((false, format!("[known on {lo}..={hi}]")));
        }
        super::format::join(parts)
    }
}

fn product_extent(a: &HalfLaurentSeries, b: &HalfLaurentSeries) -> Extent {
    let nothing = Extent::Window { lo: Some(1), hi: 0 };
    match (a.extent, b.extent) {
        (Extent::Exact, Extent::Exact) => Extent::Exact,
        (Extent::Exact, Extent::Window { lo, hi }) => exact_times_window(a, lo, hi),
        (Extent::Window { lo, hi }, Extent::Exact) => exact_times_window(b, lo, hi),
        (Extent::Window { lo: None, hi: ha }, Extent::Window { lo: None, hi: hb }) => {
            let va = a.min_exponent().unwrap_or(ha + 1);
            let vb = b.min_exponent().unwrap_or(hb + 1);
            Extent::Window {
                lo: None,
                hi: (ha + vb).min(hb + va),
            }
        }
        _ => nothing,
    }
}

fn exact_times_window(exact: &HalfLaurentSeries, lo: Option<i64>, hi: i64) -> Extent {
    match (exact.min_exponent(), exact.max_exponent()) {
        (Some(emin), Some(emax)) => Extent::Window {
            lo: lo.map(|l| l + emax),
            hi: hi + emin,
        },
        // exact zero times anything is exactly zero
        _ => Extent::Exact,
    }
}
