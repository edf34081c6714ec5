//! Closed product formulas for the vertical generating function, computed
//! in `Q = −q` on the half-integer lattice and then rewritten in `q`.

use crate::algebra::binomial::factorial_rational;
use crate::algebra::half_laurent::{Extent, HalfLaurentSeries, QVariable};
use crate::algebra::ring::{int, rat, rational_powi, sign_pow, Rational};
use crate::error::{Error, Result};

use super::geometry::{check_degree, total_alpha, Insertion, SurfaceGeometry};

/// Exact series in `Q^{1/2}` from `(scaled exponent, coefficient)` pairs.
fn upper(terms: impl IntoIterator<Item = (i64, Rational)>) -> HalfLaurentSeries {
    HalfLaurentSeries::from_rationals(QVariable::UpperQ, 2, terms)
}

/// `Q^{m/2} − Q^{−m/2}`.
fn half_difference(m: i64) -> HalfLaurentSeries {
    upper([(m, int(1)), (-m, int(-1))])
}

/// The no-insertion product in `Q`, before rewriting in `q`.
pub fn vertical_closed_upper(geom: &SurfaceGeometry, d: i64) -> Result<HalfLaurentSeries> {
    check_degree(d)?;
    let e = geom.kappa_sq();
    if e < 0 {
        return Err(Error::InvalidArgument(
            "h = 0 gives a rational function, not a Laurent polynomial; use the brute-force sum"
                .into(),
        ));
    }
    let e = e as u32;
    let prefactor = rational_powi(&rat(sign_pow(d), 1), i64::from(e))?
        * rational_powi(&int(d), -(d - 1) * i64::from(e))?
        * int(geom.sign());
    let mut acc = half_difference(d).pow(2 * e)?;
    for i in 1..d {
        let factor = upper([(d, int(d - i)), (d - 2 * i, int(-d)), (-d, int(i))]);
        acc = acc.mul(&factor.pow(e)?)?;
    }
    Ok(acc.scale_rational(&prefactor))
}

/// The no-insertion vertical series as an exact Laurent polynomial in `q`.
pub fn vertical_closed(geom: &SurfaceGeometry, d: i64) -> Result<HalfLaurentSeries> {
    vertical_closed_upper(geom, d)?.to_lower_q()
}

/// A closed formula in `q`: either a Laurent polynomial or, when the
/// descendent denominator does not divide out, a quotient of two.
#[derive(Clone, PartialEq, Debug)]
pub enum ClosedForm {
    Laurent(HalfLaurentSeries),
    Quotient {
        numerator: HalfLaurentSeries,
        denominator: HalfLaurentSeries,
    },
}

impl ClosedForm {
    pub fn as_laurent(&self) -> Option<&HalfLaurentSeries> {
        match self {
            ClosedForm::Laurent(s) => Some(s),
            ClosedForm::Quotient { .. } => None,
        }
    }

    /// Laurent expansion around `q = 0` with every coefficient up to `q^hi`
    /// known.
    pub fn expand(&self, hi: i64) -> Result<HalfLaurentSeries> {
        match self {
            ClosedForm::Laurent(s) => Ok(s.clone()),
            ClosedForm::Quotient {
                numerator,
                denominator,
            } => numerator.div_expand(denominator, hi),
        }
    }

    /// Coefficients on `[lo, hi]` only.
    pub fn window(&self, lo: i64, hi: i64) -> Result<HalfLaurentSeries> {
        Ok(self.expand(hi)?.restrict(lo, hi))
    }

    /// Does `q ↦ q^{-1}` multiply the function by `sign`?
    pub fn is_q_symmetric(&self, sign: i64) -> Result<bool> {
        match self {
            ClosedForm::Laurent(s) => q_symmetry_with_sign(s, sign),
            ClosedForm::Quotient {
                numerator,
                denominator,
            } => {
                let lhs = numerator.invert_variable()?.mul(denominator)?;
                let rhs = numerator
                    .mul(&denominator.invert_variable()?)?
                    .scale_rational(&int(sign));
                Ok(lhs == rhs)
            }
        }
    }
}

/// Closed descendent formula: returns the global `t`-power `|α|` and the
/// `t`-free function of `q`.
pub fn vertical_closed_descendents(
    geom: &SurfaceGeometry,
    d: i64,
    insertions: &[Insertion],
) -> Result<(i64, ClosedForm)> {
    let base = vertical_closed_upper(geom, d)?;
    let t_power = total_alpha(insertions);
    if insertions.is_empty() {
        return Ok((0, ClosedForm::Laurent(base.to_lower_q()?)));
    }
    let mut numerator = base;
    let mut denominator = HalfLaurentSeries::one(QVariable::UpperQ, 2);
    let mut weight_sum = 0;
    for ins in insertions {
        let k = i64::from(ins.alpha) + 1;
        let c = rational_powi(&int(d), k)? * &ins.pairing / factorial_rational(k as u64);
        numerator = numerator.mul(&half_difference(d * k).scale_rational(&c))?;
        denominator = denominator.mul(&half_difference(d).pow(k as u32)?)?;
        weight_sum += k;
    }
    match numerator.div_exact(&denominator) {
        Ok(q) => Ok((t_power, ClosedForm::Laurent(q.to_lower_q()?))),
        Err(Error::InexactDivision { .. }) => {
            // clear the half-integer offset so both sides live on ℤ
            let shift = d * weight_sum;
            Ok((
                t_power,
                ClosedForm::Quotient {
                    numerator: numerator.shift(shift).to_lower_q()?,
                    denominator: denominator.shift(shift).to_lower_q()?,
                },
            ))
        }
        Err(e) => Err(e),
    }
}

fn q_symmetry_with_sign(series: &HalfLaurentSeries, sign: i64) -> Result<bool> {
    if series.extent() != Extent::Exact {
        return Err(Error::InexactInput);
    }
    Ok(series.invert_variable()? == series.scale_rational(&int(sign)))
}

/// True iff `q ↦ q^{-1}` multiplies the exact series by `(−1)^{|α|}`.
pub fn q_symmetry_check(series: &HalfLaurentSeries, total_alpha: i64) -> Result<bool> {
    q_symmetry_with_sign(series, sign_pow(total_alpha))
}

/// Exact `q`-series with rational coefficients.
pub fn q_series(terms: impl IntoIterator<Item = (i64, Rational)>) -> HalfLaurentSeries {
    HalfLaurentSeries::from_rationals(QVariable::LowerQ, 1, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Ring;
    use crate::algebra::tpoly::TLaurentPoly;
    use crate::pairs::geometry::ChiParity;

    fn geom(h: i64, parity: ChiParity) -> SurfaceGeometry {
        SurfaceGeometry::new(h, parity).unwrap()
    }

    #[test]
    fn genus_two_degree_one() {
        let s = vertical_closed(&geom(2, ChiParity::Odd), 1).unwrap();
        assert_eq!(s, q_series([(-1, int(-1)), (0, int(-2)), (1, int(-1))]));
        assert_eq!(s.to_text(), "-q^-1 - 2 - q");
    }

    #[test]
    fn genus_two_degree_two_in_upper_variable() {
        let s = vertical_closed_upper(&geom(2, ChiParity::Even), 2).unwrap();
        let expected = upper([
            (6, rat(1, 2)),
            (4, int(-1)),
            (2, rat(-1, 2)),
            (0, int(2)),
            (-2, rat(-1, 2)),
            (-4, int(-1)),
            (-6, rat(1, 2)),
        ]);
        assert_eq!(s, expected);
    }

    #[test]
    fn genus_one_is_trivial() {
        for d in 1..=5 {
            let s = vertical_closed(&geom(1, ChiParity::Even), d).unwrap();
            assert_eq!(s, q_series([(0, int(1))]));
        }
    }

    #[test]
    fn genus_zero_is_rejected() {
        assert!(vertical_closed(&geom(0, ChiParity::Even), 1).is_err());
        assert!(vertical_closed(&geom(2, ChiParity::Even), 0).is_err());
    }

    #[test]
    fn divisor_equation() {
        let g = geom(3, ChiParity::Odd);
        for d in 1..=3 {
            let base = vertical_closed(&g, d).unwrap();
            let (tp, form) =
                vertical_closed_descendents(&g, d, &[Insertion::new(0, rat(5, 3))]).unwrap();
            assert_eq!(tp, 0);
            assert_eq!(
                form.as_laurent().unwrap(),
                &base.scale_rational(&(rat(5, 3) * int(d)))
            );
        }
    }

    #[test]
    fn low_genus_descendents_stay_rational() {
        let (tp, form) =
            vertical_closed_descendents(&geom(1, ChiParity::Even), 1, &[Insertion::new(1, int(1))])
                .unwrap();
        assert_eq!(tp, 1);
        assert!(form.as_laurent().is_none());
        assert!(form.is_q_symmetric(-1).unwrap());
        // (1/2)(Q^{1/2}+Q^{-1/2})/(Q^{1/2}-Q^{-1/2}) = -(1/2)(1-q)/(1+q) in q
        let e = form.expand(3).unwrap();
        let want = [rat(-1, 2), int(1), int(-1), int(1)];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(
                e.coeff(k as i64).unwrap(),
                TLaurentPoly::from_rational(w),
                "q^{k}"
            );
        }
    }

    #[test]
    fn symmetry_examples() {
        let s = vertical_closed(&geom(2, ChiParity::Odd), 1).unwrap();
        assert!(q_symmetry_check(&s, 0).unwrap());
        let (tp, form) =
            vertical_closed_descendents(&geom(3, ChiParity::Even), 2, &[Insertion::new(1, int(1))])
                .unwrap();
        assert!(q_symmetry_check(form.as_laurent().unwrap(), tp).unwrap());
        assert!(!q_symmetry_check(&q_series([(1, int(1))]), 0).unwrap());
    }
}
