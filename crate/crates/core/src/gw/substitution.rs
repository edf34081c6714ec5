//! The change of variables `q = −e^{iu}`, equivalently `Q^{1/2} = e^{iu/2}`.

use crate::algebra::binomial::factorial_rational;
use crate::algebra::gaussian::GaussianRational;
use crate::algebra::half_laurent::{HalfLaurentSeries, QVariable};
use crate::algebra::power_series::UPowerSeries;
use crate::algebra::ring::{int, Rational, Ring};
use crate::algebra::tpoly::TLaurentPoly;
use crate::error::{Error, Result};

/// Expands an exact `q`- or `Q`-series in `u` below `u^order`. Each term
/// `Q^{e/2}` becomes `e^{ieu/2}`; in `q` the term `q^m` becomes
/// `(−1)^m e^{imu}`. Coefficients in `t` pass through.
pub fn substitute_q_exponential(
    series: &HalfLaurentSeries,
    order: i64,
) -> Result<UPowerSeries<TLaurentPoly>> {
    if !series.is_exact() {
        return Err(Error::InexactInput);
    }
    if order < 1 {
        return Err(Error::InvalidArgument(format!(
            "order must be positive, got {order}"
        )));
    }
    let den = int(i64::from(series.exponent_denominator()));
    let mut acc = vec![TLaurentPoly::zero(); order as usize];
    for (e, c) in series.terms() {
        let mut c = c.clone();
        if series.variable() == QVariable::LowerQ && e % 2 != 0 {
            c = c.negated();
        }
        // (i e / den)^k / k!
        let step = GaussianRational::new(Rational::zero(), int(e) / &den);
        let mut power = GaussianRational::one();
        for (k, slot) in acc.iter_mut().enumerate() {
            let term = TLaurentPoly::constant(power.scaled(&factorial_rational(k as u64).recip()));
            *slot = slot.plus(&c.times(&term));
            power = power.times(&step);
        }
    }
    Ok(UPowerSeries::from_terms(
        acc.into_iter().enumerate().map(|(k, c)| (k as i64, c)),
        Some(order),
    ))
}

/// Drops the `t`-bookkeeping from a series whose coefficients are all
/// constant in `t`.
pub fn t_free(series: &UPowerSeries<TLaurentPoly>) -> Result<UPowerSeries<GaussianRational>> {
    let mut terms = Vec::new();
    for (e, c) in series.terms() {
        let g = c
            .as_constant()
            .ok_or_else(|| Error::TCollapse(format!("u^{e} coefficient depends on t")))?;
        terms.push((e, g));
    }
    Ok(UPowerSeries::from_terms(terms, series.order()))
}

/// Substitution for a `t`-free series.
pub fn substitute_scalar(
    series: &HalfLaurentSeries,
    order: i64,
) -> Result<UPowerSeries<GaussianRational>> {
    t_free(&substitute_q_exponential(series, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::power_series::{trig_series, TrigKind};
    use crate::algebra::ring::rat;
    use proptest::prelude::*;

    fn g(re: Rational, im: Rational) -> GaussianRational {
        GaussianRational::new(re, im)
    }

    #[test]
    fn half_difference_becomes_sine() {
        let s =
            HalfLaurentSeries::from_rationals(QVariable::UpperQ, 2, [(1, int(1)), (-1, int(-1))]);
        let u = substitute_scalar(&s, 6).unwrap();
        // 2i sin(u/2)
        let want = trig_series(TrigKind::Sin, &g(rat(1, 2), int(0)), 6).scale(&g(int(0), int(2)));
        assert_eq!(u, want);
        assert_eq!(u.coeff(1).unwrap(), g(int(0), int(1)));
        assert_eq!(u.coeff(3).unwrap(), g(int(0), rat(-1, 24)));
    }

    #[test]
    fn cosine_example() {
        let s = HalfLaurentSeries::from_rationals(
            QVariable::UpperQ,
            2,
            [(2, int(1)), (0, int(-2)), (-2, int(1))],
        );
        let u = substitute_scalar(&s, 6).unwrap();
        assert_eq!(u.coeff(0).unwrap(), GaussianRational::zero());
        assert_eq!(u.coeff(2).unwrap(), g(int(-1), int(0)));
        assert_eq!(u.coeff(4).unwrap(), g(rat(1, 12), int(0)));
        let constant = HalfLaurentSeries::from_rationals(QVariable::LowerQ, 1, [(0, rat(3, 7))]);
        let u = substitute_scalar(&constant, 4).unwrap();
        assert_eq!(
            u,
            UPowerSeries::from_terms([(0, g(rat(3, 7), int(0)))], Some(4))
        );
    }

    #[test]
    fn lower_and_upper_variables_agree() {
        let upper =
            HalfLaurentSeries::from_rationals(QVariable::UpperQ, 2, [(2, int(3)), (-4, rat(1, 2))]);
        let lower = upper.to_lower_q().unwrap();
        assert_eq!(
            substitute_scalar(&upper, 8).unwrap(),
            substitute_scalar(&lower, 8).unwrap()
        );
    }

    #[test]
    fn windowed_input_is_rejected() {
        let s =
            HalfLaurentSeries::from_rationals(QVariable::LowerQ, 1, [(0, int(1))]).restrict(-2, 2);
        assert_eq!(substitute_scalar(&s, 4), Err(Error::InexactInput));
    }

    #[test]
    fn t_passes_through() {
        let s = HalfLaurentSeries::new(
            QVariable::LowerQ,
            1,
            [(1, TLaurentPoly::t_pow(2))],
            crate::algebra::half_laurent::Extent::Exact,
        )
        .unwrap();
        let u = substitute_q_exponential(&s, 3).unwrap();
        assert_eq!(u.coeff(0).unwrap(), TLaurentPoly::from_int(-1).shift_t(2));
        assert!(t_free(&u).is_err());
    }

    fn small_series() -> impl Strategy<Value = HalfLaurentSeries> {
        proptest::collection::vec((-6i64..=6, -5i64..=5, 1i64..4), 0..5).prop_map(|v| {
            HalfLaurentSeries::from_rationals(
                QVariable::UpperQ,
                2,
                v.into_iter().map(|(e, n, d)| (e, rat(n, d))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn substitution_is_a_ring_homomorphism(a in small_series(), b in small_series()) {
            let n = 8;
            let prod = substitute_scalar(&a.mul(&b).unwrap(), n).unwrap();
            let separate = substitute_scalar(&a, n).unwrap().mul_capped(&substitute_scalar(&b, n).unwrap(), Some(n));
            prop_assert!(prod.agrees_below(&separate, n).unwrap());
            let sum = substitute_scalar(&a.add(&b).unwrap(), n).unwrap();
            prop_assert!(sum.agrees_below(&substitute_scalar(&a, n).unwrap().add(&substitute_scalar(&b, n).unwrap()), n).unwrap());
        }
    }
}
