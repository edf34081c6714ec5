//! The vertical Gromov-Witten series: by substitution into the closed
//! stable-pairs product and, independently, from its trigonometric form.

use crate::algebra::gaussian::GaussianRational;
use crate::algebra::power_series::{trig_series, TrigKind, UPowerSeries};
use crate::algebra::ring::{int, rat, rational_powi, Rational, Ring};
use crate::error::{Error, Result};
use crate::identities::sin_multiple_ratio;
use crate::pairs::closed::vertical_closed;
use crate::pairs::geometry::{check_degree, total_alpha, Insertion, SurfaceGeometry};

use super::matrices::GaussTriangularMatrix;
use super::substitution::substitute_scalar;

fn check_order(order: i64) -> Result<()> {
    if order < 1 {
        return Err(Error::InvalidArgument(format!(
            "order must be positive, got {order}"
        )));
    }
    Ok(())
}

fn real(s: &UPowerSeries<Rational>) -> UPowerSeries<GaussianRational> {
    s.map_coeffs(|c| GaussianRational::real(c.clone()))
}

/// Substitution of `q = −e^{iu}` into the closed product.
pub fn gw_vertical_substituted(
    geom: &SurfaceGeometry,
    d: i64,
    order: i64,
) -> Result<UPowerSeries<GaussianRational>> {
    check_order(order)?;
    substitute_scalar(&vertical_closed(geom, d)?, order)
}

/// `Σ_k c_k cos(k u)` plus a constant, below `u^order`.
fn cosines(constant: Rational, terms: &[(Rational, i64)], order: i64) -> UPowerSeries<Rational> {
    let mut acc = UPowerSeries::constant(constant).truncate(order);
    for (c, k) in terms {
        acc = acc.add(&trig_series(TrigKind::Cos, &int(*k), order).scale(c));
    }
    acc
}

/// The trigonometric closed form, with every factor of non-negative
/// valuation expanded below `u^order`.
pub fn gw_vertical_trig(
    geom: &SurfaceGeometry,
    d: i64,
    order: i64,
) -> Result<UPowerSeries<GaussianRational>> {
    check_degree(d)?;
    check_order(order)?;
    let e = geom.kappa_sq();
    if e < 0 {
        return Err(Error::InvalidArgument(
            "the trigonometric form needs h >= 1".into(),
        ));
    }
    let e = e as u32;
    let cap = Some(order);
    let half = rat(d, 2);
    let sine = trig_series(TrigKind::Sin, &half, order).scale(&int(2));
    let mut acc = sine.pow_capped(2 * e, cap);
    if d % 2 == 0 {
        let bracket = trig_series(TrigKind::Cos, &half, order)
            .scale(&int(d))
            .sub(&UPowerSeries::constant(int(d)));
        acc = acc.mul_capped(&bracket.pow_capped(e, cap), cap);
    }
    for j in 1..=(d - 1) / 2 {
        // 2·[d² + j² − jd + j(d−j)cos(du) − d(d−j)cos(ju) − jd cos((d−j)u)]
        let bracket = cosines(
            int(d * d + j * j - j * d),
            &[
                (int(j * (d - j)), d),
                (int(-d * (d - j)), j),
                (int(-j * d), d - j),
            ],
            order,
        )
        .scale(&int(2));
        acc = acc.mul_capped(&bracket.pow_capped(e, cap), cap);
    }
    let prefactor = rational_powi(&int(-d), i64::from(e) * (1 - d))? * int(geom.sign());
    Ok(real(&acc.scale(&prefactor).truncate(order)))
}

/// The vertical series, computed both ways; disagreement is an error.
pub fn gw_vertical(
    geom: &SurfaceGeometry,
    d: i64,
    order: i64,
) -> Result<UPowerSeries<GaussianRational>> {
    let a = gw_vertical_substituted(geom, d, order)?;
    let b = gw_vertical_trig(geom, d, order)?;
    if !a.agrees_below(&b, order)? {
        return Err(Error::DualPathMismatch(format!(
            "substitution {} vs trigonometric {}",
            a.to_text("u"),
            b.to_text("u")
        )));
    }
    Ok(a)
}

/// The correction factor for divisor descendents, conditional on the
/// correspondence matrix being `t^{a−b} L_ab u^{b−1}`. Returns the `t`-power
/// `|α|` and the `u`-series
/// `Π_j Σ_{b=1}^{α_j+1} (−i)^{b−1} L_{α_j+1,b}/b! · x^{b−1} sin(bx)/sin^b x`
/// at `x = du/2`.
pub fn gw_descendent_factor(
    d: i64,
    insertions: &[Insertion],
    order: i64,
    l: &GaussTriangularMatrix,
) -> Result<(i64, UPowerSeries<GaussianRational>)> {
    check_degree(d)?;
    check_order(order)?;
    let scale = GaussianRational::real(rat(d, 2));
    let mut acc = UPowerSeries::one().truncate(order);
    for ins in insertions {
        let a = ins.alpha as usize + 1;
        if l.size() < a {
            return Err(Error::InvalidArgument(format!(
                "matrix of size {} is too small for descendent degree {}",
                l.size(),
                ins.alpha
            )));
        }
        let mut factor = UPowerSeries::big_o(order);
        for b in 1..=a {
            let weight = GaussianRational::i_pow(1 - b as i64)
                .times(&l.get(a, b))
                .scaled(&crate::algebra::binomial::factorial_rational(b as u64).recip());
            factor = factor.add(&real(&sin_multiple_ratio(b as i64, order)?).scale(&weight));
        }
        acc = acc.mul_capped(&factor.rescale_variable(&scale)?, Some(order));
    }
    Ok((total_alpha(insertions), acc))
}

/// True iff every coefficient below `u^v` vanishes and the one at `u^v` does not.
pub fn leading_order_check<C: Ring>(
    series: &UPowerSeries<C>,
    expected_valuation: i64,
) -> Result<bool> {
    let nonzero_below = series
        .terms()
        .any(|(e, c)| e < expected_valuation && !c.is_zero());
    Ok(!nonzero_below && !series.coeff(expected_valuation)?.is_zero())
}

/// `2g − 2` for the class `dκ` with divisor descendents: `g = 1 + dκ² + |α|`.
pub fn leading_exponent(geom: &SurfaceGeometry, d: i64, insertions: &[Insertion]) -> i64 {
    2 * (d * geom.kappa_sq() + total_alpha(insertions))
}

/// Coefficient of `u^{2g−2}` of a `t`-stripped series, after checking every
/// lower coefficient vanishes.
pub fn extract_surface_invariant(
    geom: &SurfaceGeometry,
    d: i64,
    insertions: &[Insertion],
    series: &UPowerSeries<GaussianRational>,
) -> Result<Rational> {
    let lead = leading_exponent(geom, d, insertions);
    for (e, c) in series.terms() {
        if e < lead && !c.is_zero() {
            return Err(Error::NonvanishingLowerOrder {
                variable: "u",
                exponent: e,
                value: c.to_string(),
            });
        }
    }
    let c = series.coeff(lead)?;
    if !c.is_real() {
        return Err(Error::InvalidArgument(format!(
            "surface invariant {c} is not real"
        )));
    }
    Ok(c.re)
}
