//! The coefficients `c_n(α)` that make `Σ_n c_n(α) x^n sin(nx)/sin^n x`
//! vanish to order `x^{2α−1}`, their uniqueness, and the bivariate
//! generating identity in `(x, v)`.

use num_bigint::BigInt;

use crate::algebra::binomial::{double_factorial_odd, factorial_rational};
use crate::algebra::gaussian::GaussianRational;
use crate::algebra::power_series::{trig_series, TrigKind, UPowerSeries};
use crate::algebra::ring::{big, int, rat, Rational, Ring};
use crate::error::{Error, Result};

/// `c_1(α), …, c_α(α)`.
#[derive(Clone, PartialEq, Debug)]
pub struct CoefficientVector {
    pub alpha: i64,
    pub c: Vec<Rational>,
}

impl CoefficientVector {
    /// `c_n(α)`, zero outside `1..=α`.
    pub fn get(&self, n: i64) -> Rational {
        if n < 1 || n > self.alpha {
            return Rational::zero();
        }
        self.c[(n - 1) as usize].clone()
    }
}

fn check_alpha(alpha: i64) -> Result<()> {
    if alpha <= 0 {
        return Err(Error::InvalidArgument(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok(())
}

/// `Σ_{k=1}^{n} (−1)^{n−k} k^{n−α} / (k!(n−k)!)` for any `n ≥ 1`.
pub fn c_value(n: i64, alpha: i64) -> Rational {
    (1..=n)
        .map(|k| {
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            int(sign) * int(k).pow((n - alpha) as i32)
                / (factorial_rational(k as u64) * factorial_rational((n - k) as u64))
        })
        .sum()
}

pub fn c_coefficients(alpha: i64) -> Result<CoefficientVector> {
    check_alpha(alpha)?;
    Ok(CoefficientVector {
        alpha,
        c: (1..=alpha).map(|n| c_value(n, alpha)).collect(),
    })
}

/// `(sin(nx)/x)·(x/sin x)^n`, known below `x^order`. Both factors are
/// ordinary power series, so no principal part ever appears.
pub fn sin_multiple_ratio(n: i64, order: i64) -> Result<UPowerSeries<Rational>> {
    let sinc = trig_series(TrigKind::Sin, &int(1), order + 1).shift(-1);
    let x_over_sin = sinc.inverse(order)?;
    let numerator = trig_series(TrigKind::Sin, &int(n), order + 1).shift(-1);
    Ok(numerator.mul_capped(&x_over_sin.pow_capped(n as u32, Some(order)), Some(order)))
}

/// `x^n sin(nx)/sin^n x`, known below `x^order`.
pub fn sin_power_term(n: i64, order: i64) -> Result<UPowerSeries<Rational>> {
    Ok(sin_multiple_ratio(n, order - 1)?.shift(1))
}

fn combination(c: &[Rational], order: i64) -> Result<UPowerSeries<Rational>> {
    let mut acc = UPowerSeries::big_o(order);
    for (idx, cn) in c.iter().enumerate() {
        if !cn.is_zero() {
            acc = acc.add(&sin_power_term(idx as i64 + 1, order)?.scale(cn));
        }
    }
    Ok(acc)
}

/// `Σ_{n=1}^{α} c_n(α) x^n sin(nx)/sin^n x` below `x^order`.
pub fn appendix_lhs(alpha: i64, order: i64) -> Result<UPowerSeries<Rational>> {
    combination(&c_coefficients(alpha)?.c, order)
}

/// Does `series` vanish below `x^{2α−1}` with coefficient `1/(2α−1)!!` there?
pub fn leading_term_holds(series: &UPowerSeries<Rational>, alpha: i64) -> Result<bool> {
    let lead = 2 * alpha - 1;
    for e in series.valuation().unwrap_or(lead).min(lead)..lead {
        if !series.coeff(e)?.is_zero() {
            return Ok(false);
        }
    }
    let want = big(BigInt::from(1)) / big(double_factorial_odd(alpha)?);
    Ok(series.coeff(lead)? == want)
}

/// Full-pivot Gaussian elimination for a square system `m·x = rhs`.
fn solve_full_pivot(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = rhs.len();
    let mut cols: Vec<usize> = (0..n).collect();
    for step in 0..n {
        let pivot = (step..n)
            .flat_map(|r| (step..n).map(move |c| (r, c)))
            .find(|&(r, c)| !m[r][c].is_zero())
            .ok_or(Error::SingularSystem)?;
        let (pr, pc) = pivot;
        m.swap(step, pr);
        rhs.swap(step, pr);
        for row in m.iter_mut() {
            row.swap(step, pc);
        }
        cols.swap(step, pc);
        let inv = m[step][step].recip();
        let pivot = m[step].clone();
        for r in step + 1..n {
            if m[r][step].is_zero() {
                continue;
            }
            let f = &m[r][step] * &inv;
            for (cell, p) in m[r][step..].iter_mut().zip(&pivot[step..]) {
                *cell -= &f * p;
            }
            let delta = &f * &rhs[step];
            rhs[r] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for step in (0..n).rev() {
        let mut s = rhs[step].clone();
        for c in step + 1..n {
            s -= &m[step][c] * &x[c];
        }
        x[step] = s / &m[step][step];
    }
    let mut out = vec![Rational::zero(); n];
    for (pos, &col) in cols.iter().enumerate() {
        out[col] = x[pos].clone();
    }
    Ok(out)
}

/// Recovers `c_1(α)…c_α(α)` from the order condition alone: `c_α` is fixed
/// to `(−1)^{α−1}/α!` and the rest solve the vanishing of the odd
/// coefficients `x^1, x^3, …, x^{2α−3}`.
pub fn solve_c_unique(alpha: i64) -> Result<CoefficientVector> {
    check_alpha(alpha)?;
    let order = 2 * alpha;
    let terms: Vec<UPowerSeries<Rational>> = (1..=alpha)
        .map(|n| sin_power_term(n, order))
        .collect::<Result<_>>()?;
    let top = int(if alpha % 2 == 1 { 1 } else { -1 }) / factorial_rational(alpha as u64);
    let k = (alpha - 1) as usize;
    let mut m = vec![vec![Rational::zero(); k]; k];
    let mut rhs = vec![Rational::zero(); k];
    for i in 0..k {
        let e = 2 * i as i64 + 1;
        for (n, row) in m[i].iter_mut().enumerate() {
            *row = terms[n].coeff(e)?;
        }
        rhs[i] = -(&top * terms[k].coeff(e)?);
    }
    let mut c = solve_full_pivot(m, rhs)?;
    c.push(top);
    Ok(CoefficientVector { alpha, c })
}

/// `Π_{k=1}^{n} 1/(v+k)` as a power series in `v` below `v^order`.
fn inverse_rising(n: i64, order: i64) -> UPowerSeries<Rational> {
    let mut acc = UPowerSeries::one().truncate(order);
    for k in 1..=n {
        let geometric = (0..order).map(|m| (m, int(-1).pow(m as i32) / int(k).pow(m as i32 + 1)));
        acc = acc.mul_capped(
            &UPowerSeries::from_terms(geometric, Some(order)),
            Some(order),
        );
    }
    acc
}

/// Partial fractions `1/((v+1)⋯(v+n)) = Σ_k (−1)^{k−1}/((k−1)!(n−k)!)·1/(v+k)`
/// at a rational point `v`.
pub fn partial_fraction_holds(n: i64, v: &Rational) -> bool {
    let direct: Rational = (1..=n).map(|k| (v + int(k)).recip()).product();
    let split: Rational = (1..=n)
        .map(|k| {
            let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
            int(sign)
                / (factorial_rational((k - 1) as u64) * factorial_rational((n - k) as u64))
                / (v + int(k))
        })
        .sum();
    direct == split
}

/// Checks the generating identity in `(x, v)`:
/// `Σ_α (−v)^{α−1} Σ_n c_n(α) S_n(x) = Σ_n S_n(x) v^n / (v(v+1)⋯(v+n))`
/// with `S_n = x^n sin(nx)/sin^n x`, below `x^{x_order}` and for every power
/// `v^m` with `m < min(alpha_max, v_order)`, which the left side truncated
/// at `α ≤ alpha_max` fully determines. Also checks the partial-fraction
/// step at sample points and its expansion against `c_n(α)`.
pub fn pix_identity_check(alpha_max: i64, x_order: i64, v_order: i64) -> Result<bool> {
    if x_order <= 0 {
        return Ok(true);
    }
    let m_max = alpha_max.min(v_order);
    let terms: Vec<UPowerSeries<Rational>> = (1..=m_max)
        .map(|n| sin_power_term(n, x_order))
        .collect::<Result<_>>()?;
    let rising: Vec<UPowerSeries<Rational>> =
        (1..=m_max).map(|n| inverse_rising(n, m_max)).collect();
    for m in 0..m_max {
        // left: (−1)^m Σ_{n≤m+1} c_n(m+1) S_n
        let alpha = m + 1;
        let sign = int(if m % 2 == 0 { 1 } else { -1 });
        let mut lhs = UPowerSeries::big_o(x_order);
        for n in 1..=alpha {
            lhs = lhs.add(&terms[(n - 1) as usize].scale(&(&sign * c_value(n, alpha))));
        }
        // right: Σ_n S_n [v^{m−n+1}] Π_k 1/(v+k)
        let mut rhs = UPowerSeries::big_o(x_order);
        for n in 1..=m + 1 {
            let w = rising[(n - 1) as usize].coeff(m - n + 1)?;
            rhs = rhs.add(&terms[(n - 1) as usize].scale(&w));
        }
        if !lhs.agrees_below(&rhs, x_order)? {
            return Ok(false);
        }
    }
    for n in 1..=m_max {
        for v in [int(1), int(2), rat(1, 3), rat(-7, 2)] {
            if !partial_fraction_holds(n, &v) {
                return Ok(false);
            }
        }
        let expansion = inverse_rising(n, v_order);
        for r in 0..v_order {
            let alpha = n + r;
            let sign = int(if (alpha - 1) % 2 == 0 { 1 } else { -1 });
            if expansion.coeff(r)? != sign * c_value(n, alpha) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn real(s: &UPowerSeries<Rational>) -> UPowerSeries<GaussianRational> {
    s.map_coeffs(|c| GaussianRational::real(c.clone()))
}

/// The kernel `f(x) = x + (1/x)(1 − x/tan x)²` below `x^order`.
pub fn recursion_kernel(order: i64) -> Result<UPowerSeries<Rational>> {
    let sinc = trig_series(TrigKind::Sin, &int(1), order + 3).shift(-1);
    let x_over_sin = sinc.inverse(order + 2)?;
    let x_cot =
        trig_series(TrigKind::Cos, &int(1), order + 2).mul_capped(&x_over_sin, Some(order + 2));
    let gap = UPowerSeries::one().sub(&x_cot);
    let square = gap.mul_capped(&gap, Some(order + 1)).shift(-1);
    Ok(UPowerSeries::<Rational>::var().add(&square).truncate(order))
}

/// Verifies, below `x^order`:
/// * the kernel agrees with `(1/y − 1)·y'` for `y = x e^{ix}/sin x`;
/// * `O_α' = f·O_{α−1}` for `2 ≤ α ≤ alpha_max`, with `O_α` the appendix
///   combination;
/// * `O_α` is the imaginary part of `Σ_n c_n(α) y^n`, whose real part is even.
pub fn recursion_kernel_check(alpha_max: i64, order: i64) -> Result<bool> {
    let f = recursion_kernel(order)?;
    let x_over_sin = trig_series(TrigKind::Sin, &int(1), order + 2)
        .shift(-1)
        .inverse(order + 1)?;
    let y = trig_series(TrigKind::Exp, &GaussianRational::i(), order + 1)
        .mul_capped(&real(&x_over_sin), Some(order + 1));
    let y_inv = y.inverse(order + 1)?;
    let dual = y_inv
        .sub(&UPowerSeries::one())
        .mul_capped(&y.derivative(), Some(order));
    if !dual.agrees_below(&real(&f), order)? {
        return Ok(false);
    }
    let mut prev = appendix_lhs(1, order + 1)?;
    for alpha in 2..=alpha_max {
        let next = appendix_lhs(alpha, order + 1)?;
        let rhs = f.mul_capped(&prev, Some(order));
        if !next.derivative().agrees_below(&rhs, order)? {
            return Ok(false);
        }
        prev = next;
    }
    for alpha in 1..=alpha_max {
        let c = c_coefficients(alpha)?;
        let mut acc = UPowerSeries::<GaussianRational>::big_o(order);
        let mut y_pow = UPowerSeries::one();
        for n in 1..=alpha {
            y_pow = y_pow.mul_capped(&y, Some(order));
            acc = acc.add(&y_pow.scale_rational(&c.get(n)));
        }
        let lhs = appendix_lhs(alpha, order)?;
        for e in 0..order {
            let v = acc.coeff(e)?;
            let want_im = lhs.coeff(e)?;
            if v.im != want_im || (e % 2 == 1 && !v.re.is_zero()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn coefficient_examples() {
        assert_eq!(c_coefficients(1).unwrap().c, vec![int(1)]);
        assert_eq!(c_coefficients(2).unwrap().c, vec![int(1), rat(-1, 2)]);
        assert_eq!(c_coefficients(3).unwrap().get(3), rat(1, 6));
        assert!(c_coefficients(0).is_err());
    }

    #[test]
    fn normalisation() {
        for alpha in 1..=12 {
            let sign = if alpha % 2 == 1 { 1 } else { -1 };
            assert_eq!(
                c_value(alpha, alpha),
                int(sign) / factorial_rational(alpha as u64)
            );
        }
    }

    #[test]
    fn appendix_examples() {
        let s = appendix_lhs(1, 9).unwrap();
        assert_eq!(s, UPowerSeries::from_terms([(1, int(1))], Some(9)));
        let s = appendix_lhs(2, 7).unwrap();
        assert_eq!(s.coeff(3).unwrap(), rat(1, 3));
        assert_eq!(s.coeff(5).unwrap(), rat(1, 45));
        assert!(s.coeff(1).unwrap().is_zero());
        assert_eq!(appendix_lhs(3, 7).unwrap().coeff(5).unwrap(), rat(1, 15));
    }

    #[test]
    fn leading_terms_up_to_twelve() {
        for alpha in 1..=12 {
            let s = appendix_lhs(alpha, 2 * alpha + 3).unwrap();
            assert!(leading_term_holds(&s, alpha).unwrap(), "alpha={alpha}");
            for e in (0..2 * alpha + 3).step_by(2) {
                assert!(
                    s.coeff(e).unwrap().is_zero(),
                    "even power {e} at alpha={alpha}"
                );
            }
        }
    }

    #[test]
    fn uniqueness_solve_reproduces_closed_form() {
        for alpha in 1..=12 {
            assert_eq!(
                solve_c_unique(alpha).unwrap(),
                c_coefficients(alpha).unwrap(),
                "alpha={alpha}"
            );
        }
    }

    #[test]
    fn vanishing_beyond_alpha() {
        for alpha in 1..=8 {
            for n in alpha + 1..=2 * alpha {
                assert!(c_value(n, alpha).is_zero(), "c_{n}({alpha})");
            }
        }
    }

    #[test]
    fn pix_examples() {
        assert!(pix_identity_check(1, 8, 4).unwrap());
        assert!(pix_identity_check(6, 20, 8).unwrap());
        assert!(pix_identity_check(3, 0, 3).unwrap());
    }

    #[test]
    fn partial_fractions_fail_when_perturbed() {
        assert!(partial_fraction_holds(4, &rat(2, 5)));
        let v = rat(2, 5);
        let direct: Rational = (1..=4).map(|k| (&v + int(k)).recip()).product();
        assert_ne!(direct, (&v + int(1)).recip());
    }

    #[test]
    fn kernel_and_recursion() {
        let f = recursion_kernel(9).unwrap();
        assert_eq!(f.coeff(1).unwrap(), int(1));
        assert_eq!(f.coeff(3).unwrap(), rat(1, 9));
        assert!(recursion_kernel_check(6, 16).unwrap());
    }

    #[test]
    fn full_pivot_handles_zero_leading_entry() {
        let m = vec![vec![int(0), int(1)], vec![int(2), int(3)]];
        assert_eq!(
            solve_full_pivot(m, vec![int(1), int(7)]).unwrap(),
            vec![int(2), int(1)]
        );
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(
            solve_full_pivot(singular, vec![int(0), int(0)]),
            Err(Error::SingularSystem)
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn perturbing_a_coefficient_breaks_the_order(alpha in 2i64..9, slot in 0usize..8) {
            let n = slot % (alpha as usize - 1);
            let mut c = c_coefficients(alpha).unwrap().c;
            c[n] += int(1);
            let s = combination(&c, 2 * alpha).unwrap();
            let broken = (0..2 * alpha - 1).any(|e| !s.coeff(e).unwrap().is_zero());
            prop_assert!(broken);
        }
    }
}
