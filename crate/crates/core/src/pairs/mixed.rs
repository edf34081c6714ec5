//! Insertions of `τ_β(1)` alongside divisor descendents. There is no closed
//! form here, so the sum is evaluated two independent ways:
//!
//! * [`mixed_insertion_series`] expands each integrand upstairs on
//!   `C^{[n_0]} × C` as a polynomial in the universal divisor `Z` and the
//!   point class `P`, pushes it down with the rule for `π_*(Z^b)`, and
//!   integrates the product with the full expansion of the Chern classes
//!   via the Poincaré formula;
//! * [`mixed_insertion_series_direct`] writes the pushed-down class in
//!   closed form and integrates each monomial `ω^A θ^B` against the Chern
//!   classes with a summed formula.
//!
//! On `C^{[n_0]} × C`, write `Z = ω + η + n_0 P` with `η` the odd part, so
//! `P² = ηP = 0` and `η² = −2θP`. Then `π_*(Z^b) = b n_0 ω^{b−1} − b(b−1) ω^{b−2} θ`
//! and `π_*(P Z^b) = ω^b`.

use crate::algebra::binomial::{binom, factorial_rational};
use crate::algebra::half_laurent::HalfLaurentSeries;
use crate::algebra::ring::{int, rational_powi, Rational, Ring};
use crate::algebra::tpoly::TLaurentPoly;
use crate::error::{Error, Result};
use crate::partitions::NestingVector;

use super::bruteforce::{pairing_product, sum_over_nestings, walk};
use super::gamma::{gamma_coefficients, GammaTable};
use super::geometry::{total_alpha, Insertion, SurfaceGeometry};
use super::taut::{symmetric_product_integral, TautPoly};

/// How `π_*(Z^b)` is evaluated.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PushforwardRule {
    /// `b n_0 ω^{b−1} − b(b−1) ω^{b−2} θ`, which lowers degree by one.
    #[default]
    DegreeCorrect,
    /// Adds an extra `ω^b`. Only the part of the right degree survives the
    /// final degree selection.
    AsPrinted,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MixedOptions {
    /// Keep the `−(σ·κ/2)|_C` term of the descendent integrand.
    pub kappa_correction: bool,
    pub pushforward: PushforwardRule,
}

impl Default for MixedOptions {
    fn default() -> Self {
        Self {
            kappa_correction: true,
            pushforward: PushforwardRule::DegreeCorrect,
        }
    }
}

/// Taylor coefficient `e_k` of `E(t) = (1 − e^{−t})/t`.
fn e_coeff(k: i64) -> Rational {
    int(if k % 2 == 0 { 1 } else { -1 }) / factorial_rational(k as u64 + 1)
}

/// `x^m / m!` with `x` an integer.
fn exp_coeff(x: i64, m: i64) -> Rational {
    int(x).pow(m as i32) / factorial_rational(m as u64)
}

fn tmono(c: Rational, k: i64) -> TLaurentPoly {
    TLaurentPoly::rational(c).shift_t(k)
}

fn checked_n0(nv: &NestingVector) -> Result<u32> {
    u32::try_from(nv.n0()).map_err(|_| Error::InvalidArgument("n_0 too large".into()))
}

fn expected_t_power(divisors: &[Insertion], points: &[u32]) -> i64 {
    total_alpha(divisors) + points.iter().map(|&b| i64::from(b) - 1).sum::<i64>()
}

fn gamma_poly(gamma: &GammaTable) -> TautPoly {
    let mut p = TautPoly::zero();
    for (a, g) in gamma.entries().iter().enumerate() {
        p.add_term(a as u32, 0, g);
    }
    p
}

/// The class of `τ_β(1)` on `C^{[n_0]}`, built upstairs and pushed down.
fn point_class_pushed(
    geom: &SurfaceGeometry,
    nv: &NestingVector,
    beta: u32,
    opts: &MixedOptions,
) -> TautPoly {
    let beta = i64::from(beta);
    let target = beta - 1;
    let k2 = geom.kappa_sq();
    let n0 = nv.n0();
    let correction = if opts.kappa_correction {
        int(k2) / int(2)
    } else {
        int(0)
    };
    let mut out = TautPoly::zero();
    let mut keep = |omega: i64, theta: i64, t: i64, c: Rational| {
        if omega >= 0 && omega + theta + t == target && !c.is_zero() {
            out.add_term(omega as u32, theta as u32, &tmono(c, t));
        }
    };
    for (j, nj) in nv.entries().iter().enumerate() {
        let j = j as i64;
        let shift = nj - n0 - j * k2;
        for b in 0..=beta {
            let zb = factorial_rational(b as u64).recip();
            for m in 0..=beta - b {
                let em = exp_coeff(-j, m);
                for k in 0..=beta - b - m {
                    let w = &zb * &em;
                    let plain = &w * e_coeff(k);
                    let t = m + k;
                    // Z^b with no P: pushforward lowers the degree by one
                    if b >= 1 {
                        keep(b - 1, 0, t, &plain * int(b * n0));
                    }
                    if b >= 2 {
                        keep(b - 2, 1, t, -(&plain * int(b * (b - 1))));
                    }
                    if opts.pushforward == PushforwardRule::AsPrinted {
                        keep(b, 0, t, plain.clone());
                    }
                    // P·Z^b
                    let with_p = &w
                        * (int(shift) * e_coeff(k) + int(k2 * (k + 1)) * e_coeff(k + 1)
                            - &correction * e_coeff(k));
                    keep(b, 0, t, with_p);
                }
            }
        }
    }
    out
}

/// `c_{−1/dt}(E) Π_i c_{−1/it}(F_i)` as a polynomial in `ω, θ`, truncated
/// at degree `n_0`.
fn chern_expansion(geom: &SurfaceGeometry, d: i64, nv: &NestingVector) -> Result<TautPoly> {
    let n0 = checked_n0(nv)?;
    let top = nv.last() - d * geom.kappa_sq();
    let mut acc = TautPoly::zero();
    for k in 0..=i64::from(n0) {
        let mut term = TautPoly::zero();
        let theta = rational_powi(&int(d), -k)? / factorial_rational(k as u64);
        for l in 0..=i64::from(n0) - k {
            let c = &theta * rational_powi(&int(-d), -l)? * binom(top - k, l);
            term.add_term(l as u32, k as u32, &tmono(c, -k - l));
        }
        acc = acc.add(&term);
    }
    for (idx, delta) in nv.deltas().iter().enumerate() {
        let i = idx as i64 + 1;
        let mut f = TautPoly::zero();
        for l in 0..=i64::from(n0) {
            let c = rational_powi(&int(-i), -l)? * binom(geom.kappa_sq() - delta, l);
            f.add_term(l as u32, 0, &tmono(c, -l));
        }
        acc = acc.mul_truncated(&f, n0);
    }
    Ok(acc)
}

/// Mixed insertions via upstairs expansion, pushforward and the Poincaré
/// formula. Returns the global `t`-power and the windowed `q`-series.
pub fn mixed_insertion_series(
    geom: &SurfaceGeometry,
    d: i64,
    divisors: &[Insertion],
    points: &[u32],
    lo: i64,
    hi: i64,
    opts: &MixedOptions,
) -> Result<(i64, HalfLaurentSeries)> {
    let alphas: Vec<u32> = divisors.iter().map(|i| i.alpha).collect();
    let gamma = gamma_poly(&gamma_coefficients(d, &alphas));
    sum_over_nestings(
        geom,
        d,
        lo,
        hi,
        &pairing_product(divisors),
        expected_t_power(divisors, points),
        |nv| {
            let n0 = checked_n0(nv)?;
            let mut integrand = gamma.clone();
            for &beta in points {
                integrand = integrand.mul_truncated(&point_class_pushed(geom, nv, beta, opts), n0);
            }
            integrand = integrand.mul_truncated(&chern_expansion(geom, d, nv)?, n0);
            Ok(symmetric_product_integral(
                geom.kappa_sq() + 1,
                n0,
                &integrand,
            ))
        },
    )
}

/// Coefficient of `t^c` in `e^{−jt} E(t)`, read off
/// `(e^{−jt} − e^{−(j+1)t})/t`.
fn shifted_e(j: i64, c: i64) -> Rational {
    (int(-j).pow(c as i32 + 1) - int(-j - 1).pow(c as i32 + 1)) / factorial_rational(c as u64 + 1)
}

/// Coefficient of `t^c` in `e^{−jt} E'(t)`.
fn shifted_e_prime(j: i64, c: i64) -> Rational {
    (0..=c)
        .map(|m| exp_coeff(-j, m) * int(c - m + 1) * e_coeff(c - m + 1))
        .sum()
}

/// The pushed-down class of `τ_β(1)` in closed form: the degree `β−1` part
/// of `Σ_j e^{ω−jt}[E(t)(n_j − jκ² − θ − κ²/2) + κ² E'(t)]`.
fn point_class_closed(
    geom: &SurfaceGeometry,
    nv: &NestingVector,
    beta: u32,
    opts: &MixedOptions,
) -> TautPoly {
    let beta = i64::from(beta);
    let k2 = geom.kappa_sq();
    let correction = if opts.kappa_correction {
        int(k2) / int(2)
    } else {
        int(0)
    };
    let mut out = TautPoly::zero();
    for a in 0..beta {
        let inv_a = factorial_rational(a as u64).recip();
        let c = beta - 1 - a;
        let mut flat = Rational::zero();
        let mut theta = Rational::zero();
        for (j, nj) in nv.entries().iter().enumerate() {
            let j = j as i64;
            let weight = int(nj - j * k2) - &correction;
            flat += weight * shifted_e(j, c) + int(k2) * shifted_e_prime(j, c);
            if opts.pushforward == PushforwardRule::AsPrinted {
                flat += shifted_e(j, c);
            }
            if c >= 1 {
                theta -= shifted_e(j, c - 1);
            }
        }
        out.add_term(a as u32, 0, &tmono(&flat * &inv_a, c));
        if c >= 1 {
            out.add_term(a as u32, 1, &tmono(&theta * &inv_a, c - 1));
        }
    }
    out
}

/// `∫_{C^{[n_0]}} ω^A θ^B c_{−1/dt}(E) Π_i c_{−1/it}(F_i)`, summed term by
/// term over the binomial expansion. Returns the coefficient and the power
/// of `t`, which is always `A + B − n_0`.
pub fn chern_integral(
    geom: &SurfaceGeometry,
    d: i64,
    nv: &NestingVector,
    omega: i64,
    theta: i64,
) -> Result<(Rational, i64)> {
    let n0 = nv.n0();
    let budget = n0 - omega - theta;
    let t_power = -budget;
    if budget < 0 {
        return Ok((Rational::zero(), t_power));
    }
    let k2 = geom.kappa_sq();
    let h = k2 + 1;
    let top = nv.last() - d * k2;
    let mut tables = Vec::new();
    for (idx, delta) in nv.deltas().iter().enumerate() {
        let step = int(-1) / int(idx as i64 + 1);
        tables.push(
            (0..=budget)
                .map(|j| step.pow(j as i32) * binom(k2 - delta, j))
                .collect(),
        );
    }
    let inv_d = int(1) / int(d);
    let mut total = Rational::zero();
    for k in 0..=budget {
        let poincare = factorial_rational((k + theta) as u64) * binom(h, k + theta);
        if poincare.is_zero() {
            continue;
        }
        let lead = inv_d.pow(k as i32) / factorial_rational(k as u64) * poincare;
        let mut j = vec![0; tables.len()];
        walk(&tables, 0, budget - k, &mut j, lead, &mut |j, w| {
            let l = budget - k - j.iter().sum::<i64>();
            total += w * (-&inv_d).pow(l as i32) * binom(top - k, l);
        });
    }
    Ok((total, t_power))
}

/// Mixed insertions via the closed pushed-down class and the summed
/// integral formula. Independent of [`mixed_insertion_series`] apart from
/// the shared nesting and `B`-constant driver.
pub fn mixed_insertion_series_direct(
    geom: &SurfaceGeometry,
    d: i64,
    divisors: &[Insertion],
    points: &[u32],
    lo: i64,
    hi: i64,
    opts: &MixedOptions,
) -> Result<(i64, HalfLaurentSeries)> {
    let alphas: Vec<u32> = divisors.iter().map(|i| i.alpha).collect();
    let gamma = gamma_poly(&gamma_coefficients(d, &alphas));
    sum_over_nestings(
        geom,
        d,
        lo,
        hi,
        &pairing_product(divisors),
        expected_t_power(divisors, points),
        |nv| {
            let mut integrand = gamma.clone();
            for &beta in points {
                integrand = integrand.mul(&point_class_closed(geom, nv, beta, opts));
            }
            let mut acc = TLaurentPoly::zero();
            for ((a, b), c) in integrand.terms() {
                let (value, tp) = chern_integral(geom, d, nv, i64::from(a), i64::from(b))?;
                acc = acc.plus(&c.scaled(&value).shift_t(tp));
            }
            Ok(acc)
        },
    )
}

/// Runs both evaluators and fails unless they agree exactly.
pub fn mixed_dual_path(
    geom: &SurfaceGeometry,
    d: i64,
    divisors: &[Insertion],
    points: &[u32],
    lo: i64,
    hi: i64,
    opts: &MixedOptions,
) -> Result<(i64, HalfLaurentSeries)> {
    let a = mixed_insertion_series(geom, d, divisors, points, lo, hi, opts)?;
    let b = mixed_insertion_series_direct(geom, d, divisors, points, lo, hi, opts)?;
    if a != b {
        return Err(Error::DualPathMismatch(format!(
            "mixed insertions disagree: {} vs {}",
            a.1.to_text(),
            b.1.to_text()
        )));
    }
    Ok(a)
}
