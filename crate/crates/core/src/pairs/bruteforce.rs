//! Term-by-term evaluation of the localised sum over nesting vectors,
//! before any resummation. This is the oracle for the closed formulas.
//!
//! The sum is finite on a finite `q`-window:
//! * `n_0` and every `δ_i` are bounded because each enters `χ` with a
//!   positive weight (`d` and `d−i`);
//! * `a ≤ |α|` because `γ_a` vanishes above the total descendent degree;
//! * `|j| ≤ n_0 − a` because the lower entry of the first binomial would
//!   otherwise be negative.

use crate::algebra::binomial::{binom, factorial_rational};
use crate::algebra::half_laurent::{Extent, HalfLaurentSeries, QVariable};
use crate::algebra::ring::{int, rational_powi, sign_pow, Rational, Ring};
use crate::algebra::tpoly::TLaurentPoly;
use crate::error::{Error, Result};
use crate::partitions::{enumerate_nestings, NestingVector};

use super::gamma::gamma_coefficients;
use super::geometry::{check_degree, total_alpha, Insertion, SurfaceGeometry};

/// The constant `B` multiplying the integral for one nesting vector:
/// `(−1)^{χ(O_S) + d(d−1)κ²/2 + Σn_i} (d!/d^d)^{κ²} (−d)^{n_{d−1}} Π_i i^{−δ_i} C(κ², δ_i)`.
pub fn b_constant(geom: &SurfaceGeometry, d: i64, nv: &NestingVector) -> Result<Rational> {
    let k2 = geom.kappa_sq();
    let mut acc = Rational::one();
    for (idx, delta) in nv.deltas().iter().enumerate() {
        let b = binom(k2, *delta);
        if b.is_zero() {
            return Ok(Rational::zero());
        }
        acc *= b * rational_powi(&int(idx as i64 + 1), -delta)?;
    }
    let sum_n: i64 = nv.entries().iter().sum();
    let sign = geom.sign() * sign_pow(d * (d - 1) / 2 * k2 + sum_n);
    let ratio = factorial_rational(d as u64) / rational_powi(&int(d), d)?;
    acc *= rational_powi(&ratio, k2)? * rational_powi(&int(-d), nv.last())? * int(sign);
    Ok(acc)
}

/// One summand of the integral of the tautological integrand:
/// `(dt)^{a−n_0} C(n_0 − n_{d−1} + (d+1)κ² − a − |j|, n_0 − a − |j|) Π_i (−d/i)^{j_i} C(κ²−δ_i, j_i)`.
/// Returned as `(coefficient, power of t)`.
pub fn answerint_term(
    geom: &SurfaceGeometry,
    d: i64,
    nv: &NestingVector,
    a: i64,
    j: &[i64],
) -> Result<(Rational, i64)> {
    check_degree(d)?;
    if j.len() != nv.d() - 1 {
        return Err(Error::InvalidArgument(format!(
            "expected {} summation indices, got {}",
            nv.d() - 1,
            j.len()
        )));
    }
    if a < 0 || j.iter().any(|&x| x < 0) {
        return Err(Error::InvalidArgument(
            "summation indices must be non-negative".into(),
        ));
    }
    let k2 = geom.kappa_sq();
    let n0 = nv.n0();
    let jsum: i64 = j.iter().sum();
    let mut c = rational_powi(&int(d), a - n0)?
        * binom(n0 - nv.last() + (d + 1) * k2 - a - jsum, n0 - a - jsum);
    for (idx, (ji, delta)) in j.iter().zip(nv.deltas()).enumerate() {
        let i = idx as i64 + 1;
        c *= rational_powi(&(int(-d) / int(i)), *ji)? * binom(k2 - delta, *ji);
    }
    Ok((c, a - n0))
}

/// `Σ_j` of [`answerint_term`] for fixed `a`, enumerating only the `j`
/// that can be nonzero.
pub(crate) fn answerint_sum(
    geom: &SurfaceGeometry,
    d: i64,
    nv: &NestingVector,
    a: i64,
) -> Result<Rational> {
    let k2 = geom.kappa_sq();
    let n0 = nv.n0();
    let budget = n0 - a;
    if budget < 0 {
        return Ok(Rational::zero());
    }
    let deltas = nv.deltas();
    // per-index factor tables (−d/i)^{j} C(κ²−δ_i, j)
    let mut tables = Vec::with_capacity(deltas.len());
    for (idx, delta) in deltas.iter().enumerate() {
        let i = idx as i64 + 1;
        let top = k2 - delta;
        let cap = if top >= 0 { top.min(budget) } else { budget };
        let step = int(-d) / int(i);
        let mut pw = Rational::one();
        let mut row = Vec::with_capacity(cap as usize + 1);
        for ji in 0..=cap {
            row.push(&pw * binom(top, ji));
            pw *= &step;
        }
        tables.push(row);
    }
    let base_top = n0 - nv.last() + (d + 1) * k2 - a;
    let mut total = Rational::zero();
    let mut j = vec![0i64; deltas.len()];
    walk(
        &tables,
        0,
        budget,
        &mut j,
        Rational::one(),
        &mut |j, weight| {
            let jsum: i64 = j.iter().sum();
            total += weight * binom(base_top - jsum, budget - jsum);
        },
    );
    Ok(total * rational_powi(&int(d), a - n0)?)
}

pub(crate) fn walk(
    tables: &[Vec<Rational>],
    idx: usize,
    budget: i64,
    j: &mut Vec<i64>,
    weight: Rational,
    f: &mut impl FnMut(&[i64], Rational),
) {
    if idx == tables.len() {
        f(j, weight);
        return;
    }
    for (ji, w) in tables[idx].iter().enumerate() {
        let ji = ji as i64;
        if ji > budget {
            break;
        }
        if w.is_zero() {
            continue;
        }
        j[idx] = ji;
        walk(tables, idx + 1, budget - ji, j, &weight * w, f);
    }
    j[idx] = 0;
}

/// Drives a per-nesting integral over the `q`-window, multiplies by `B`,
/// the pairings and `t^{n_0}`, then collapses the `t`-dependence, which
/// must be the single monomial `t^{expected_t}`.
pub(crate) fn sum_over_nestings(
    geom: &SurfaceGeometry,
    d: i64,
    lo: i64,
    hi: i64,
    prefactor: &Rational,
    expected_t: i64,
    mut integral: impl FnMut(&NestingVector) -> Result<TLaurentPoly>,
) -> Result<(i64, HalfLaurentSeries)> {
    check_degree(d)?;
    let k2 = geom.kappa_sq();
    let mut terms = Vec::new();
    for nv in enumerate_nestings(d, lo, hi, k2)? {
        let b = b_constant(geom, d, &nv)?;
        if b.is_zero() {
            continue;
        }
        let value = integral(&nv)?;
        let value = value.scaled(&(b * prefactor)).shift_t(nv.n0());
        terms.push((nv.euler_characteristic(k2), value));
    }
    let window = Extent::Window { lo: Some(lo), hi };
    let raw = HalfLaurentSeries::new(QVariable::LowerQ, 1, terms, window)?;
    let (power, series) = raw.collapse_t()?;
    match power {
        Some(p) if p != expected_t => Err(Error::TCollapse(format!(
            "sum collapsed to t^{p}, expected t^{expected_t}"
        ))),
        _ => Ok((expected_t, series)),
    }
}

pub(crate) fn pairing_product(insertions: &[Insertion]) -> Rational {
    insertions.iter().map(|i| i.pairing.clone()).product()
}

/// Brute-force evaluation on the `q`-window `[lo, hi]`; returns the global
/// `t`-power and the windowed `q`-series.
pub fn vertical_bruteforce(
    geom: &SurfaceGeometry,
    d: i64,
    insertions: &[Insertion],
    lo: i64,
    hi: i64,
) -> Result<(i64, HalfLaurentSeries)> {
    let alphas: Vec<u32> = insertions.iter().map(|i| i.alpha).collect();
    let gamma = gamma_coefficients(d, &alphas);
    sum_over_nestings(
        geom,
        d,
        lo,
        hi,
        &pairing_product(insertions),
        total_alpha(insertions),
        |nv| {
            let mut acc = TLaurentPoly::zero();
            for (a, g) in gamma.entries().iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let a = a as i64;
                let s = answerint_sum(geom, d, nv, a)?;
                acc = acc.plus(&g.scaled(&s).shift_t(a - nv.n0()));
            }
            Ok(acc)
        },
    )
}
