//! The coefficients `γ_a ∈ ℚ[t]` of `ω^a` in the product of descendent
//! integrands `Π_i [E(t)·Σ_{j<d} e^{ω−jt}]_{α_i}`, with `E(x) = (1−e^{−x})/x`.

use crate::algebra::binomial::{binom, factorial_rational};
use crate::algebra::ring::{int, Rational, Ring};
use crate::algebra::tpoly::TLaurentPoly;

/// `γ_a` for `a = 0..=|α|`; entries past the end are zero.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct GammaTable {
    entries: Vec<TLaurentPoly>,
}

impl GammaTable {
    pub fn get(&self, a: usize) -> TLaurentPoly {
        self.entries.get(a).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> &[TLaurentPoly] {
        &self.entries
    }

    fn trimmed(mut entries: Vec<TLaurentPoly>) -> Self {
        while entries.last().is_some_and(TLaurentPoly::is_zero) {
            entries.pop();
        }
        Self { entries }
    }
}

fn poly_mul(a: &[TLaurentPoly], b: &[TLaurentPoly]) -> Vec<TLaurentPoly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![TLaurentPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    out
}

fn product(factors: impl Iterator<Item = Vec<TLaurentPoly>>) -> GammaTable {
    let one = vec![TLaurentPoly::one()];
    GammaTable::trimmed(factors.fold(one, |acc, f| poly_mul(&acc, &f)))
}

/// Degree-`α` part of `E(t)·Σ_{j<d} e^{ω−jt}` as a polynomial in `ω`:
/// `Σ_j Σ_k (−t)^k/(k+1)! · (ω−jt)^{α−k}/(α−k)!`.
fn single_integrand(d: i64, alpha: u32) -> Vec<TLaurentPoly> {
    let alpha = i64::from(alpha);
    let mut out = vec![TLaurentPoly::zero(); alpha as usize + 1];
    for j in 0..d {
        for k in 0..=alpha {
            let m = alpha - k;
            let ek = int(if k % 2 == 0 { 1 } else { -1 }) / factorial_rational(k as u64 + 1);
            let inv_m = factorial_rational(m as u64).recip();
            for r in 0..=m {
                // ω^r · (−j t)^{m−r} · C(m, r)
                let jt = Rational::from_integer((-j).into()).pow((m - r) as i32);
                let c = &ek * &inv_m * binom(m, r) * jt;
                let term = TLaurentPoly::from_rational(&c).shift_t(k + m - r);
                out[r as usize] = out[r as usize].plus(&term);
            }
        }
    }
    out
}

pub fn gamma_coefficients(d: i64, alphas: &[u32]) -> GammaTable {
    product(alphas.iter().map(|&a| single_integrand(d, a)))
}

/// The same table read off the telescoped closed form
/// `t^{|α|} Π_j ((X/t)^{α_j+1} − (X/t − d)^{α_j+1}) / (α_j+1)!`.
pub fn gamma_telescoped(d: i64, alphas: &[u32]) -> GammaTable {
    product(alphas.iter().map(|&alpha| {
        let alpha = i64::from(alpha);
        let denom = factorial_rational(alpha as u64 + 1);
        (0..=alpha)
            .map(|a| {
                let minus_d = Rational::from_integer((-d).into()).pow((alpha + 1 - a) as i32);
                let c = -(binom(alpha + 1, a) * minus_d) / &denom;
                TLaurentPoly::from_rational(&c).shift_t(alpha - a)
            })
            .collect()
    }))
}

/// Checks the telescoping identity as an exact polynomial identity in `X, t`.
pub fn gamma_resummation_check(d: i64, alphas: &[u32]) -> bool {
    gamma_coefficients(d, alphas) == gamma_telescoped(d, alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;

    fn c(r: Rational, k: i64) -> TLaurentPoly {
        TLaurentPoly::from_rational(&r).shift_t(k)
    }

    #[test]
    fn degree_zero_insertion_is_d() {
        for d in 1..=5 {
            let g = gamma_coefficients(d, &[0]);
            assert_eq!(g.entries(), &[c(int(d), 0)]);
        }
    }

    #[test]
    fn degree_one_examples() {
        let g = gamma_coefficients(1, &[1]);
        assert_eq!(g.get(1), c(int(1), 0));
        assert_eq!(g.get(0), c(rat(-1, 2), 1));
        let g = gamma_coefficients(2, &[1]);
        assert_eq!(g.get(1), c(int(2), 0));
        assert_eq!(g.get(0), c(int(-2), 1));
        assert!(g.get(2).is_zero());
    }

    #[test]
    fn resummation_examples() {
        assert!(gamma_resummation_check(1, &[1]));
        assert!(gamma_resummation_check(3, &[0, 0]));
        assert_eq!(gamma_coefficients(3, &[0, 0]).get(0), c(int(9), 0));
        assert!(gamma_resummation_check(2, &[]));
        assert_eq!(gamma_coefficients(2, &[]).entries(), &[TLaurentPoly::one()]);
    }

    #[test]
    fn vanishes_above_total_degree() {
        let g = gamma_coefficients(3, &[2, 1]);
        assert_eq!(g.entries().len(), 4);
        for (a, entry) in g.entries().iter().enumerate() {
            for (k, _) in entry.terms() {
                assert_eq!(k + a as i64, 3, "γ_{a} must be homogeneous of degree |α|-a");
            }
        }
    }
}
