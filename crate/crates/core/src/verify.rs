//! The verification grids behind `vertpairs verify`. Every check is exact;
//! a check whose computation errors counts as a failure and keeps the
//! error text.

use std::fmt;
use std::str::FromStr;

use crate::algebra::ring::{int, rat, rational_powi, sign_pow, Rational};
use crate::algebra::{factorial_rational, UPowerSeries};
use crate::error::{Error, Result};
use crate::gw::{
    extract_surface_invariant, gw_descendent_factor, gw_vertical_substituted, gw_vertical_trig,
    k_matrix, l_matrix, leading_order_check, mp_consistency, spin_hurwitz_vertical,
};
use crate::identities::{
    appendix_lhs, c_coefficients, leading_term_holds, pix_identity_check, recursion_kernel_check,
    solve_c_unique,
};
use crate::pairs::{
    gamma_resummation_check, total_alpha, vertical_bruteforce, vertical_closed,
    vertical_closed_descendents, ChiParity, Insertion, SurfaceGeometry,
};
use crate::partitions::enumerate_partitions;
use crate::GaussianRational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Suite {
    All,
    Closed,
    Oracle,
    Symmetry,
    Gw,
    Valuation,
    Hurwitz,
    Mp,
    Matrices,
    Appendix,
    Gamma,
}

impl Suite {
    pub const GRIDS: [Suite; 10] = [
        Suite::Closed,
        Suite::Oracle,
        Suite::Symmetry,
        Suite::Gw,
        Suite::Valuation,
        Suite::Hurwitz,
        Suite::Mp,
        Suite::Matrices,
        Suite::Appendix,
        Suite::Gamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Closed => "closed",
            Suite::Oracle => "oracle",
            Suite::Symmetry => "symmetry",
            Suite::Gw => "gw",
            Suite::Valuation => "valuation",
            Suite::Hurwitz => "hurwitz",
            Suite::Mp => "mp",
            Suite::Matrices => "matrices",
            Suite::Appendix => "appendix",
            Suite::Gamma => "gamma",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::GRIDS)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: Suite,
    pub label: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn count(&self) -> usize {
        self.checks.len()
    }

    fn record(&mut self, suite: Suite, label: String, outcome: Result<bool>) {
        let (passed, detail) = match outcome {
            Ok(ok) => (ok, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(Check {
            suite,
            label,
            passed,
            detail,
        });
    }

    fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "{status} [{}] {}", c.suite, c.label)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.count(), failed)
    }
}

pub fn run_suite(suite: Suite) -> Report {
    match suite {
        Suite::All => {
            let mut all = Report::default();
            for s in Suite::GRIDS {
                all.extend(run_suite(s));
            }
            all
        }
        Suite::Closed => closed_spot_check(),
        Suite::Oracle => oracle_grid(),
        Suite::Symmetry => symmetry_grid(),
        Suite::Gw => gw_grid(),
        Suite::Valuation => valuation_grid(),
        Suite::Hurwitz => hurwitz_grid(),
        Suite::Mp => mp_grid(),
        Suite::Matrices => matrices_check(),
        Suite::Appendix => appendix_grid(),
        Suite::Gamma => gamma_grid(),
    }
}

const PARITIES: [ChiParity; 2] = [ChiParity::Even, ChiParity::Odd];

/// Half-width of the oracle window `[−W, W]`.
pub const ORACLE_HALF_WIDTH: i64 = 10;

/// Order of the `u`-series comparisons: coefficients through `u^30`.
pub const GW_ORDER: i64 = 31;

fn geometries(hs: std::ops::RangeInclusive<i64>) -> Vec<SurfaceGeometry> {
    hs.flat_map(|h| PARITIES.map(|p| SurfaceGeometry { h, parity: p }))
        .collect()
}

/// Descendent lists of the oracle and symmetry grids.
pub fn oracle_insertion_sets() -> Vec<Vec<Insertion>> {
    [vec![], vec![0], vec![1], vec![2], vec![1, 1]]
        .into_iter()
        .map(|alphas| {
            alphas
                .into_iter()
                .map(|a| Insertion::new(a, int(1)))
                .collect()
        })
        .collect()
}

fn describe(g: &SurfaceGeometry, d: i64, ins: &[Insertion]) -> String {
    let list: Vec<String> = ins.iter().map(Insertion::to_string).collect();
    format!("d={d} h={} {} [{}]", g.h, g.parity, list.join(","))
}

pub fn closed_spot_check() -> Report {
    let mut r = Report::default();
    let outcome = vertical_closed(
        &SurfaceGeometry {
            h: 2,
            parity: ChiParity::Odd,
        },
        1,
    )
    .map(|s| s.to_text() == "-q^-1 - 2 - q");
    r.record(
        Suite::Closed,
        "d=1 h=2 odd is -q^-1 - 2 - q".into(),
        outcome,
    );
    r
}

fn oracle_case(g: &SurfaceGeometry, d: i64, ins: &[Insertion]) -> Result<bool> {
    let w = ORACLE_HALF_WIDTH;
    let (tp_closed, form) = vertical_closed_descendents(g, d, ins)?;
    let (tp_brute, brute) = vertical_bruteforce(g, d, ins, -w, w)?;
    if tp_closed != tp_brute {
        return Ok(false);
    }
    brute.agrees_on(&form.window(-w, w)?, -w, w)
}

pub fn oracle_grid() -> Report {
    let mut r = Report::default();
    for d in 1..=4 {
        for g in geometries(1..=4) {
            for ins in oracle_insertion_sets() {
                r.record(
                    Suite::Oracle,
                    describe(&g, d, &ins),
                    oracle_case(&g, d, &ins),
                );
            }
        }
    }
    r
}

pub fn symmetry_grid() -> Report {
    let mut r = Report::default();
    for d in 1..=4 {
        for g in geometries(1..=4) {
            for ins in oracle_insertion_sets() {
                let outcome = vertical_closed_descendents(&g, d, &ins)
                    .and_then(|(_, form)| form.is_q_symmetric(sign_pow(total_alpha(&ins))));
                r.record(Suite::Symmetry, describe(&g, d, &ins), outcome);
            }
        }
    }
    r
}

fn real_and_even(s: &UPowerSeries<GaussianRational>) -> bool {
    s.terms()
        .all(|(e, c)| c.is_real() && (e % 2 == 0 || c.re == int(0)))
}

fn gw_case(g: &SurfaceGeometry, d: i64) -> Result<bool> {
    let a = gw_vertical_substituted(g, d, GW_ORDER)?;
    let b = gw_vertical_trig(g, d, GW_ORDER)?;
    Ok(a.agrees_below(&b, GW_ORDER)? && real_and_even(&a) && real_and_even(&b))
}

pub fn gw_grid() -> Report {
    let mut r = Report::default();
    for d in 1..=5 {
        for g in geometries(1..=4) {
            r.record(Suite::Gw, describe(&g, d, &[]), gw_case(&g, d));
        }
    }
    r
}

fn valuation_case(g: &SurfaceGeometry, d: i64, ins: &[Insertion]) -> Result<bool> {
    let base_val = d * (2 * g.h - 2);
    let shift = 2 * total_alpha(ins);
    let order = base_val + shift + 2;
    let base = gw_vertical_substituted(g, d, order)?;
    let size = ins.iter().map(|i| i.alpha as usize + 1).max().unwrap_or(1);
    let (_, factor) = gw_descendent_factor(d, ins, order, &l_matrix(size))?;
    let full = base.mul_capped(&factor, Some(order));
    Ok(leading_order_check(&base, base_val)?
        && leading_order_check(&factor, shift)?
        && leading_order_check(&full, base_val + shift)?)
}

/// Descendent lists with every `α_j ≤ 5`: each single degree, and a few
/// multi-insertion mixes.
fn valuation_insertion_sets() -> Vec<Vec<Insertion>> {
    let mut sets: Vec<Vec<u32>> = (0..=5).map(|a| vec![a]).collect();
    sets.extend([vec![], vec![1, 1], vec![5, 2], vec![3, 0, 4]]);
    sets.into_iter()
        .map(|alphas| {
            alphas
                .into_iter()
                .map(|a| Insertion::new(a, int(1)))
                .collect()
        })
        .collect()
}

pub fn valuation_grid() -> Report {
    let mut r = Report::default();
    for d in 1..=5 {
        for g in geometries(1..=4) {
            for ins in valuation_insertion_sets() {
                r.record(
                    Suite::Valuation,
                    describe(&g, d, &ins),
                    valuation_case(&g, d, &ins),
                );
            }
        }
    }
    r
}

/// `(−1)^{χ} (2^{(d−1)/2}/d!)^{2−2h}`, evaluated through its square to
/// stay rational when `d` is even.
fn hurwitz_formula(g: &SurfaceGeometry, d: i64) -> Result<Rational> {
    let squared = rational_powi(&int(2), d - 1)?
        / (factorial_rational(d as u64) * factorial_rational(d as u64));
    Ok(int(g.sign()) * rational_powi(&squared, 1 - g.h)?)
}

fn hurwitz_case(g: &SurfaceGeometry, d: i64) -> Result<bool> {
    let order = d * (2 * g.h - 2) + 1;
    let extracted = extract_surface_invariant(g, d, &[], &gw_vertical_substituted(g, d, order)?)?;
    let want = hurwitz_formula(g, d)?;
    Ok(extracted == want && spin_hurwitz_vertical(g, d)? == want)
}

pub fn hurwitz_grid() -> Report {
    let mut r = Report::default();
    for d in 1..=5 {
        for g in geometries(1..=4) {
            r.record(Suite::Hurwitz, describe(&g, d, &[]), hurwitz_case(&g, d));
        }
    }
    for (d, want) in [(2, int(2)), (3, int(9))] {
        let g = SurfaceGeometry {
            h: 2,
            parity: ChiParity::Even,
        };
        let outcome = spin_hurwitz_vertical(&g, d).map(|v| v == want);
        r.record(Suite::Hurwitz, format!("d={d} h=2 even is {want}"), outcome);
    }
    r
}

/// Multisets of at most three degrees in `0..=5`, with pairings cycling
/// through a few nonzero rationals.
pub fn mp_insertion_sets() -> Vec<Vec<Insertion>> {
    let pairings = [int(1), rat(3, 2), int(-2)];
    let mut out = vec![vec![]];
    for a in 0..=5u32 {
        out.push(vec![a]);
        for b in a..=5 {
            out.push(vec![a, b]);
            for c in b..=5 {
                out.push(vec![a, b, c]);
            }
        }
    }
    out.into_iter()
        .map(|alphas| {
            alphas
                .into_iter()
                .zip(pairings.iter().cycle())
                .map(|(a, p)| Insertion::new(a, p.clone()))
                .collect()
        })
        .collect()
}

pub fn mp_grid() -> Report {
    let mut r = Report::default();
    for d in 1..=2 {
        for g in geometries(1..=4) {
            for ins in mp_insertion_sets() {
                let order = 2 * (d * g.kappa_sq() + total_alpha(&ins)) + 1;
                r.record(
                    Suite::Mp,
                    describe(&g, d, &ins),
                    mp_consistency(&g, d, &ins, order),
                );
            }
        }
    }
    let g = SurfaceGeometry {
        h: 2,
        parity: ChiParity::Odd,
    };
    let outcome = crate::gw::pipeline_invariant(&g, 1, &[Insertion::new(2, int(1))], 7)
        .map(|v| v == rat(-1, 240));
    r.record(
        Suite::Mp,
        "d=1 tau_2 with pairing 1, odd, is -1/240".into(),
        outcome,
    );
    r
}

pub fn matrices_check() -> Report {
    let mut r = Report::default();
    let size = 12;
    let product = k_matrix(size).and_then(|k| k.mul(&l_matrix(size)));
    r.record(
        Suite::Matrices,
        format!("K L = 1 at size {size}"),
        product.map(|p| p.is_identity()),
    );
    let entries = k_matrix(2).map(|k| {
        let minus_i = GaussianRational::new(int(0), int(-1));
        k.get(1, 1) == GaussianRational::real(int(1))
            && k.get(2, 2) == minus_i
            && k.get(2, 1) == minus_i
    });
    r.record(
        Suite::Matrices,
        "K11 = 1, K22 = -i, K21 = -i".into(),
        entries,
    );
    r
}

pub fn appendix_grid() -> Report {
    let mut r = Report::default();
    for alpha in 1..=12 {
        let lead = appendix_lhs(alpha, 2 * alpha + 2).and_then(|s| leading_term_holds(&s, alpha));
        r.record(Suite::Appendix, format!("alpha={alpha} leading term"), lead);
        if alpha >= 2 {
            let solved = solve_c_unique(alpha).and_then(|s| Ok(s == c_coefficients(alpha)?));
            r.record(
                Suite::Appendix,
                format!("alpha={alpha} unique solve"),
                solved,
            );
        }
    }
    r.record(
        Suite::Appendix,
        "bivariate identity to x^20, v^8".into(),
        pix_identity_check(12, 21, 9),
    );
    r.record(
        Suite::Appendix,
        "recursion kernel to x^16".into(),
        recursion_kernel_check(8, 17),
    );
    r
}

/// Every list of positive degrees with `|α| ≤ 5`, each also with one and
/// two degree-zero insertions appended.
pub fn gamma_alpha_sets() -> Vec<Vec<u32>> {
    let mut positive = vec![vec![]];
    for n in 1..=5 {
        let parts = enumerate_partitions(n).expect("partition sizes are positive");
        positive.extend(parts.iter().map(|p| p.parts().to_vec()));
    }
    let mut out = Vec::new();
    for p in positive {
        for zeros in 0..=2 {
            let mut alphas = p.clone();
            alphas.extend(std::iter::repeat_n(0, zeros));
            out.push(alphas);
        }
    }
    out
}

pub fn gamma_grid() -> Report {
    let mut r = Report::default();
    for d in 1..=4 {
        for alphas in gamma_alpha_sets() {
            r.record(
                Suite::Gamma,
                format!("d={d} alphas={alphas:?}"),
                Ok(gamma_resummation_check(d, &alphas)),
            );
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in std::iter::once(Suite::All).chain(Suite::GRIDS) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn hurwitz_formula_examples() {
        let g = SurfaceGeometry {
            h: 2,
            parity: ChiParity::Even,
        };
        assert_eq!(hurwitz_formula(&g, 2).unwrap(), int(2));
        assert_eq!(hurwitz_formula(&g, 3).unwrap(), int(9));
        let g = SurfaceGeometry {
            h: 3,
            parity: ChiParity::Odd,
        };
        assert_eq!(hurwitz_formula(&g, 1).unwrap(), int(-1));
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(oracle_insertion_sets().len(), 5);
        assert_eq!(mp_insertion_sets().len(), 84);
        assert!(gamma_alpha_sets()
            .iter()
            .all(|a| a.iter().sum::<u32>() <= 5));
    }

    #[test]
    fn failures_keep_error_text() {
        let mut r = Report::default();
        r.record(Suite::Gw, "x".into(), Err(Error::InexactInput));
        r.record(Suite::Gw, "y".into(), Ok(true));
        assert!(!r.passed());
        assert_eq!(r.failures().count(), 1);
        assert!(r
            .to_string()
            .contains("FAIL [gw] x: operation needs an exact series"));
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::Closed, Suite::Matrices] {
            let r = run_suite(s);
            assert!(r.passed(), "{r}");
        }
    }
}
