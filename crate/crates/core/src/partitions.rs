//! Partitions, strict partitions and nesting vectors `n_0 ≤ … ≤ n_{d-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored densely as non-increasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(
                "partition parts must be positive".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be non-increasing: {parts:?}"
            )));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// The conjugate partition.
    pub fn transpose(&self) -> Self {
        let cols = self.0.first().copied().unwrap_or(0);
        Self(
            (1..=cols)
                .map(|c| self.0.iter().take_while(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_size(d: i64) -> Result<u32> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!(
            "partition size must be positive, got {d}"
        )));
    }
    u32::try_from(d).map_err(|_| Error::InvalidArgument(format!("partition size {d} too large")))
}

/// All partitions of `d`, lexicographically decreasing.
pub fn enumerate_partitions(d: i64) -> Result<Vec<Partition>> {
    let d = check_size(d)?;
    let mut out = Vec::new();
    fill(d, d, false, &mut Vec::new(), &mut out);
    Ok(out)
}

/// All partitions of `d` into distinct parts, lexicographically decreasing.
pub fn enumerate_strict_partitions(d: i64) -> Result<Vec<Partition>> {
    let d = check_size(d)?;
    let mut out = Vec::new();
    fill(d, d, true, &mut Vec::new(), &mut out);
    Ok(out)
}

fn fill(rest: u32, max: u32, strict: bool, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(prefix.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        prefix.push(p);
        fill(
            rest - p,
            if strict { p - 1 } else { p },
            strict,
            prefix,
            out,
        );
        prefix.pop();
    }
}

/// Lengths `n_0 ≤ n_1 ≤ … ≤ n_{d-1}` of a flag of divisors on the
/// canonical curve.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct NestingVector(Vec<i64>);

impl NestingVector {
    pub fn new(n: Vec<i64>) -> Result<Self> {
        if n.is_empty() {
            return Err(Error::InvalidArgument(
                "nesting vector needs d >= 1 entries".into(),
            ));
        }
        if n[0] < 0 || n.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(format!(
                "nesting vector must be non-negative and non-decreasing: {n:?}"
            )));
        }
        Ok(Self(n))
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn n0(&self) -> i64 {
        self.0[0]
    }

    pub fn last(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    /// `δ_i = n_i − n_{i−1}` for `i = 1..d−1`.
    pub fn deltas(&self) -> Vec<i64> {
        self.0.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// `Σ_i (n_i − (i+1)κ²)`.
    pub fn euler_characteristic(&self, kappa_sq: i64) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, n)| n - (i as i64 + 1) * kappa_sq)
            .sum()
    }
}

impl fmt::Display for NestingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Every nesting vector of length `d` whose Euler characteristic lies in
/// `[lo, hi]`.
///
/// `χ = d·n_0 + Σ_i (d−i)·δ_i − d(d+1)κ²/2`, and every weight is at least 1,
/// so the partial sum only grows and each branch is cut as soon as it
/// passes `hi`. `n_0` is the outer loop, the `δ_i` inner.
pub fn enumerate_nestings(d: i64, lo: i64, hi: i64, kappa_sq: i64) -> Result<Vec<NestingVector>> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!(
            "d must be positive, got {d}"
        )));
    }
    let mut out = Vec::new();
    if lo > hi {
        return Ok(out);
    }
    let base = -d * (d + 1) * kappa_sq / 2;
    let mut n0 = 0;
    while base + d * n0 <= hi {
        let mut n = vec![n0];
        push_deltas(d, 1, base + d * n0, lo, hi, &mut n, &mut out);
        n0 += 1;
    }
    Ok(out)
}

fn push_deltas(
    d: i64,
    i: i64,
    chi: i64,
    lo: i64,
    hi: i64,
    n: &mut Vec<i64>,
    out: &mut Vec<NestingVector>,
) {
    if i == d {
        if chi >= lo {
            out.push(NestingVector(n.clone()));
        }
        return;
    }
    let weight = d - i;
    let prev = *n.last().expect("n_0 is always present");
    let mut delta = 0;
    while chi + weight * delta <= hi {
        n.push(prev + delta);
        push_deltas(d, i + 1, chi + weight * delta, lo, hi, n, out);
        n.pop();
        delta += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn strict_partitions_small() {
        assert_eq!(enumerate_strict_partitions(1).unwrap(), vec![p(&[1])]);
        assert_eq!(
            enumerate_strict_partitions(4).unwrap(),
            vec![p(&[4]), p(&[3, 1])]
        );
        assert!(enumerate_strict_partitions(7)
            .unwrap()
            .contains(&p(&[4, 2, 1])));
        assert!(enumerate_strict_partitions(0).is_err());
    }

    #[test]
    fn strict_counts_match_filtered_partitions() {
        let expected = [1, 1, 2, 2, 3, 4, 5, 6, 8, 10];
        for (d, want) in (1..=10).zip(expected) {
            let strict = enumerate_strict_partitions(d).unwrap();
            let filtered: Vec<_> = enumerate_partitions(d)
                .unwrap()
                .into_iter()
                .filter(Partition::is_strict)
                .collect();
            assert_eq!(strict.len(), want, "d={d}");
            assert_eq!(strict, filtered);
        }
    }

    #[test]
    fn transposes() {
        assert_eq!(p(&[4, 2, 1]).transpose(), p(&[3, 2, 1, 1]));
        assert_eq!(p(&[3, 3, 1]).transpose(), p(&[3, 2, 2]));
        assert_eq!(p(&[5]).transpose(), p(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn partitions_are_lex_decreasing() {
        let all = enumerate_partitions(8).unwrap();
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(all.len(), 22);
    }

    #[test]
    fn euler_characteristics() {
        let nv = |v: &[i64]| NestingVector::new(v.to_vec()).unwrap();
        assert_eq!(nv(&[5]).euler_characteristic(1), 4);
        assert_eq!(nv(&[1, 2]).euler_characteristic(1), 0);
        assert_eq!(nv(&[0, 0, 0]).euler_characteristic(0), 0);
        assert!(NestingVector::new(vec![2, 1]).is_err());
    }

    #[test]
    fn nesting_examples() {
        let nv = |v: &[i64]| NestingVector::new(v.to_vec()).unwrap();
        assert_eq!(enumerate_nestings(1, -1, -1, 1).unwrap(), vec![nv(&[0])]);
        assert_eq!(
            enumerate_nestings(2, 0, 0, 1).unwrap(),
            vec![nv(&[0, 3]), nv(&[1, 2])]
        );
        assert!(enumerate_nestings(3, 1, 0, 1).unwrap().is_empty());
    }

    fn box_filter(d: usize, lo: i64, hi: i64, kappa_sq: i64) -> Vec<NestingVector> {
        // every n_i is at most hi + d(d+1)κ²/2 when κ² ≥ 0
        let bound = (hi + (d * (d + 1)) as i64 * kappa_sq.max(0) / 2).max(0);
        let mut out = Vec::new();
        let mut cur = vec![0i64; d];
        loop {
            if cur.windows(2).all(|w| w[0] <= w[1]) {
                let nv = NestingVector(cur.clone());
                let chi = nv.euler_characteristic(kappa_sq);
                if (lo..=hi).contains(&chi) {
                    out.push(nv);
                }
            }
            let mut k = d;
            loop {
                if k == 0 {
                    out.sort();
                    return out;
                }
                k -= 1;
                if cur[k] < bound {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 0;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn transpose_is_an_involution(
            parts in proptest::collection::vec(1u32..20, 0..12)
                .prop_filter("size at most 40", |v| v.iter().sum::<u32>() <= 40)
        ) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let lam = Partition::new(parts).unwrap();
            let t = lam.transpose();
            prop_assert_eq!(t.size(), lam.size());
            prop_assert_eq!(t.transpose(), lam);
        }

        #[test]
        fn nestings_match_box_filter(d in 1usize..4, kappa_sq in 0i64..3, lo in -8i64..4, width in 0i64..6) {
            let hi = lo + width;
            let mut got = enumerate_nestings(d as i64, lo, hi, kappa_sq).unwrap();
            for nv in &got {
                prop_assert!((lo..=hi).contains(&nv.euler_characteristic(kappa_sq)));
            }
            got.sort();
            prop_assert_eq!(got, box_filter(d, lo, hi, kappa_sq));
        }
    }
}
