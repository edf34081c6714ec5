use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::ring::{parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiParity {
    Even,
    Odd,
}

impl ChiParity {
    /// `(-1)^{χ(O_S)}`.
    pub fn sign(self) -> i64 {
        match self {
            ChiParity::Even => 1,
            ChiParity::Odd => -1,
        }
    }
}

impl FromStr for ChiParity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(ChiParity::Even),
            "odd" => Ok(ChiParity::Odd),
            _ => Err(Error::Parse(format!(
                "parity must be even or odd, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for ChiParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChiParity::Even => "even",
            ChiParity::Odd => "odd",
        })
    }
}

/// A surface with smooth canonical curve of genus `h`; `κ² = h − 1`, and
/// only the parity of `χ(O_S)` ever matters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SurfaceGeometry {
    pub h: i64,
    pub parity: ChiParity,
}

impl SurfaceGeometry {
    pub fn new(h: i64, parity: ChiParity) -> Result<Self> {
        if h < 0 {
            return Err(Error::InvalidArgument(format!(
                "genus h must be >= 0, got {h}"
            )));
        }
        Ok(Self { h, parity })
    }

    pub fn kappa_sq(&self) -> i64 {
        self.h - 1
    }

    pub fn sign(&self) -> i64 {
        self.parity.sign()
    }
}

/// A descendent `τ_α(D)` of a curve class; only `κ·D` enters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Insertion {
    pub alpha: u32,
    pub pairing: Rational,
}

impl Insertion {
    pub fn new(alpha: u32, pairing: Rational) -> Self {
        Self { alpha, pairing }
    }
}

impl FromStr for Insertion {
    type Err = Error;
    /// `alpha:pairing`, e.g. `2:3/2`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, p) = s.split_once(':').ok_or_else(|| {
            Error::Parse(format!("insertion must look like alpha:pairing, got {s:?}"))
        })?;
        let alpha = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad descendent degree {a:?}")))?;
        Ok(Self::new(alpha, parse_rational(p.trim())?))
    }
}

impl fmt::Display for Insertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.alpha, self.pairing)
    }
}

/// Comma-separated insertion list; the empty string is the empty list.
pub fn parse_insertions(s: &str) -> Result<Vec<Insertion>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(Insertion::from_str)
        .collect()
}

pub fn total_alpha(insertions: &[Insertion]) -> i64 {
    insertions.iter().map(|i| i64::from(i.alpha)).sum()
}

pub(crate) fn check_degree(d: i64) -> Result<()> {
    if d <= 0 {
        return Err(Error::InvalidArgument(format!(
            "d must be positive, got {d}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;

    #[test]
    fn parses_insertion_lists() {
        let v = parse_insertions("1:1, 2:3/2,0:-4").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1], Insertion::new(2, rat(3, 2)));
        assert_eq!(total_alpha(&v), 3);
        assert!(parse_insertions("").unwrap().is_empty());
        assert!(parse_insertions("x:1").is_err());
        assert!(parse_insertions("1").is_err());
    }

    #[test]
    fn geometry() {
        let g = SurfaceGeometry::new(3, "odd".parse().unwrap()).unwrap();
        assert_eq!(g.kappa_sq(), 2);
        assert_eq!(g.sign(), -1);
        assert!(SurfaceGeometry::new(-1, ChiParity::Even).is_err());
    }
}
