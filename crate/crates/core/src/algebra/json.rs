//! JSON form shared by both series types.
//!
//! ```json
//! {"variable": "q", "exponent_denominator": 1,
//!  "terms": [{"exp": -1, "t_exp": 0, "re": "-1", "im": "0"}],
//!  "truncation": null}
//! ```
//!
//! `exp` and `truncation` are in scaled units (multiples of
//! `1/exponent_denominator`). A windowed Laurent object whose window is
//! bounded below also carries `"window_start"`.

use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use super::half_laurent::{Extent, HalfLaurentSeries, QVariable};
use super::power_series::UPowerSeries;
use super::ring::{format_rational, parse_rational};
use super::tpoly::TLaurentPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub variable: String,
    pub exponent_denominator: u8,
    pub terms: Vec<TermJson>,
    pub truncation: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_start: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: i64,
    pub t_exp: i64,
    pub re: String,
    pub im: String,
}

impl TermJson {
    fn new(exp: i64, t_exp: i64, c: &GaussianRational) -> Self {
        Self {
            exp,
            t_exp,
            re: format_rational(&c.re),
            im: format_rational(&c.im),
        }
    }

    fn value(&self) -> Result<GaussianRational> {
        Ok(GaussianRational::new(
            parse_rational(&self.re)?,
            parse_rational(&self.im)?,
        ))
    }
}

impl SeriesJson {
    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("series JSON is always serializable")
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl From<&HalfLaurentSeries> for SeriesJson {
    fn from(s: &HalfLaurentSeries) -> Self {
        let mut terms = Vec::new();
        for (e, poly) in s.terms() {
            for (k, c) in poly.terms() {
                terms.push(TermJson::new(e, k, c));
            }
        }
        let (truncation, window_start) = match s.extent() {
            Extent::Exact => (None, None),
            Extent::Window { lo, hi } => (Some(hi + 1), lo),
        };
        Self {
            variable: s.variable().name().to_string(),
            exponent_denominator: s.exponent_denominator(),
            terms,
            truncation,
            window_start,
        }
    }
}

impl TryFrom<&SeriesJson> for HalfLaurentSeries {
    type Error = Error;

    fn try_from(j: &SeriesJson) -> Result<Self> {
        let variable = match j.variable.as_str() {
            "q" => QVariable::LowerQ,
            "Q" => QVariable::UpperQ,
            other => return Err(Error::Parse(format!("not a q-series variable: {other}"))),
        };
        let extent = match j.truncation {
            None => Extent::Exact,
            Some(n) => Extent::Window {
                lo: j.window_start,
                hi: n - 1,
            },
        };
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            terms.push((t.exp, TLaurentPoly::monomial(t.value()?, t.t_exp)));
        }
        HalfLaurentSeries::new(variable, j.exponent_denominator, terms, extent)
    }
}

impl From<&UPowerSeries<GaussianRational>> for SeriesJson {
    fn from(s: &UPowerSeries<GaussianRational>) -> Self {
        Self {
            variable: "u".into(),
            exponent_denominator: 1,
            terms: s.terms().map(|(e, c)| TermJson::new(e, 0, c)).collect(),
            truncation: s.order(),
            window_start: None,
        }
    }
}

impl TryFrom<&SeriesJson> for UPowerSeries<GaussianRational> {
    type Error = Error;

    fn try_from(j: &SeriesJson) -> Result<Self> {
        if j.variable != "u" || j.exponent_denominator != 1 {
            return Err(Error::Parse(format!(
                "expected a u-series with integer exponents, got {} with denominator {}",
                j.variable, j.exponent_denominator
            )));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.t_exp != 0 {
                return Err(Error::Parse("u-series terms carry no t-power".into()));
            }
            terms.push((t.exp, t.value()?));
        }
        Ok(UPowerSeries::from_terms(terms, j.truncation))
    }
}
