//! Exact rings and series.

pub mod binomial;
mod format;
pub mod gaussian;
pub mod half_laurent;
pub mod json;
pub mod power_series;
pub mod ring;
pub mod tpoly;

pub use binomial::{binom, binom_int, double_factorial_odd, factorial, factorial_rational};
pub use gaussian::GaussianRational;
pub use half_laurent::{Extent, HalfLaurentSeries, QVariable};
pub use json::{SeriesJson, TermJson};
pub use power_series::{trig_series, TrigKind, UPowerSeries};
pub use ring::{int, rat, Rational, Ring};
pub use tpoly::TLaurentPoly;
