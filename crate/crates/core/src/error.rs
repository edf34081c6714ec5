use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(String),

    #[error("series live on incompatible exponent lattices ({0} vs {1})")]
    IncompatibleLattice(u8, u8),

    #[error("series are in different variables")]
    VariableMismatch,

    #[error("division is not exact; residue {residue}")]
    InexactDivision { residue: String },

    #[error("operation needs an exact series but got a windowed one")]
    InexactInput,

    #[error("half-integer power of Q survived to a q-series (exponent {0}/2)")]
    HalfIntegerExponent(i64),

    #[error("t-powers failed to collapse to a single monomial: {0}")]
    TCollapse(String),

    #[error("independent computations disagree: {0}")]
    DualPathMismatch(String),

    #[error("coefficient of {variable}^{exponent} should vanish but is {value}")]
    NonvanishingLowerOrder {
        variable: &'static str,
        exponent: i64,
        value: String,
    },

    #[error("series known only below order {available}, need coefficient at {needed}")]
    TruncationTooSmall { needed: i64, available: i64 },

    #[error("inner series of a composition must have positive valuation")]
    NonPositiveValuation,

    #[error("linear system is singular")]
    SingularSystem,

    #[error("unbounded exponent window")]
    UnboundedWindow,

    #[error("parse error: {0}")]
    Parse(String),
}
