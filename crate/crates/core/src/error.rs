//! Error type shared across the crate.

use thiserror::Error;

/// Everything that can go wrong in the engine.
///
/// The CLI maps these onto its exit codes: input/validation problems are
/// exit code 2, cap/budget exhaustion is exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("variable count {0} outside the supported range 1..={max}", max = crate::monomial::MAX_VARS)]
    VarCountOutOfRange(usize),

    #[error("exponent {0} exceeds the supported maximum {max}", max = crate::monomial::MAX_EXPONENT)]
    ExponentTooLarge(u32),

    #[error("operation undefined for the zero ideal")]
    ZeroIdeal,

    #[error("operation undefined for the unit ideal")]
    UnitIdeal,

    #[error("ideal is not irreducible: generator {0} is not a pure variable power")]
    NotIrreducible(String),

    #[error("ideal is not of Borel type: (I : x{var}^inf) differs from (I : (x1..x{var})^inf)")]
    NotBorelType { var: usize },

    #[error("sequential chain level {level} has an empty saturation quotient")]
    EmptyChainQuotient { level: usize },

    #[error("quotient undefined: the first ideal is not contained in the second")]
    NotASubideal,

    #[error("poset bound too small: g[{var}] is below the maximal generator exponent")]
    BoundTooSmall { var: usize },

    #[error("poset box of {size} points exceeds the cap of {cap}")]
    BoxCapExceeded { size: usize, cap: usize },

    #[error("time budget of {budget_ms} ms exhausted; instance infeasible at this scale")]
    TimeBudgetExceeded { budget_ms: u64 },

    #[error("empty poset: nothing to partition")]
    EmptyPoset,

    #[error("invalid interval partition: {0}")]
    InvalidPartition(String),

    #[error("degree cap {got} is below the required minimum {min}")]
    DegreeCapTooSmall { min: u32, got: u32 },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("monotonicity hypothesis violated between levels {level} and {next} at variable {var}")]
    NotMonotone { level: usize, next: usize, var: usize },

    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for cap and budget errors, which callers may treat as "skip"
    /// rather than failure.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::BoxCapExceeded { .. } | Error::TimeBudgetExceeded { .. }
        )
    }
}
