use thiserror::Error;

/// Failures surfaced by evaluators and checkers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole at {0}")]
    Pole(String),

    #[error("size error: {terms} terms exceeds the cap of {cap}")]
    Size { terms: u64, cap: u64 },

    #[error("convergence error: estimated error {radius:e} exceeds target {target:e}")]
    Convergence { radius: f64, target: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("boundary zero: minimum |R| on the boundary ({min_abs:e}) cannot be separated from zero")]
    BoundaryZero { min_abs: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no sign change of the threshold function on the scan interval")]
    NoCrossing,

    #[error("threshold function changes sign {0} times on the scan grid")]
    MultipleCrossings(usize),

    #[error("Newton refinement did not converge in cell {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
