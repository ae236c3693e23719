use thiserror::Error;

/// Errors raised by the exact and numeric pipelines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VarMismatch { left: Vec<String>, right: Vec<String> },

    #[error("unknown variable `{0}`")]
    UnknownVar(String),

    #[error("cannot substitute a non-unit for `{0}`, which occurs with a negative exponent")]
    NonInvertibleSubstitution(String),

    #[error("polynomial is not symmetric under {0} -> 1/{0}")]
    NotSymmetric(String),

    #[error("elimination failed: {0}")]
    Elimination(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("exponent out of range")]
    SizeOverflow,

    #[error("root solver did not certify all roots (worst residual {worst_residual:e})")]
    SolverFailure { worst_residual: f64, residuals: Vec<f64> },

    #[error("generator `{0}` has no assigned matrix")]
    Unbound(String),

    #[error("matrix assigned to `{0}` is not unimodular")]
    NotUnimodular(String),

    #[error("q = 0 gives the unknot; twist knots need q != 0")]
    Unknot,

    #[error("invalid torus representation: commutator defect {0:e}")]
    InvalidTorusRep(f64),

    #[error("commutant is degenerate at s = +-1")]
    DegenerateCommutant,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
