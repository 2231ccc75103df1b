use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate state: all amplitudes vanish")]
    DegenerateState,

    #[error("sparsity pattern violated: entry ({row},{col}) = {magnitude:e} exceeds {tol:e}")]
    Pattern {
        row: usize,
        col: usize,
        magnitude: f64,
        tol: f64,
    },

    #[error("damping rate overflows at t = {time} (r*omega0*t = {exponent} > 700)")]
    Overflow { time: f64, exponent: f64 },

    #[error("integration failed at t = {time}: {reason}")]
    Integration { time: f64, reason: String },

    #[error(
        "quadrature did not converge: {value} at full resolution vs {half} at half resolution"
    )]
    Quadrature { value: f64, half: f64 },

    #[error("series did not converge: {0}")]
    Convergence(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
