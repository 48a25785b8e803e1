use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("octonion input must be imaginary (zero e0 component), got {0}")]
    NonImaginary(f64),

    #[error("matrix is not skew-symmetric (residual {0:.3e})")]
    NotSkew(f64),

    #[error("frame columns are not orthonormal (residual {0:.3e})")]
    NotOrthonormal(f64),

    #[error("fiber value violates the bundle constraint (residual {0:.3e})")]
    FiberConstraint(f64),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(
        "numerical differentiation failed to converge (extrapolants differ by {err:.3e}, tolerance {tol:.3e})"
    )]
    DifferentiationFailed { err: f64, tol: f64 },

    #[error(
        "second-derivative evaluation paths disagree (difference {diff:.3e}, tolerance {tol:.3e})"
    )]
    PathDisagreement { diff: f64, tol: f64 },

    #[error("parallel transport step control failed: {0}")]
    TransportFailed(String),

    #[error("degenerate random draw: {0}")]
    DegenerateDraw(String),

    #[error("inconclusive estimate: {0}")]
    Inconclusive(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown export kind `{0}`")]
    UnknownExportKind(String),

    #[error("unknown section `{0}`")]
    UnknownSection(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
