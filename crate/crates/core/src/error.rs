use thiserror::Error;

/// Errors produced by the numeric core.
#[derive(Debug, Error)]
pub enum Error {
    /// Precondition violation (bad modulus, divisibility, zero argument, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Operation not available for this representation (e.g. dilation of an
    /// unbacked nilmanifold function).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Lazy evaluator composition exceeded the configured depth cap.
    #[error("evaluator composition depth cap exceeded (max {0})")]
    DepthCap(u32),

    /// A raw evaluator failed the twisted-periodicity membership check.
    #[error("membership validation failed: twisted-periodicity residual {residual:.3e} at (a,c)=({a:.4},{c:.4})")]
    Membership { residual: f64, a: f64, c: f64 },

    /// A quadrature or series failed to reach the requested tolerance.
    #[error("did not converge: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
