use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain a function supports.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value overflowed double precision.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An iteration failed to converge or produced a non-finite result.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The collocation matrix is numerically singular.
    #[error("singular system (1-norm condition estimate {condition:.3e})")]
    Singular { condition: f64 },

    /// Invalid configuration, with the offending field named in the message.
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
