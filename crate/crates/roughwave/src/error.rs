use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug)]
pub enum Error {
    /// Invalid grid, window, or operator configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A dyadic shell or convolution scale is not representable on the grid.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Metric synthesis produced a tensor violating its invariants.
    #[error("synthesis error: {0}")]
    Synthesis(String),

    /// Hamiltonian or geodesic integration failed.
    #[error("flow error: {0}")]
    Flow(String),

    /// Newton inversion of the flow map did not converge.
    #[error("inversion error: {0}")]
    Inversion(String),

    /// An operation-level precondition was violated.
    #[error("contract error: {0}")]
    Contract(String),

    /// Dense oracle assembly or decomposition failed.
    #[error("oracle error: {0}")]
    Oracle(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
    pub fn resolution(msg: impl Into<String>) -> Self {
        Error::Resolution(msg.into())
    }
    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
