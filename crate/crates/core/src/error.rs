use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("connection is not integrable; residual matrix: {residual}")]
    Integrability { residual: String },
    #[error("unsolvable equation: {0}")]
    Unsolvable(String),
    #[error("unsupported rank {0} (only rank 2 is supported)")]
    UnsupportedRank(usize),
    #[error("degree bound {bound} exceeded (an element of degree {degree} appeared)")]
    DegreeBound { bound: u32, degree: u32 },
    #[error("eliminated ideal is not principal: {0}")]
    NonPrincipal(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::UnknownIdentifier(_) | Error::Config(_) => 2,
            Error::DegreeBound { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
