use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data (bad JSON, bad quiver, bad
    /// scalar literal, mismatched shapes). CLI exit code 4.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured cap was hit before the computation could finish.
    /// Carries what was being counted and how much would be needed.
    /// CLI exit code 3.
    #[error("resource cap exceeded while {what}: need {required}, cap {cap}")]
    CapExceeded {
        what: String,
        required: u128,
        cap: u128,
    },

    /// The requested operation is refused in this configuration (wrong
    /// field kind, universe not certified). CLI exit code 3.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An internal mathematical invariant failed. This never signals bad
    /// user input; it means either a bug or a genuine counterexample to a
    /// property the engine relies on. CLI exit code 2.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}
