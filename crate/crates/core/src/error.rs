use thiserror::Error;

/// Errors raised by the tropical arithmetic, linear algebra and fitting layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropError {
    /// Operation undefined at the tropical zero (inversion, non-positive power,
    /// evaluation at 𝟘) or on a value outside the semifield (negative max-times input).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: expected {expected}, got {actual}")]
    Shape { expected: String, actual: String },

    /// A matrix or vector that must be regular has a zero row, column or entry.
    #[error("not regular: {0}")]
    NotRegular(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, TropError>;
