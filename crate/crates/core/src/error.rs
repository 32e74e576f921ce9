//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates a precondition (value included in the message).
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// Configuration file could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),

    /// Shapes of coupled vectors/fields disagree.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// The time integration blew up (NaN/overflow) at the given step.
    #[error("numerical instability detected at step {step}: {context}")]
    Instability { step: usize, context: String },

    /// A state became inadmissible (non-positive density or pressure).
    #[error("inadmissible state: {0}")]
    InadmissibleState(String),

    /// Eigendecomposition backend failure.
    #[error("eigendecomposition failed: {0}")]
    Eig(String),

    /// Root bracketing failed in a parameter search.
    #[error("search failed: {0}")]
    Search(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
