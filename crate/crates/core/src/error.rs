use thiserror::Error;

use crate::scalar::Mode;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode mismatch: {left:?} vs {right:?}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("operation requires {expected:?} mode, got {found:?}")]
    WrongMode { expected: Mode, found: Mode },

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("no solution: residual {residual}")]
    NoSolution { residual: String },

    #[error("no squarefree kernel form found after {attempts} draws")]
    NoSquarefreeKernel { attempts: usize },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("zero binary form")]
    ZeroForm,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown preset: {0}")]
    UnknownPreset(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable name, used by the CLI when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ModeMismatch { .. } => "mode-mismatch",
            Error::WrongMode { .. } => "wrong-mode",
            Error::Dimension(_) => "dimension",
            Error::NoSolution { .. } => "no-solution",
            Error::NoSquarefreeKernel { .. } => "no-squarefree-kernel",
            Error::InvariantViolation(_) => "invariant-violation",
            Error::ZeroForm => "zero-form",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::UnknownPreset(_) => "unknown-preset",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
