use thiserror::Error;

use crate::models::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid machine: {0}")]
    InvalidMachine(ValidationReport),
    #[error("illegal configuration: {0}")]
    IllegalConfig(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("first instruction of the machine must be an increment, found {0}")]
    NotIncrementFirst(String),
    #[error("game does not have the shape produced by the pipeline: {0}")]
    WrongShape(String),
    #[error("index {index} out of range (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("strategy {name} failed: {reason}")]
    Strategy { name: String, reason: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("machine does not validate: {0}")]
    Validation(ValidationReport),
    #[error("integer needs {bits} bits, above the cap of {cap}")]
    IntTooLarge { bits: u64, cap: u64 },
}

impl FormatError {
    pub fn parse(line: usize, reason: impl Into<String>) -> Self {
        FormatError::Parse { line, reason: reason.into() }
    }
}
