//! Crate error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("non-finite sample at z = {re} + {im}i while evaluating {what}")]
    NonFiniteSample { re: f64, im: f64, what: String },
    #[error("truncation budget too small: {0}")]
    Truncation(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl QError {
    pub fn domain(msg: impl Into<String>) -> Self {
        QError::Domain(msg.into())
    }
}
