use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid scale function: {0}")]
    InvalidScale(String),
    #[error("point {x} lies outside {domain}")]
    OutOfDomain { x: f64, domain: String },
    #[error("value {y} lies outside the range {range}")]
    OutOfRange { y: f64, range: String },
    #[error("index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("points span more than one effective interval: {0}")]
    SpansIntervals(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("simulation error: {0}")]
    Simulation(String),
    #[error("config error at line {line}, column {column}: {message}")]
    Config {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
