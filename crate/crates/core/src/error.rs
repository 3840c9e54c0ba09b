use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, OrnError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrnError {
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("slot {slot} is not a permutation of [0, {node_count})")]
    NotAPermutation { slot: usize, node_count: usize },

    #[error("node count {node_count} is not compatible with {family}: requires {required}")]
    IncompatibleNodeCount {
        node_count: u64,
        family: &'static str,
        required: String,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{element} is not a primitive root of GF({order}): multiplicative order {element_order}")]
    NotPrimitive {
        element: u64,
        order: u64,
        element_order: u64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rate {0} outside (0, 1/2]")]
    RateOutOfRange(Rational),

    #[error("demand row/column sum {sum} exceeds rate {rate}")]
    DemandExceedsRate { sum: Rational, rate: Rational },

    #[error("analysis window of {window} slots is shorter than the scheme period {period}")]
    WindowTooShort { window: usize, period: usize },

    #[error("path latency {latency} exceeds the latency cap {cap}")]
    LatencyCapExceeded { latency: usize, cap: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("counting lemma requires h <= L/3 (got L = {latency}, h = {hops})")]
    CountingLemmaInapplicable { latency: usize, hops: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for OrnError {
    fn from(e: std::io::Error) -> Self {
        OrnError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for OrnError {
    fn from(e: serde_json::Error) -> Self {
        OrnError::Parse(e.to_string())
    }
}

impl From<csv::Error> for OrnError {
    fn from(e: csv::Error) -> Self {
        OrnError::Io(e.to_string())
    }
}
