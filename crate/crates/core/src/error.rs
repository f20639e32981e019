//! Crate-wide error type.

use crate::exponent::Exponent;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("exponent out of range: {0} (need 1 <= p <= inf)")]
    ExponentDomain(String),

    #[error("no exact path for (p,q) = ({p},{q}); use pq_norm_lower_heuristic")]
    UnsupportedPair { p: Exponent, q: Exponent },

    #[error(
        "enumeration cap exceeded: min side {side} > cap {cap}; use infty_one_norm_heuristic"
    )]
    EnumerationCap { side: usize, cap: usize },

    #[error("operation is not supported over the complex field")]
    ComplexUnsupported,

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("mode error: {0}")]
    Mode(String),

    #[error("Hadamard size must be a power of two, got {0}")]
    HadamardSize(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("slope fit needs at least 3 sizes, got {0}")]
    InsufficientSizes(usize),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("sandwich violated at dims ({l},{m},{n}): lower {lower} <= estimate {estimate} <= upper {upper} fails")]
    SandwichViolation {
        l: usize,
        m: usize,
        n: usize,
        lower: f64,
        estimate: f64,
        upper: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
