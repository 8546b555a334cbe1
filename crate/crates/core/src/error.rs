use thiserror::Error;

/// Errors raised by the arithmetic, mutation and generation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An integer division that had to be exact left a remainder.
    #[error("not divisible: {numerator} / {denominator} is not an integer")]
    NotDivisible {
        numerator: String,
        denominator: String,
    },

    #[error("division by a dual integer with zero real part")]
    ZeroRealPart,

    /// Real parts of a triple do not form a positive classical Markov triple.
    #[error("real parts ({0}) are not a positive Markov triple")]
    NotMarkov(String),

    /// Descent failed to shrink the maximal real part.
    #[error("descent stuck at {triple}: mutating slot {slot} did not decrease the maximum")]
    DescentStuck { triple: String, slot: usize },

    /// Shadows failed to combine linearly in the seed (should never happen).
    #[error("shadow linearity check failed at path {path}: expected {expected}, found {found}")]
    LinearityViolation {
        path: String,
        expected: String,
        found: String,
    },

    #[error("invalid slot index {0}, expected 0, 1 or 2")]
    InvalidSlot(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
