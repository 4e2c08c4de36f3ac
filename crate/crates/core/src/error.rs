use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arrangement::Violation;

/// Errors raised by the arrangement, invariant and engine operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    EqualIndices(usize),
    /// The requested center `Y_i ∩ Y_j` is not in the nerve.
    EmptyCenter(usize, usize),
    AlreadyPrincipal,
    /// Input failed [`crate::validate_arrangement`].
    Invalid(Vec<Violation>),
    /// The `(σ, τ)` measure failed to decrease, or the final certificate
    /// did not hold. Never expected on validated input.
    InvariantViolation(String),
    StepLimitExceeded {
        limit: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for {len} divisors")
            }
            Error::EqualIndices(i) => write!(f, "pair indices must differ (both {i})"),
            Error::EmptyCenter(i, j) => {
                write!(f, "center {{{i}, {j}}} has empty intersection")
            }
            Error::AlreadyPrincipal => f.write_str("ideal sum is already locally principal"),
            Error::Invalid(violations) => {
                f.write_str("invalid arrangement:")?;
                for v in violations {
                    write!(f, " {v};")?;
                }
                Ok(())
            }
            Error::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
            Error::StepLimitExceeded { limit } => {
                write!(f, "step limit of {limit} blow-ups exceeded")
            }
        }
    }
}

impl core::error::Error for Error {}
