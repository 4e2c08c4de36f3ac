//! Independent chart-level verifier for coordinate-hyperplane arrangements.
//!
//! On `Y_i = V(x_i)` every divisor equation stays a single coordinate (or
//! becomes a unit) under blow-ups of intersections of supports, so the whole
//! tower can be replayed with exponent-vector arithmetic. Charts, generators
//! and principality are computed here from scratch; from the trace the
//! verifier only reads the centers, the reported coefficients and the final
//! nerve. Intermediate nerves are re-derived from the centers with the nerve
//! update rule.

use alloc::vec::Vec;
use core::fmt;

mod chart;
mod monomial;
mod replay;

pub use chart::{
    blowup_charts, initial_chart, substitute, transform_equation, DivisorEquation, MonomialChart,
};
pub use monomial::{divides, is_principal_monomial, Exponents, MonomialIdeal};
pub use replay::{
    replay_trace, verify_trace, LeafReport, NerveViolation, OracleConfig, PullbackMismatch,
    VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    EmptyIdeal,
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    CenterTooSmall(usize),
    UnknownDivisor(usize),
    /// The divisor does not meet this chart.
    CenterAbsent(usize),
    /// The divisor's equation is not a single coordinate.
    NonSimpleEquation(usize),
    /// The trace cannot be replayed on the given instance.
    ReplayMismatch(alloc::string::String),
    LeafCapExceeded {
        cap: usize,
    },
    /// Lineages of the leaf charts where the ideal is not principal.
    NotPrincipalAtLeaf(Vec<Vec<(usize, usize)>>),
    PullbackMismatch(Vec<PullbackMismatch>),
    NerveUnsound(Vec<NerveViolation>),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::EmptyIdeal => f.write_str("ideal has no generators"),
            OracleError::LengthMismatch { expected, found } => {
                write!(f, "exponent vector length {found}, expected {expected}")
            }
            OracleError::CenterTooSmall(r) => {
                write!(f, "center needs at least 2 divisors, got {r}")
            }
            OracleError::UnknownDivisor(id) => write!(f, "unknown divisor id {id}"),
            OracleError::CenterAbsent(id) => {
                write!(f, "center divisor {id} is absent from the chart")
            }
            OracleError::NonSimpleEquation(id) => {
                write!(
                    f,
                    "divisor {id} is not a coordinate hyperplane in this chart"
                )
            }
            OracleError::ReplayMismatch(msg) => write!(f, "replay mismatch: {msg}"),
            OracleError::LeafCapExceeded { cap } => write!(f, "more than {cap} live charts"),
            OracleError::NotPrincipalAtLeaf(leaves) => {
                write!(f, "ideal not principal in {} leaf chart(s)", leaves.len())?;
                if let Some(first) = leaves.first() {
                    write!(f, ", first lineage {first:?}")?;
                }
                Ok(())
            }
            OracleError::PullbackMismatch(m) => {
                write!(
                    f,
                    "{} chart exponent(s) disagree with the engine's pullback",
                    m.len()
                )
            }
            OracleError::NerveUnsound(v) => {
                write!(
                    f,
                    "{} chart intersection(s) missing from the engine's nerve",
                    v.len()
                )
            }
        }
    }
}

impl core::error::Error for OracleError {}
