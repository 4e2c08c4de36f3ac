//! Principalization of sums of monomial ideals on divisor arrangements.
//!
//! The input is a finite family of effective divisors `D_j = Σ a_ij Y_i`
//! supported on an arrangement `Y_1, …, Y_n` whose local equations form
//! regular sequences (complete-intersection crossings). Only the
//! combinatorial shadow of the geometry is modelled: coefficient vectors and
//! the nerve of nonempty intersections.
//!
//! - [`arrangement`] holds the data model.
//! - [`invariants`] computes the `(σ, τ)` invariant and detects local
//!   principality.
//! - [`engine`] selects codimension-2 centers and iterates blow-ups until the
//!   ideal sum is locally principal, recording a [`engine::Trace`].
//! - [`oracle`] is an independent verifier for coordinate-hyperplane
//!   instances that replays a trace through explicit affine charts.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arrangement;
mod complex;
pub mod engine;
mod error;
mod ext_pair;
pub mod invariants;
pub mod oracle;

pub use arrangement::{
    min_divisor, nerve_contains, validate_arrangement, Arrangement, Divisor, DivisorLabel,
    LabelKind, Nerve, Violation,
};
pub use engine::{
    blowup, blowup_nerve, principalize_many, principalize_pair, pullback_divisor, select_center,
    BlowupState, Certificate, EngineConfig, Trace, TraceStep,
};
pub use error::Error;
pub use ext_pair::ExtPair;
pub use invariants::{
    is_locally_principal, is_sum_locally_principal, sigma, sigma_ij, SigmaReport,
};

pub type Result<T, E = Error> = core::result::Result<T, E>;
