//! Exact construction of the integral trace form and trace-zero form of a
//! tame cyclic number field from its degree and factored discriminant.
//!
//! Everything is computed in exact integer (or rational) arithmetic. The
//! central object is the `(m-1) x (m-1)` Gram matrix of the trace-zero
//! lattice, assembled from ramification data read off the discriminant,
//! together with the full `m x m` trace-form Gram matrix, an independent
//! linear-system solver for the coefficients, and a small lattice toolbox
//! (short vectors, theta fingerprints, isometry testing) used to verify the
//! constructions.

pub mod arith;
pub mod coeffs;
pub mod disc;
mod error;
pub mod forms;
pub mod lattice;
pub mod matrix;
pub mod ramification;

pub use error::{Error, Result};

pub use coeffs::{coeff_a1, coeff_literal, coeff_system, coeff_table, CoefficientTable};
pub use disc::FactoredDiscriminant;
pub use forms::{
    build_full_trace, build_trace_zero, quad_form_coeffs, same_trace_zero_class, shape_equal,
    FullTraceForm, TraceZeroForm,
};
pub use lattice::{
    fingerprint, is_positive_definite, isometric, isometric_with_cap, short_vectors,
    IsometryReport, LatticeFingerprint, Verdict,
};
pub use matrix::IntMatrix;
pub use ramification::{Mode, RamificationProfile};
