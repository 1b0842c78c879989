//! Numerical q-series engine and identity-verification harness.
//!
//! Evaluates basic hypergeometric series (unilateral and bilateral),
//! q-gamma/q-beta functions, q-integrals, theta functions, bibasic sums and
//! q-orthogonal polynomials, and certifies closed-form summation and
//! transformation formulas by comparing independently computed left and
//! right sides over sampled parameter domains.

pub mod bibasic;
pub mod diag;
pub mod domain;
pub mod error;
pub mod expression;
pub mod identities;
pub mod orthopoly;
pub mod qcalculus;
pub mod qcore;
pub mod report;
pub mod scalar;
pub mod series;
pub mod transforms;

pub use error::{QError, Result};
pub use scalar::{QComplex, Rat, Scalar, NEAR_TOL, PASS_TOL, POLE_GUARD, REL_TOL};
