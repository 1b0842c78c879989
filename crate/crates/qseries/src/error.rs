//! Error types shared by every module of the crate.
//!
//! Poles never escape as NaN/infinity: any operation whose result would be
//! dominated by a vanishing denominator factor reports [`QError::Pole`]
//! instead. Verification failures are *not* errors; they are reported
//! through [`crate::report::VerificationReport`].

use thiserror::Error;

#[derive(Debug, Error)]
pub enum QError {
    /// A denominator factor vanished (or fell below the near-pole guard).
    #[error("pole: {0}")]
    Pole(String),

    /// Inputs outside the domain of the operation (e.g. |q| >= 1 for an
    /// infinite product, or a constraint violation).
    #[error("domain: {0}")]
    Domain(String),

    /// The requested (z, q) lies outside the convergence region of a
    /// nonterminating series.
    #[error("convergence: {0}")]
    Convergence(String),

    /// The term/node cap was reached before the stopping rule fired.
    #[error("truncation: {0}")]
    Truncation(String),

    /// Quadrature at order N and 2N disagreed beyond the requested tolerance.
    #[error("quadrature: {0}")]
    Quadrature(String),

    /// A transformation rule was applied to a series that does not match
    /// its structural pattern.
    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),

    /// Registry lookup with an id that is not registered.
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, QError>;
