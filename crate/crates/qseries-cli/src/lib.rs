//! Command-line front end for the q-series engine: an expression
//! evaluator, catalog listings, and a deterministic verification runner
//! with JSON and CSV reporting.

pub mod ast;
pub mod config;
pub mod eval;
pub mod run;
