//! Verification outcome records, serialized as-is into the JSON report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diag;
use crate::domain::SampleParams;
use crate::error::Result;
use crate::scalar::QComplex;

/// Work counters captured after evaluating both sides of a sample.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub series_terms: u64,
    pub product_factors: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_order: Option<u32>,
}

/// Outcome of verifying one identity/rule at one parameter point.
///
/// `pass` holds exactly when `rel_err <= tol` with
/// `rel_err = |lhs - rhs| / (1 + |rhs|)`. Evaluation errors (poles hit by
/// a sample, truncation failures) are recorded in `error` with
/// `pass = false` rather than thrown.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: BTreeMap<String, QComplex>,
    pub ints: BTreeMap<String, i64>,
    pub lhs: Option<QComplex>,
    pub rhs: Option<QComplex>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub diagnostics: Diagnostics,
}

/// Builds a report from an evaluation outcome, snapshotting the work
/// counters accumulated since the last [`diag::reset`].
pub fn build_report(
    id: &str,
    sample: &SampleParams,
    outcome: Result<(QComplex, QComplex)>,
    tol: f64,
) -> VerificationReport {
    let (series_terms, product_factors) = diag::snapshot();
    let diagnostics = Diagnostics {
        series_terms,
        product_factors,
        quadrature_order: None,
    };
    match outcome {
        Ok((lhs, rhs)) => {
            let abs_err = (lhs - rhs).abs();
            let rel_err = abs_err / (1.0 + rhs.abs());
            VerificationReport {
                id: id.to_string(),
                params: sample.values.clone(),
                ints: sample.ints.clone(),
                lhs: Some(lhs),
                rhs: Some(rhs),
                abs_err: Some(abs_err),
                rel_err: Some(rel_err),
                pass: rel_err.is_finite() && rel_err <= tol,
                error: None,
                diagnostics,
            }
        }
        Err(e) => VerificationReport {
            id: id.to_string(),
            params: sample.values.clone(),
            ints: sample.ints.clone(),
            lhs: None,
            rhs: None,
            abs_err: None,
            rel_err: None,
            pass: false,
            error: Some(e.to_string()),
            diagnostics,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::QError;

    #[test]
    fn pass_threshold_is_relative() {
        let s = SampleParams::default();
        let lhs = QComplex::real(100.0);
        let rhs = QComplex::real(100.0 + 5e-8);
        // abs err 5e-8, rel err ~ 5e-10
        let r = build_report("x", &s, Ok((lhs, rhs)), 1e-9);
        assert!(r.pass);
        let r = build_report("x", &s, Ok((lhs, rhs)), 1e-11);
        assert!(!r.pass);
    }

    #[test]
    fn errors_recorded_not_thrown() {
        let s = SampleParams::default();
        let r = build_report("x", &s, Err(QError::Pole("boom".into())), 1e-9);
        assert!(!r.pass);
        assert!(r.error.as_deref().unwrap().contains("boom"));
        assert!(r.lhs.is_none());
    }

    #[test]
    fn report_round_trips_through_json() {
        let mut s = SampleParams::default();
        s.set("a", QComplex::new(0.25, -0.5));
        s.set_int("n", 3);
        let r = build_report("demo", &s, Ok((QComplex::ONE, QComplex::ONE)), 1e-9);
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }
}
