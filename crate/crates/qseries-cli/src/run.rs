//! Verification harness: walks the engine's registries, draws seeded
//! parameter samples, and aggregates the per-sample reports.

use std::fmt;

use serde::Serialize;

use qseries::bibasic;
use qseries::domain::{sample, substream, ParamDomain};
use qseries::identities;
use qseries::orthopoly;
use qseries::qcalculus;
use qseries::report::{Diagnostics, VerificationReport};
use qseries::transforms;
use qseries::{QComplex, QError};

use crate::config::{Mode, RunConfig};

/// The five verification catalogs, in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Catalog {
    Identities,
    Transforms,
    QIntegrals,
    Bibasic,
    Orthopoly,
}

impl Catalog {
    pub const ALL: [Catalog; 5] = [
        Catalog::Identities,
        Catalog::Transforms,
        Catalog::QIntegrals,
        Catalog::Bibasic,
        Catalog::Orthopoly,
    ];
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Catalog::Identities => "identities",
            Catalog::Transforms => "transforms",
            Catalog::QIntegrals => "qintegrals",
            Catalog::Bibasic => "bibasic",
            Catalog::Orthopoly => "orthopoly",
        };
        write!(f, "{name}")
    }
}

impl std::str::FromStr for Catalog {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identities" => Ok(Catalog::Identities),
            "transforms" => Ok(Catalog::Transforms),
            "qintegrals" => Ok(Catalog::QIntegrals),
            "bibasic" => Ok(Catalog::Bibasic),
            "orthopoly" => Ok(Catalog::Orthopoly),
            other => Err(format!(
                "unknown catalog '{other}': expected identities, transforms, \
                 qintegrals, bibasic, or orthopoly"
            )),
        }
    }
}

/// One row of the unified catalog listing.
#[derive(Clone, Debug, Serialize)]
pub struct EntryRow {
    pub catalog: String,
    pub id: String,
    pub title: String,
    pub params: Vec<String>,
    pub constraints: String,
}

fn row(
    catalog: Catalog,
    id: &str,
    title: &str,
    params: &[&str],
    constraints: &str,
) -> EntryRow {
    EntryRow {
        catalog: catalog.to_string(),
        id: id.to_string(),
        title: title.to_string(),
        params: params.iter().map(|s| s.to_string()).collect(),
        constraints: constraints.to_string(),
    }
}

/// Lists the entries of one catalog in registry declaration order.
pub fn entries(catalog: Catalog) -> Vec<EntryRow> {
    match catalog {
        Catalog::Identities => identities::registry()
            .iter()
            .map(|e| row(catalog, e.id, e.title, e.param_names, e.constraints))
            .collect(),
        Catalog::Transforms => transforms::registry()
            .iter()
            .map(|e| row(catalog, e.id, e.title, e.param_names, e.constraints))
            .collect(),
        Catalog::QIntegrals => qcalculus::qintegral_checks()
            .iter()
            .map(|e| row(catalog, e.id, e.title, e.param_names, e.constraints))
            .collect(),
        Catalog::Bibasic => bibasic::bibasic_checks()
            .iter()
            .map(|e| row(catalog, e.id, e.title, e.param_names, e.constraints))
            .collect(),
        Catalog::Orthopoly => orthopoly::orthopoly_checks()
            .iter()
            .map(|e| row(catalog, e.id, e.title, e.param_names, e.constraints))
            .collect(),
    }
}

/// Finds which catalog owns an id.
pub fn find(id: &str) -> Option<Catalog> {
    Catalog::ALL
        .into_iter()
        .find(|&c| entries(c).iter().any(|e| e.id == id))
}

fn domain_of(catalog: Catalog, id: &str) -> &'static ParamDomain {
    match catalog {
        Catalog::Identities => &identities::lookup(id).unwrap().domain,
        Catalog::Transforms => &transforms::lookup(id).unwrap().domain,
        Catalog::QIntegrals => &qcalculus::lookup_qintegral(id).unwrap().domain,
        Catalog::Bibasic => &bibasic::lookup_bibasic(id).unwrap().domain,
        Catalog::Orthopoly => &orthopoly::lookup_orthopoly(id).unwrap().domain,
    }
}

fn verify_one(
    catalog: Catalog,
    id: &str,
    params: &qseries::domain::SampleParams,
    tol: f64,
) -> VerificationReport {
    match catalog {
        Catalog::Identities => identities::verify(id, params, tol),
        Catalog::Transforms => transforms::verify_transform(id, params, tol),
        Catalog::QIntegrals => qcalculus::qintegral_identity_check(id, params, tol),
        Catalog::Bibasic => bibasic::bibasic_check(id, params, tol),
        Catalog::Orthopoly => orthopoly::orthopoly_check(id, params, tol),
    }
}

fn error_report(id: &str, e: &QError) -> VerificationReport {
    VerificationReport {
        id: id.to_string(),
        params: Default::default(),
        ints: Default::default(),
        lhs: None,
        rhs: None,
        abs_err: None,
        rel_err: None,
        pass: false,
        error: Some(e.to_string()),
        diagnostics: Diagnostics::default(),
    }
}

/// Aggregate outcome of a verification run; serialized as the JSON
/// report. `timestamp` is excluded from determinism comparisons.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub timestamp: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<VerificationReport>,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.total > 0
    }
}

fn now_rfc3339ish() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("{secs}")
}

/// Runs the selected ids of one catalog: per-id substreams keyed by
/// (seed, id), `samples` draws per id, reports aggregated in (registry
/// order, sample index) order.
pub fn run_verification(config: &RunConfig, catalog: Catalog) -> Result<RunReport, String> {
    config.validate()?;
    let selected: Vec<EntryRow> = entries(catalog)
        .into_iter()
        .filter(|e| config.filter.is_empty() || config.filter.iter().any(|f| f == &e.id))
        .collect();
    if selected.is_empty() {
        return Err(match config.filter.first() {
            Some(f) => format!("no entry of catalog '{catalog}' matches filter '{f}'"),
            None => format!("catalog '{catalog}' is empty"),
        });
    }
    let mut reports = Vec::new();
    for entry in &selected {
        match config.mode {
            Mode::Float => run_float(config, catalog, &entry.id, &mut reports),
            Mode::Rational => run_rational(config, &entry.id, &mut reports),
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    Ok(RunReport {
        config: config.clone(),
        timestamp: now_rfc3339ish(),
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
        reports,
    })
}

fn run_float(
    config: &RunConfig,
    catalog: Catalog,
    id: &str,
    reports: &mut Vec<VerificationReport>,
) {
    let domain = domain_of(catalog, id);
    let mut rng = substream(config.seed, id);
    for _ in 0..config.samples {
        match sample(domain, &mut rng) {
            Ok(s) => reports.push(verify_one(catalog, id, &s, config.tol)),
            Err(e) => {
                reports.push(error_report(id, &e));
                break;
            }
        }
    }
}

/// Exact rational verification; only identities with an exact evaluator
/// participate. When a filter explicitly names a non-exactable identity
/// the failure is recorded; an unfiltered run skips them.
fn run_rational(config: &RunConfig, id: &str, reports: &mut Vec<VerificationReport>) {
    let entry = match identities::lookup(id) {
        Ok(e) => e,
        Err(e) => {
            reports.push(error_report(id, &e));
            return;
        }
    };
    if entry.exact.is_none() {
        if !config.filter.is_empty() {
            reports.push(error_report(
                id,
                &QError::Domain(format!("{id} has no exact rational form")),
            ));
        }
        return;
    }
    let mut rng = substream(config.seed, id);
    for _ in 0..config.samples {
        match identities::verify_exact(id, &mut rng) {
            Ok(outcome) => {
                let lhs = QComplex::real(outcome.lhs.to_f64());
                let rhs = QComplex::real(outcome.rhs.to_f64());
                let abs_err = if outcome.pass { 0.0 } else { (lhs - rhs).abs() };
                let mut params = std::collections::BTreeMap::new();
                for (k, v) in &outcome.sample.values {
                    params.insert(k.clone(), QComplex::real(v.to_f64()));
                }
                reports.push(VerificationReport {
                    id: id.to_string(),
                    params,
                    ints: outcome.sample.ints.clone(),
                    lhs: Some(lhs),
                    rhs: Some(rhs),
                    abs_err: Some(abs_err),
                    rel_err: Some(abs_err / (1.0 + rhs.abs())),
                    pass: outcome.pass,
                    error: None,
                    diagnostics: Diagnostics::default(),
                });
            }
            Err(e) => {
                reports.push(error_report(id, &e));
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

/// JSON serialization of the aggregate report.
pub fn to_json(report: &RunReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

fn fmt_complex(v: Option<QComplex>) -> (String, String) {
    match v {
        Some(c) => (format!("{:e}", c.re), format!("{:e}", c.im)),
        None => (String::new(), String::new()),
    }
}

/// CSV serialization: one row per sample with the parameter map
/// flattened into a `name=value` list.
pub fn to_csv(report: &RunReport) -> String {
    let mut out = String::from(
        "id,sample,params,ints,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,pass,error,\
         series_terms,product_factors,quadrature_order\n",
    );
    let mut index = 0usize;
    let mut last_id = None::<&str>;
    for r in &report.reports {
        if last_id != Some(r.id.as_str()) {
            index = 0;
            last_id = Some(r.id.as_str());
        }
        let params: Vec<String> = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}+{}i", v.re, v.im))
            .collect();
        let ints: Vec<String> = r.ints.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let (lhs_re, lhs_im) = fmt_complex(r.lhs);
        let (rhs_re, rhs_im) = fmt_complex(r.rhs);
        let fields = [
            r.id.clone(),
            index.to_string(),
            params.join(";"),
            ints.join(";"),
            lhs_re,
            lhs_im,
            rhs_re,
            rhs_im,
            fmt_opt(r.abs_err),
            fmt_opt(r.rel_err),
            r.pass.to_string(),
            r.error.clone().unwrap_or_default(),
            r.diagnostics.series_terms.to_string(),
            r.diagnostics.product_factors.to_string(),
            r.diagnostics
                .quadrature_order
                .map(|v| v.to_string())
                .unwrap_or_default(),
        ];
        let escaped: Vec<String> = fields.iter().map(|f| csv_escape(f)).collect();
        out.push_str(&escaped.join(","));
        out.push('\n');
        index += 1;
    }
    out
}

/// Strips the timestamp line for determinism comparisons.
pub fn without_timestamp(json: &str) -> String {
    json.lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}
