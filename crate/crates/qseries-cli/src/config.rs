//! Run configuration: JSON file plus command-line overrides.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Arithmetic mode for verification runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Float,
    Rational,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Float => write!(f, "float"),
            Mode::Rational => write!(f, "rational"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "float" => Ok(Mode::Float),
            "rational" => Ok(Mode::Rational),
            other => Err(format!("unknown mode '{other}': expected float or rational")),
        }
    }
}

/// Settings of a verification run. Serialized into the report so runs
/// are reproducible from their artifacts.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: u32,
    pub tol: f64,
    pub mode: Mode,
    /// Identity ids to run; empty means the whole selection.
    pub filter: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            samples: 20,
            tol: 1e-9,
            mode: Mode::Float,
            filter: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.samples == 0 {
            return Err("samples must be at least 1".into());
        }
        if self.tol <= 0.0 || self.tol.is_nan() {
            return Err("tol must be positive".into());
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| format!("invalid config {}: {e}", path.display()))?;
        Ok(config)
    }

    /// Applies command-line overrides on top of the file values.
    pub fn with_overrides(
        mut self,
        seed: Option<u64>,
        samples: Option<u32>,
        tol: Option<f64>,
        mode: Option<Mode>,
    ) -> Self {
        if let Some(v) = seed {
            self.seed = v;
        }
        if let Some(v) = samples {
            self.samples = v;
        }
        if let Some(v) = tol {
            self.tol = v;
        }
        if let Some(v) = mode {
            self.mode = v;
        }
        self
    }
}
