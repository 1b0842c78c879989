//! `qseries`: evaluate q-series expressions and verify the identity
//! catalogs from the command line.
//!
//! Exit codes: 0 when every verification passed, 1 when any sample
//! failed, 2 on usage, parse, or configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qseries_cli::config::{Mode, RunConfig};
use qseries_cli::run::{self, Catalog, RunReport};

#[derive(Parser)]
#[command(name = "qseries", version, about = "Numerical q-series engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Float,
    Rational,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Float => Mode::Float,
            ModeArg::Rational => Mode::Rational,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CatalogArg {
    Identities,
    Transforms,
    Qintegrals,
    Bibasic,
    Orthopoly,
}

impl From<CatalogArg> for Catalog {
    fn from(c: CatalogArg) -> Catalog {
        match c {
            CatalogArg::Identities => Catalog::Identities,
            CatalogArg::Transforms => Catalog::Transforms,
            CatalogArg::Qintegrals => Catalog::QIntegrals,
            CatalogArg::Bibasic => Catalog::Bibasic,
            CatalogArg::Orthopoly => Catalog::Orthopoly,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Sampling flags shared by the verification subcommands; each one
/// overrides the corresponding config-file value when given.
#[derive(clap::Args)]
struct VerifyFlags {
    /// JSON configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed of the deterministic sampling streams
    #[arg(long)]
    seed: Option<u64>,
    /// Number of parameter samples per identity
    #[arg(long)]
    samples: Option<u32>,
    /// Relative tolerance for a sample to pass
    #[arg(long)]
    tol: Option<f64>,
    /// Arithmetic mode
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

impl VerifyFlags {
    fn resolve(&self, filter: Vec<String>) -> Result<RunConfig, String> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let mut config = base.with_overrides(
            self.seed,
            self.samples,
            self.tol,
            self.mode.map(Mode::from),
        );
        if !filter.is_empty() {
            config.filter = filter;
        }
        config.validate()?;
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression, e.g. 'phi([0.3],[],0.5,0.2)'
    Eval {
        /// Expression text
        expr: String,
    },
    /// Verify a single identity by id
    Verify {
        /// Identity id, e.g. q_gauss
        id: String,
        #[command(flatten)]
        flags: VerifyFlags,
    },
    /// Verify every identity of a catalog
    VerifyAll {
        /// Which catalog to verify
        #[arg(long, value_enum, default_value = "identities")]
        catalog: CatalogArg,
        #[command(flatten)]
        flags: VerifyFlags,
    },
    /// List the available identities
    List {
        /// Restrict to one catalog
        #[arg(long, value_enum)]
        catalog: Option<CatalogArg>,
    },
    /// Run a verification and write the report to a file
    Report {
        /// Which catalog to verify
        #[arg(long, value_enum, default_value = "identities")]
        catalog: CatalogArg,
        /// Output format
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output path
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        flags: VerifyFlags,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn print_summary(report: &RunReport) {
    for r in &report.reports {
        if !r.pass {
            let reason = r
                .error
                .clone()
                .or_else(|| r.rel_err.map(|e| format!("relative error {e:e}")))
                .unwrap_or_else(|| "no value".into());
            eprintln!("FAIL {}: {reason}", r.id);
        }
    }
    println!(
        "{}/{} samples passed ({} failed)",
        report.passed, report.total, report.failed
    );
}

fn finish(report: &RunReport) -> ExitCode {
    print_summary(report);
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval { expr } => match qseries_cli::ast::parse(&expr) {
            Err(e) => usage_error(&e.to_string()),
            Ok(ast) => match qseries_cli::eval::eval(&ast) {
                Ok(v) => {
                    println!("{v}");
                    ExitCode::SUCCESS
                }
                Err(e) => usage_error(&e.to_string()),
            },
        },
        Command::Verify { id, flags } => {
            let Some(catalog) = run::find(&id) else {
                return usage_error(&format!("unknown identity id '{id}'"));
            };
            let config = match flags.resolve(vec![id]) {
                Ok(c) => c,
                Err(e) => return usage_error(&e),
            };
            match run::run_verification(&config, catalog) {
                Ok(report) => finish(&report),
                Err(e) => usage_error(&e),
            }
        }
        Command::VerifyAll { catalog, flags } => {
            let config = match flags.resolve(Vec::new()) {
                Ok(c) => c,
                Err(e) => return usage_error(&e),
            };
            match run::run_verification(&config, catalog.into()) {
                Ok(report) => finish(&report),
                Err(e) => usage_error(&e),
            }
        }
        Command::List { catalog } => {
            let catalogs: Vec<Catalog> = match catalog {
                Some(c) => vec![c.into()],
                None => Catalog::ALL.to_vec(),
            };
            for c in catalogs {
                for e in run::entries(c) {
                    println!(
                        "{}\t{}\t{}\tparams: {}\tconstraints: {}",
                        e.catalog,
                        e.id,
                        e.title,
                        e.params.join(","),
                        e.constraints
                    );
                }
            }
            ExitCode::SUCCESS
        }
        Command::Report {
            catalog,
            format,
            out,
            flags,
        } => {
            let config = match flags.resolve(Vec::new()) {
                Ok(c) => c,
                Err(e) => return usage_error(&e),
            };
            let report = match run::run_verification(&config, catalog.into()) {
                Ok(r) => r,
                Err(e) => return usage_error(&e),
            };
            let text = match format {
                Format::Json => run::to_json(&report),
                Format::Csv => run::to_csv(&report),
            };
            if let Err(e) = std::fs::write(&out, text) {
                return usage_error(&format!("cannot write {}: {e}", out.display()));
            }
            finish(&report)
        }
    }
}
