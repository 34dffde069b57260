//! `wigner` command-line front end.
//!
//! Exit codes: 0 conformant result, 1 pipeline failure (or failed
//! conformance), 2 diagnostic-only reconstruction, 64 usage error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod file;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use wigner::conformance::ConformanceConfig;
use wigner::reconstruct::{classify_automorphism, fix_phases, map_basis};
use wigner::{
    probe_automorphism, reconstruct, run_conformance, Complex64, Tolerances64, WignerError,
};

use crate::file::OperatorFile;
use crate::output::Writer;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PIPELINE: i32 = 1;
pub const EXIT_DIAGNOSTIC: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pipeline(#[from] WignerError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Pipeline(_) => EXIT_PIPELINE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "wigner",
    version,
    about = "Reconstruct symmetry operators from ray mappings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reconstruct the operator behind the ray map induced by a matrix file.
    Reconstruct {
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Run every hypothesis and assertion check and print the report.
    Conformance {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random ray pairs for the hypothesis checks.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Random rays for the reproduction check.
        #[arg(long, default_value_t = 100)]
        reproduction_trials: usize,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Probe the coordinate automorphism on one index.
    Probe {
        input: PathBuf,
        /// Comma-separated complex samples, e.g. "1,i,1+i,-0.5-2i".
        /// Defaults to the built-in twelve-point grid.
        #[arg(long)]
        samples: Option<String>,
        /// 1-based coordinate index, at least 2.
        #[arg(long, default_value_t = 2)]
        index: usize,
        #[command(flatten)]
        tol: TolArgs,
    },
}

#[derive(Debug, Args)]
pub struct TolArgs {
    #[arg(long, default_value_t = 1e-9)]
    pub tol_orth: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol_recon: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_phase: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances64, CliError> {
        Tolerances64::new(self.tol_orth, self.tol_recon, self.tol_phase)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// Command result: text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Parse `args` (including the program name) and execute. Usage errors and
/// pipeline errors are reported through `stderr`.
pub fn run<I, S>(args: I, stderr: &mut String) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    stdout: e.to_string(),
                    code: EXIT_OK,
                },
                _ => {
                    stderr.push_str(&e.to_string());
                    Outcome {
                        stdout: String::new(),
                        code: EXIT_USAGE,
                    }
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                stdout: String::new(),
                code: e.exit_code(),
            }
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Reconstruct { input, tol } => {
            cmd_reconstruct(&OperatorFile::load(input)?, &tol.tolerances()?)
        }
        Command::Conformance {
            input,
            seed,
            trials,
            reproduction_trials,
            tol,
        } => {
            let config = ConformanceConfig {
                invariance_trials: *trials,
                reproduction_trials: *reproduction_trials,
                ..ConformanceConfig::default()
            };
            cmd_conformance(
                &OperatorFile::load(input)?,
                *seed,
                &config,
                &tol.tolerances()?,
            )
        }
        Command::Probe {
            input,
            samples,
            index,
            tol,
        } => {
            let samples = match samples {
                Some(s) => parse_samples(s)?,
                None => wigner::automorphism_sample_grid(),
            };
            cmd_probe(
                &OperatorFile::load(input)?,
                &samples,
                *index,
                &tol.tolerances()?,
            )
        }
    }
}

pub fn cmd_reconstruct(file: &OperatorFile, tol: &Tolerances64) -> Result<Outcome, CliError> {
    let oracle = file.oracle()?;
    let result = reconstruct(&oracle, file.dim, tol)?;
    let mut w = Writer::default();
    w.field("command", "reconstruct");
    w.field("input_kind", file.kind);
    w.field("dim", file.dim);
    w.field(
        "status",
        if result.unitary_valid {
            "unitary-valid"
        } else {
            "diagnostic-only"
        },
    );
    w.field("kind", result.kind.name());
    w.field("antiunitary", result.operator.is_antiunitary());
    w.reals("scales", &result.scales);
    w.real("max_scale_deviation", result.max_scale_deviation);
    w.real("classification_residual", result.classification_residual);
    w.field("oracle_calls", file.dim + result.probe_log.len());
    w.matrix("matrix", result.operator.matrix());
    Ok(Outcome {
        stdout: w.finish(),
        code: if result.unitary_valid {
            EXIT_OK
        } else {
            EXIT_DIAGNOSTIC
        },
    })
}

pub fn cmd_conformance(
    file: &OperatorFile,
    seed: u64,
    config: &ConformanceConfig<f64>,
    tol: &Tolerances64,
) -> Result<Outcome, CliError> {
    let oracle = file.oracle()?;
    let reference = file.operator();
    let report = run_conformance(&oracle, reference.as_ref(), seed, tol, config)?;
    let mut w = Writer::default();
    w.field("command", "conformance");
    w.field("input_kind", file.kind);
    w.field("dim", file.dim);
    w.field("seed", seed);
    w.field("overall", if report.overall { "pass" } else { "fail" });
    w.line("checks:");
    for entry in &report.entries {
        w.line(&format!("  - name: {}", entry.name));
        w.line(&format!("    passed: {}", entry.passed));
        w.line(&format!(
            "    worst_residual: {}",
            output::fmt_real(entry.worst_residual)
        ));
        w.line(&format!("    trials: {}", entry.trials));
        w.line(&format!("    seed: {}", entry.seed));
        if let Some(detail) = &entry.detail {
            w.line(&format!("    detail: {detail}"));
        }
    }
    let failed: Vec<&str> = report.failed().map(|e| e.name).collect();
    w.line(&format!("failed: [{}]", failed.join(", ")));
    Ok(Outcome {
        stdout: w.finish(),
        code: if report.overall {
            EXIT_OK
        } else {
            EXIT_PIPELINE
        },
    })
}

pub fn cmd_probe(
    file: &OperatorFile,
    samples: &[Complex64],
    index: usize,
    tol: &Tolerances64,
) -> Result<Outcome, CliError> {
    if index < 2 || index > file.dim {
        return Err(CliError::Usage(format!(
            "--index must be between 2 and {}, got {index}",
            file.dim
        )));
    }
    let oracle = file.oracle()?;
    let basis = map_basis(&oracle, file.dim, tol)?;
    let fixed = fix_phases(&oracle, &basis, tol)?;
    let kind = classify_automorphism(&oracle, &fixed.basis, &fixed.scales, tol)
        .map(|c| c.kind.name())
        .unwrap_or("unclassified");
    let table = probe_automorphism(
        &oracle,
        &fixed.basis,
        &fixed.scales,
        samples,
        index - 1,
        tol,
    )?;
    let mut w = Writer::default();
    w.field("command", "probe");
    w.field("input_kind", file.kind);
    w.field("dim", file.dim);
    w.field("index", index);
    w.field("kind", kind);
    w.real("scale", fixed.scales[index - 1]);
    w.line("rows:");
    for (z, fz) in &table.rows {
        w.line(&format!("  - z: {}", output::fmt_complex(*z)));
        w.line(&format!("    f: {}", output::fmt_complex(*fz)));
    }
    w.field("pairs", table.pairs);
    w.real("max_additivity", table.max_additivity);
    w.real("max_multiplicativity", table.max_multiplicativity);
    Ok(Outcome {
        stdout: w.finish(),
        code: EXIT_OK,
    })
}

/// Parse a comma-separated list of complex numbers such as `1,i,1+i,-0.5-2i`.
pub fn parse_samples(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<Complex64>()
                .ok()
                .filter(|z| z.re.is_finite() && z.im.is_finite())
                .ok_or_else(|| {
                    CliError::Usage(format!("--samples: cannot parse complex number {s:?}"))
                })
        })
        .collect()
}
