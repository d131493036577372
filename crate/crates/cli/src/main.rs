//! frac-gelfand: constants lookup, stability classification, boundary
//! solving, phase-diagram export and the verification suites.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage/domain error.

mod config;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fgl_core::constants::ConstantsBundle;
use fgl_core::stability::{classify, phase_diagram, stability_boundary, BoundaryOutcome};
use fgl_core::Params;

use config::{OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "frac-gelfand",
    about = "Numerical verification laboratory for (-Δ)^s u = e^u",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Absolute quadrature tolerance
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    /// Relative quadrature tolerance
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Output format
    #[arg(long, global = true, value_parser = ["text", "json", "csv"])]
    format: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized property checks
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Config file with key=value lines
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print every closed-form constant for (n, s)
    Constants {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: f64,
    },
    /// Classify stability of the singular solution at (n, s)
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: f64,
        #[arg(long)]
        tie_tol: Option<f64>,
    },
    /// Locate the stability boundary in s for dimension n
    Boundary {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        root_tol: Option<f64>,
    },
    /// Export the (n, s) phase diagram as CSV
    PhaseDiagram {
        #[arg(long, default_value_t = 3)]
        n_lo: u32,
        #[arg(long, default_value_t = 12)]
        n_hi: u32,
        #[arg(long, default_value_t = 9)]
        s_steps: usize,
    },
    /// Run a verification suite and emit a machine-readable report
    Verify {
        #[arg(long, default_value = "all", value_parser = ["all", "fraclap", "hardy", "extension", "energy", "representation"])]
        suite: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        s: Option<f64>,
    },
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let cfg = RunConfig::resolve(&cli.common)?;

    match cli.command {
        Command::Constants { n, s } => {
            let p = Params::new(n, s).map_err(CliError::domain)?;
            let bundle = ConstantsBundle::new(p);
            emit(&cfg, render_constants(&bundle, cfg.format))?;
            Ok(())
        }
        Command::Classify { n, s, tie_tol } => {
            let p = Params::new(n, s).map_err(CliError::domain)?;
            let v = classify(p, tie_tol.unwrap_or(cfg.tie_tol)).map_err(CliError::domain)?;
            let text = match cfg.format {
                OutputFormat::Json => serde_json::json!({
                    "n": n, "s": s, "margin": v.margin, "verdict": v.verdict.as_str(),
                })
                .to_string(),
                _ => format!(
                    "(n = {n}, s = {s}): margin = {:+.12e}, verdict = {}",
                    v.margin,
                    v.verdict.as_str()
                ),
            };
            emit(&cfg, text)?;
            Ok(())
        }
        Command::Boundary { n, root_tol } => {
            let tol = root_tol.unwrap_or(cfg.root_tol);
            let r = stability_boundary(n, tol).map_err(CliError::domain)?;
            let text = match cfg.format {
                OutputFormat::Json => {
                    let outcome = match r.outcome {
                        BoundaryOutcome::Root(s) => serde_json::json!({"root": s}),
                        BoundaryOutcome::AllStable => serde_json::json!("all-stable"),
                        BoundaryOutcome::AllUnstable => serde_json::json!("all-unstable"),
                    };
                    serde_json::json!({"n": n, "root_tol": tol, "outcome": outcome}).to_string()
                }
                _ => match r.outcome {
                    BoundaryOutcome::Root(s) => format!("n = {n}: s* = {s:.10}"),
                    BoundaryOutcome::AllStable => format!("n = {n}: stable for all s in (0,1)"),
                    BoundaryOutcome::AllUnstable => {
                        format!("n = {n}: unstable for all s in (0,1)")
                    }
                },
            };
            emit(&cfg, text)?;
            Ok(())
        }
        Command::PhaseDiagram { n_lo, n_hi, s_steps } => {
            let rows = phase_diagram(n_lo, n_hi, s_steps).map_err(CliError::domain)?;
            let mut csv = String::from("n,s,margin,verdict\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{:.17e},{}\n",
                    r.n,
                    r.s,
                    r.margin,
                    r.verdict.as_str()
                ));
            }
            emit(&cfg, csv.trim_end().to_string())?;
            Ok(())
        }
        Command::Verify { suite, n, s } => {
            let p = Params::new(n.unwrap_or(3), s.unwrap_or(0.5)).map_err(CliError::domain)?;
            let report = suites::run_suite(&suite, p, &cfg).map_err(CliError::domain)?;
            let rendered = match cfg.format {
                OutputFormat::Text => report.render_text(),
                _ => report.render_json(),
            };
            emit(&cfg, rendered)?;
            if report.pass {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
    }
}

fn render_constants(bundle: &ConstantsBundle, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::json!({
            "n": bundle.params.n(),
            "s": bundle.params.s(),
            "c_ns": bundle.c_ns,
            "lambda_ns": bundle.lambda_ns,
            "a_ns": bundle.a_ns,
            "hardy_lambda_ns": bundle.hardy,
            "kappa_s": bundle.kappa_s,
            "d_ns": bundle.d_ns,
            "riesz_c": bundle.riesz_c,
            "sphere_area": bundle.sphere_area,
        })
        .to_string(),
        _ => {
            let mut out = String::new();
            out.push_str(&format!("constants for {}\n", bundle.params));
            for (name, v) in [
                ("c_ns        ", bundle.c_ns),
                ("lambda_ns   ", bundle.lambda_ns),
                ("a_ns        ", bundle.a_ns),
                ("Lambda_ns   ", bundle.hardy),
                ("kappa_s     ", bundle.kappa_s),
                ("d_ns        ", bundle.d_ns),
                ("riesz_c     ", bundle.riesz_c),
                ("sphere_area ", bundle.sphere_area),
            ] {
                out.push_str(&format!("{name} = {v:.12e}\n"));
            }
            out.trim_end().to_string()
        }
    }
}

fn emit(cfg: &RunConfig, text: String) -> Result<(), CliError> {
    match &cfg.out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| {
            CliError::Domain(format!("cannot write {}: {e}", path.display()))
        }),
    }
}

enum CliError {
    /// Bad input or unusable configuration: exit 2.
    Domain(String),
    /// A verification suite ran and failed: exit 1.
    VerificationFailed,
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::VerificationFailed) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
