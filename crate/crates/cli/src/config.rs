//! Run configuration with the precedence flags > environment (FGL_*) >
//! config file (key=value lines) > defaults.

use std::collections::HashMap;
use std::path::PathBuf;

use fgl_core::QuadSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub spec: QuadSpec,
    pub root_tol: f64,
    pub tie_tol: f64,
    pub seed: u64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(args: &crate::CommonArgs) -> Result<Self, crate::CliError> {
        let mut abs_tol = 1e-10f64;
        let mut rel_tol = 1e-9f64;
        let mut root_tol = 1e-5f64;
        let tie_tol = 1e-4f64;
        let mut seed = 42u64;
        let mut format = OutputFormat::Text;

        // config file
        if let Some(path) = &args.config {
            let body = std::fs::read_to_string(path).map_err(|e| {
                crate::CliError::Domain(format!("cannot read config {}: {e}", path.display()))
            })?;
            let kv = parse_key_values(&body)
                .map_err(|e| crate::CliError::Domain(format!("config: {e}")))?;
            if let Some(v) = kv.get("abs_tol") {
                abs_tol = parse_f64("abs_tol", v)?;
            }
            if let Some(v) = kv.get("rel_tol") {
                rel_tol = parse_f64("rel_tol", v)?;
            }
            if let Some(v) = kv.get("root_tol") {
                root_tol = parse_f64("root_tol", v)?;
            }
            if let Some(v) = kv.get("seed") {
                seed = v.parse().map_err(|_| {
                    crate::CliError::Domain(format!("config: bad seed {v}"))
                })?;
            }
            if let Some(v) = kv.get("format") {
                format = parse_format(v)?;
            }
        }

        // environment
        if let Ok(v) = std::env::var("FGL_ABS_TOL") {
            abs_tol = parse_f64("FGL_ABS_TOL", &v)?;
        }
        if let Ok(v) = std::env::var("FGL_REL_TOL") {
            rel_tol = parse_f64("FGL_REL_TOL", &v)?;
        }
        if let Ok(v) = std::env::var("FGL_SEED") {
            seed = v
                .parse()
                .map_err(|_| crate::CliError::Domain(format!("bad FGL_SEED {v}")))?;
        }

        // flags
        if let Some(v) = args.abs_tol {
            abs_tol = v;
        }
        if let Some(v) = args.rel_tol {
            rel_tol = v;
        }
        if let Some(v) = args.seed {
            seed = v;
        }
        if let Some(v) = &args.format {
            format = parse_format(v)?;
        }

        let spec = QuadSpec {
            abs_tol,
            rel_tol,
            ..QuadSpec::default()
        };
        spec.validate()
            .map_err(|e| crate::CliError::Domain(e.to_string()))?;
        Ok(RunConfig {
            spec,
            root_tol,
            tie_tol,
            seed,
            format,
            out: args.out.clone(),
        })
    }
}

fn parse_format(v: &str) -> Result<OutputFormat, crate::CliError> {
    match v {
        "text" => Ok(OutputFormat::Text),
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(crate::CliError::Domain(format!("unknown format {other}"))),
    }
}

fn parse_f64(name: &str, v: &str) -> Result<f64, crate::CliError> {
    v.trim()
        .parse()
        .map_err(|_| crate::CliError::Domain(format!("bad value for {name}: {v}")))
}

fn parse_key_values(body: &str) -> Result<HashMap<String, String>, String> {
    let mut map = HashMap::new();
    for (i, line) in body.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}
