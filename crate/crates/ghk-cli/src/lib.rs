//! Batch front end: parse a JSON run configuration, dispatch to the exact
//! and brute-force evaluators, and emit machine-readable reports.
//!
//! Exit codes (see [`run`]): 0 success and all verdicts pass; 1 a scenario
//! verdict failed; 2 configuration error; 3 resource-cap abort.

pub mod config;
pub mod dispatch;
pub mod expected;
pub mod report;

use ghk_core::Error as CoreError;

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError {
            exit_code: 2,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let exit_code = match &e {
            CoreError::ResourceCap { .. }
            | CoreError::ScanExhausted { .. }
            | CoreError::Overflow(_) => 3,
            _ => 2,
        };
        CliError {
            exit_code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            exit_code: 2,
            message: format!("i/o error: {e}"),
        }
    }
}

/// Parsed command-line invocation.
#[derive(Debug, Clone)]
pub struct RunArgs {
    pub config_path: std::path::PathBuf,
    pub overrides: Vec<(String, String)>,
    pub out: Option<std::path::PathBuf>,
    pub format: Option<String>,
    pub seed: Option<u64>,
}

/// Execute a run; returns the intended process exit code.
pub fn run(args: &RunArgs) -> Result<i32, CliError> {
    let raw = std::fs::read_to_string(&args.config_path).map_err(|e| {
        CliError::config(format!(
            "cannot read config {}: {e}",
            args.config_path.display()
        ))
    })?;
    let cfg = config::RunConfig::from_json(&raw, &args.overrides, args.seed.as_ref())
        .map_err(|e| CliError::config(format!("invalid config: {e}")))?;

    // Worker pool: GHK_THREADS caps the parallel reduction workers. The
    // reductions are fixed-shape trees, so the count affects wall time only.
    let threads = cfg
        .params
        .threads
        .or_else(|| {
            std::env::var("GHK_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);
    if threads > 0 {
        // Ignore the error if a global pool already exists (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    let outcome = dispatch::execute(&cfg)?;
    let out_path = args
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().map(|o| o.path.clone().into()))
        .unwrap_or_else(|| "ghk-report.json".into());
    let format = args
        .format
        .clone()
        .or_else(|| cfg.output.as_ref().map(|o| o.format.clone()))
        .unwrap_or_else(|| "json".to_string());
    match format.as_str() {
        "json" => report::write_json(&out_path, &cfg, &outcome)?,
        "csv" => report::write_csv(&out_path, &cfg, &outcome)?,
        other => return Err(CliError::config(format!("unknown format `{other}`"))),
    }
    eprintln!(
        "ghk: wrote {} ({} result rows{})",
        out_path.display(),
        outcome.rows.len(),
        if outcome.scenarios.is_empty() {
            String::new()
        } else {
            format!(", {} scenario reports", outcome.scenarios.len())
        }
    );
    Ok(if outcome.all_passed() { 0 } else { 1 })
}
