use clap::{Parser, Subcommand};
use ghk_cli::{run, RunArgs};

/// Exact and brute-force evaluation of Gowers-Host-Kra seminorms, dual
/// functions, and multiple ergodic averages.
#[derive(Parser)]
#[command(name = "ghk", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON config and write a report.
    Run {
        /// Path to the run configuration (JSON).
        config: std::path::PathBuf,
        /// Override a config key, e.g. --set params.s=3 (repeatable).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Output path (overrides the config's output.path).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Output format: csv or json (overrides the config).
        #[arg(long)]
        format: Option<String>,
        /// Seed override for seeded computations.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() {
    let cli = Cli::parse();
    let Command::Run {
        config,
        set,
        out,
        format,
        seed,
    } = cli.command;
    let mut overrides = Vec::new();
    for entry in set {
        match entry.split_once('=') {
            Some((k, v)) => overrides.push((k.to_string(), v.to_string())),
            None => {
                eprintln!("ghk: malformed --set `{entry}` (expected KEY=VALUE)");
                std::process::exit(2);
            }
        }
    }
    let args = RunArgs {
        config_path: config,
        overrides,
        out,
        format,
        seed,
    };
    match run(&args) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("ghk: {e}");
            std::process::exit(e.exit_code);
        }
    }
}
