use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symdyn_cli::{parse_config, run, validate, write_outputs, RunError, RunOptions, Severity, DEFAULT_DEPTH_GUARD};

#[derive(Parser)]
#[command(name = "symdyn", version, about = "Finite-depth symbolic dynamics experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every analysis of a config and write the report.
    Run {
        config: PathBuf,
        /// Output directory; overrides the config.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Largest word-enumeration depth allowed.
        #[arg(long, default_value_t = DEFAULT_DEPTH_GUARD)]
        depth_guard: usize,
    },
    /// Check a config without running it.
    Validate {
        config: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH_GUARD)]
        depth_guard: usize,
    },
}

const INVALID: u8 = 1;
const INTERNAL: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (path, depth_guard) = match &cli.command {
        Command::Run { config, depth_guard, .. } | Command::Validate { config, depth_guard } => (config, *depth_guard),
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(INVALID);
        }
    };
    let config = match parse_config(&text) {
        Ok(c) => c,
        Err(d) => {
            eprintln!("{d}");
            return ExitCode::from(INVALID);
        }
    };
    match cli.command {
        Command::Validate { .. } => {
            let diagnostics = validate(&config, depth_guard);
            for d in &diagnostics {
                println!("{d}");
            }
            if diagnostics.iter().any(|d| d.severity == Severity::Error) {
                ExitCode::from(INVALID)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Run { out, threads, .. } => {
            let options = RunOptions { depth_guard, threads };
            match run(&config, &options) {
                Ok(output) => {
                    let dir = out.unwrap_or_else(|| PathBuf::from(&config.output.directory));
                    if let Err(e) = write_outputs(&output, &dir) {
                        eprintln!("error: cannot write to {}: {e}", dir.display());
                        return ExitCode::from(INTERNAL);
                    }
                    let analyses = output.report["analyses"].as_array().map_or(0, |a| a.len());
                    let failed = output.report["analyses"]
                        .as_array()
                        .map_or(0, |a| a.iter().filter(|b| b["status"] == "error").count());
                    println!("{analyses} analyses, {failed} errors; report in {}", dir.display());
                    ExitCode::SUCCESS
                }
                Err(RunError::Invalid(ds)) => {
                    for d in ds {
                        eprintln!("{d}");
                    }
                    ExitCode::from(INVALID)
                }
                Err(RunError::Internal(e)) => {
                    eprintln!("internal error: {e}");
                    ExitCode::from(INTERNAL)
                }
            }
        }
    }
}
