use clap::{Parser, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use dephasure::cli::config::load_config;
use dephasure::cli::run::{run, Command, RunOptions};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sub {
    Evolve,
    Validate,
    Report,
    Sweep,
}

/// Cavity-mode dephasing from a dense acoustic bath.
#[derive(Debug, Parser)]
#[command(name = "dephasure", version)]
struct Args {
    #[arg(value_enum)]
    command: Sub,
    #[arg(long)]
    config: PathBuf,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Exit with code 4 when a physical validity condition fails.
    #[arg(long)]
    enforce_validity: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Sub::Evolve => Command::Evolve,
        Sub::Validate => Command::Validate,
        Sub::Report => Command::Report,
        Sub::Sweep => Command::Sweep,
    };
    let cfg = match load_config(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        out_dir: args.out,
        enforce_validity: args.enforce_validity,
    };
    match run(command, &cfg, &opts) {
        Ok(outcome) => {
            print!("{}", outcome.message);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
