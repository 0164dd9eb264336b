use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use schwarzkit::cli::{run, CliError, Command, Options};

/// Schwarzian derivatives of rational maps, JSON in and JSON out.
///
/// Exit codes: 0 ok, 2 unreadable input, 3 degenerate input, 4 solver failure.
#[derive(Parser)]
#[command(name = "schwarzkit", version)]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Residual tolerance for the criteria
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for the Newton starts
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Number of Newton starts (default 64 times the Catalan bound)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    attempts: Option<u64>,

    /// Series order for Laurent and Taylor expansions
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    order: u64,

    /// Input file, or - for stdin (the default)
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Schwarzian of {num, den} with its poles and local degrees
    Schwarzian,
    /// Primitivity criteria for {phi, mode, point?, d?, variant?}
    Check,
    /// Rational maps with the critical points {points}
    Solve,
    /// Four-point geometry of {points} or {quartic}
    Cubic,
    /// Local primitive of {phi} at {point}
    ReconstructLocal,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, CliError> {
    let mut buf = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            buf = std::fs::read_to_string(p).map_err(|e| CliError::parse(format!("{}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut buf).map_err(|e| CliError::parse(format!("stdin: {e}")))?;
        }
    }
    Ok(buf)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Cmd::Schwarzian => Command::Schwarzian,
        Cmd::Check => Command::Check,
        Cmd::Solve => Command::Solve,
        Cmd::Cubic => Command::Cubic,
        Cmd::ReconstructLocal => Command::ReconstructLocal,
    };
    let opts = Options {
        tol: args.tol,
        seed: args.seed,
        attempts: args.attempts.map(|a| a as usize),
        order: args.order as usize,
    };
    let result = read_input(args.input.as_ref()).and_then(|payload| run(command, &payload, &opts));
    match result {
        Ok(value) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("json values serialize"));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("schwarzkit: {err}");
            if let Some(body) = err.body {
                println!("{}", serde_json::to_string_pretty(&body).expect("json values serialize"));
            }
            ExitCode::from(err.code as u8)
        }
    }
}
