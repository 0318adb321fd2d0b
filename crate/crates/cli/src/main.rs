//! `tempoc`: generate, solve, verify, decompose and benchmark temporal
//! edge cover and temporal matching instances.

mod commands;
mod failure;

use clap::{Parser, Subcommand};

use crate::failure::Failure;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  other failure, or verify found the solution invalid
  2  invalid flags or parameters
  3  malformed input file
  4  search budget exceeded

Environment:
  TEMPOC_BUDGET_EDGES  edge cap for exhaustive search (default 22)";

#[derive(Parser)]
#[command(name = "tempoc", version, about = "Temporal edge cover and temporal matching solvers", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print a JSON result.
    Solve(commands::solve::SolveArgs),
    /// Generate random or reduction instances.
    Gen(commands::gen::GenArgs),
    /// Check a solution file against an instance.
    Verify(commands::verify::VerifyArgs),
    /// Build a tree decomposition of the underlying graph.
    Decomp(commands::decomp::DecompArgs),
    /// Compare methods on every instance in a directory.
    Bench(commands::bench::BenchArgs),
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve(a) => commands::solve::run(a),
        Command::Gen(a) => commands::gen::run(a),
        Command::Verify(a) => commands::verify::run(a),
        Command::Decomp(a) => commands::decomp::run(a),
        Command::Bench(a) => commands::bench::run(a),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { failure::USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(f) = run(cli) {
        eprintln!("tempoc: {}", f.message.lines().next().unwrap_or_default());
        std::process::exit(f.code);
    }
}
