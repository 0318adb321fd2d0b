use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use tempoc_core::treedec::{build_tree_decomposition, DecompositionMode};

use super::{load_graph, write_file};
use crate::failure::Failure;

/// Prints `{"width", "nodes", "nice", "mode"}` as JSON; the decomposition
/// itself goes to --out.
#[derive(Args)]
pub struct DecompArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// `heuristic` (min-fill) or `exact` (at most 12 vertices).
    #[arg(long, default_value = "heuristic", value_parser = ["heuristic", "min-fill", "exact"])]
    pub mode: String,
    /// Emit a nice decomposition.
    #[arg(long)]
    pub nice: bool,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Summary {
    width: usize,
    nodes: usize,
    nice: bool,
    mode: String,
}

pub fn run(a: DecompArgs) -> Result<(), Failure> {
    let mode: DecompositionMode = a.mode.parse().map_err(|e: tempoc_core::Error| Failure::usage(e.to_string()))?;
    let g = load_graph(&a.input)?;
    let d = build_tree_decomposition(g.base(), mode)?;
    let (text, nodes, width) = if a.nice {
        let nice = d.to_nice()?;
        (nice.to_text(), nice.nodes().len(), nice.width())
    } else {
        (d.to_text(), d.len(), d.width())
    };
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    let summary = Summary { width, nodes, nice: a.nice, mode: a.mode };
    println!("{}", serde_json::to_string(&summary).expect("summary serializes"));
    Ok(())
}
