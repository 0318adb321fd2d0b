use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use tempoc_core::graph::Edge;
use tempoc_core::{parse_solution, verify_edge_cover, verify_matching, SolutionKind, TemporalVertex};

use super::{load_graph, read_file};
use crate::failure::Failure;

/// Prints a JSON report; exits 1 when the solution is invalid.
#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub solution: PathBuf,
}

#[derive(Serialize)]
struct Report {
    ok: bool,
    kind: SolutionKind,
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    uncovered: Option<Vec<[u32; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conflicts: Option<Vec<[[u32; 2]; 2]>>,
}

fn pair(e: &Edge) -> [u32; 2] {
    [e.u(), e.v()]
}

pub fn run(a: VerifyArgs) -> Result<(), Failure> {
    let g = load_graph(&a.input)?;
    let name = a.solution.display().to_string();
    let s = parse_solution(&read_file(&a.solution)?).map_err(|e| Failure::input(&name, e))?;
    let mut report = Report { ok: false, kind: s.kind(), size: s.len(), uncovered: None, conflicts: None };
    match s.kind() {
        SolutionKind::Cover => {
            let r = verify_edge_cover(&g, &s)?;
            report.ok = r.ok;
            report.uncovered = Some(r.uncovered.iter().map(|&TemporalVertex { v, t }| [v, t]).collect());
        }
        SolutionKind::Matching => {
            let r = verify_matching(&g, &s)?;
            report.ok = r.ok;
            report.conflicts = Some(r.conflicts.iter().map(|(a, b)| [pair(a), pair(b)]).collect());
        }
    }
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    if report.ok {
        Ok(())
    } else {
        Err(Failure::new(1, format!("{name} is not a valid {}", s.kind())))
    }
}
