use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use num::ToPrimitive;
use serde::Serialize;
use tempoc_core::solver::{Registry, SolveContext, SolveOutcome};
use tempoc_core::treedec::{build_tree_decomposition, DecompositionFile, DecompositionMode, NiceTreeDecomposition};
use tempoc_core::{serialize_solution, verify_edge_cover, verify_matching, SolutionKind, SolutionSet, TemporalGraph};

use super::{budget, load_graph, read_file, write_file};
use crate::failure::{Failure, PARSE};

pub const RESULT_SCHEMA: &str = "\
Output: one JSON object per run
  instance     string          file stem of --in
  problem      \"cover\" | \"matching\"
  method       \"brute\" | \"fpt\" | \"greedy\" | \"snapshot\"
  value        integer         size of the returned solution
  edges        [[u, v], ...]   the solution, ascending
  solution     string | null   path written by --out
  wallMs       number          solver wall time in milliseconds
  n, m, tau    integer         instance parameters
  width        integer | null  decomposition width (fpt only)
  exact        boolean         value is guaranteed optimal
  verified     boolean         always true; unverifiable results exit 1
  boundFactor  number | null   proven approximation factor (greedy, snapshot)
  perStep      [integer] | null  greedy: edges per vertex; snapshot: matching size per time";

#[derive(Args)]
#[command(after_long_help = RESULT_SCHEMA)]
pub struct SolveArgs {
    #[arg(long, value_parser = ["cover", "matching"])]
    pub problem: String,
    #[arg(long, value_parser = ["brute", "fpt", "greedy", "snapshot"])]
    pub method: String,
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Tree decomposition file for fpt (plain or nice).
    #[arg(long, value_name = "FILE")]
    pub decomp: Option<PathBuf>,
    /// Write the nice decomposition used by fpt.
    #[arg(long, value_name = "FILE")]
    pub decomp_out: Option<PathBuf>,
    /// Write the solution here.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Write every DP table entry here (fpt only).
    #[arg(long, value_name = "FILE")]
    pub dump_dp: Option<PathBuf>,
    /// Seconds allowed for branch-and-bound beyond the exhaustive cap.
    #[arg(long, value_name = "SECS")]
    pub time_limit: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunResult {
    pub instance: String,
    pub problem: SolutionKind,
    pub method: String,
    pub value: usize,
    pub edges: Vec<[u32; 2]>,
    pub solution: Option<String>,
    pub wall_ms: f64,
    pub n: u32,
    pub m: usize,
    pub tau: u32,
    pub width: Option<usize>,
    pub exact: bool,
    pub verified: bool,
    pub bound_factor: Option<f64>,
    pub per_step: Option<Vec<usize>>,
}

pub fn parse_problem(s: &str) -> Result<SolutionKind, Failure> {
    s.parse().map_err(|e: tempoc_core::Error| Failure::usage(e.to_string()))
}

/// Re-checks a solution before it is reported.
pub fn reverify(g: &TemporalGraph, s: &SolutionSet, value: usize) -> Result<(), Failure> {
    let ok = match s.kind() {
        SolutionKind::Cover => verify_edge_cover(g, s)?.ok,
        SolutionKind::Matching => verify_matching(g, s)?.ok,
    };
    if ok && s.len() == value {
        Ok(())
    } else {
        Err(Failure::new(1, format!("internal error: {} solution of size {value} failed re-verification", s.kind())))
    }
}

/// Runs one registered method and verifies its answer.
pub fn execute(
    registry: &Registry,
    g: &TemporalGraph,
    instance: &str,
    problem: SolutionKind,
    method: &str,
    ctx: &SolveContext,
) -> Result<(RunResult, SolveOutcome), Failure> {
    let solver = registry
        .get(problem, method)
        .ok_or_else(|| Failure::usage(format!("method '{method}' does not solve {problem}")))?;
    let start = Instant::now();
    let out = solver.solve(g, ctx)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    reverify(g, &out.solution, out.value)?;
    let result = RunResult {
        instance: instance.to_string(),
        problem,
        method: method.to_string(),
        value: out.value,
        edges: out.solution.edges().iter().map(|e| [e.u(), e.v()]).collect(),
        solution: None,
        wall_ms,
        n: g.n(),
        m: g.m(),
        tau: g.tau(),
        width: out.width,
        exact: solver.is_exact(),
        verified: true,
        bound_factor: out.bound_factor.as_ref().and_then(|f| f.to_f64()),
        per_step: out.per_step.clone(),
    };
    Ok((result, out))
}

fn load_decomposition(path: &Path, g: &TemporalGraph) -> Result<NiceTreeDecomposition, Failure> {
    let name = path.display().to_string();
    let parsed = DecompositionFile::parse(&read_file(path)?).map_err(|e| Failure::input(&name, e))?;
    let nice = match parsed {
        DecompositionFile::Plain(d) => {
            let report = d.validate(g.base());
            if let Some(v) = report.violations.first() {
                return Err(Failure::new(PARSE, format!("{name}: {v}")));
            }
            d.to_nice().map_err(|e| Failure::input(&name, e))?
        }
        DecompositionFile::Nice(d) => d,
    };
    nice.validate(g.base()).map_err(|e| Failure::input(&name, e))?;
    Ok(nice)
}

pub fn run(a: SolveArgs) -> Result<(), Failure> {
    let problem = parse_problem(&a.problem)?;
    let fpt = a.method == "fpt";
    for (flag, given) in [("--decomp", a.decomp.is_some()), ("--decomp-out", a.decomp_out.is_some()), ("--dump-dp", a.dump_dp.is_some())] {
        if given && !fpt {
            return Err(Failure::usage(format!("{flag} requires --method fpt")));
        }
    }
    let registry = Registry::standard();
    if registry.get(problem, &a.method).is_none() {
        return Err(Failure::usage(format!("method '{}' does not solve {problem}", a.method)));
    }
    let g = load_graph(&a.input)?;
    let mut ctx = SolveContext { budget: budget(a.time_limit)?, decomposition: None, dump_tables: a.dump_dp.is_some() };
    if fpt {
        let d = match &a.decomp {
            Some(path) => load_decomposition(path, &g)?,
            None => build_tree_decomposition(g.base(), DecompositionMode::Heuristic)?.to_nice()?,
        };
        if let Some(path) = &a.decomp_out {
            write_file(path, &d.to_text())?;
        }
        ctx.decomposition = Some(d);
    }
    let (mut result, out) = execute(&registry, &g, &super::instance_id(&a.input), problem, &a.method, &ctx)?;
    if let (Some(path), Some(dump)) = (&a.dump_dp, &out.table_dump) {
        write_file(path, dump)?;
    }
    if let Some(path) = &a.out {
        write_file(path, &serialize_solution(&out.solution))?;
        result.solution = Some(path.display().to_string());
    }
    println!("{}", serde_json::to_string(&result).expect("RunResult serializes"));
    Ok(())
}
