use std::path::{Path, PathBuf};

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use tempoc_core::solver::{Registry, SolveContext};
use tempoc_core::SolutionKind;

use super::solve::{execute, parse_problem, RunResult};
use super::{budget, instance_id, load_graph};
use crate::failure::Failure;

/// Runs every `.tg` file in a directory; ratios compare against brute force
/// where it fits the budget (value/opt for cover, opt/value for matching).
#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_name = "DIR")]
    pub dir: PathBuf,
    #[arg(long, value_parser = ["cover", "matching"])]
    pub problem: String,
    /// Comma-separated methods; all methods for the problem by default.
    #[arg(long, value_delimiter = ',')]
    pub methods: Vec<String>,
    #[arg(long, value_name = "SECS")]
    pub time_limit: Option<f64>,
    /// Print a JSON array instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchRow {
    pub instance: String,
    pub method: String,
    pub result: Option<RunResult>,
    pub ratio: Option<f64>,
    pub error: Option<String>,
}

fn ratio(problem: SolutionKind, value: usize, opt: usize) -> f64 {
    let (num, den) = match problem {
        SolutionKind::Cover => (value, opt),
        SolutionKind::Matching => (opt, value),
    };
    if num == den {
        1.0
    } else {
        num as f64 / den as f64
    }
}

fn bench_instance(
    path: &Path,
    problem: SolutionKind,
    methods: &[String],
    ctx: &SolveContext,
    registry: &Registry,
) -> Vec<BenchRow> {
    let id = instance_id(path);
    let g = match load_graph(path) {
        Ok(g) => g,
        Err(f) => {
            return vec![BenchRow { instance: id, method: "-".into(), result: None, ratio: None, error: Some(f.message) }]
        }
    };
    let opt = execute(registry, &g, &id, problem, "brute", ctx).ok().map(|(r, _)| r.value);
    methods
        .iter()
        .map(|method| match execute(registry, &g, &id, problem, method, ctx) {
            Ok((r, _)) => BenchRow {
                instance: id.clone(),
                method: method.clone(),
                ratio: opt.map(|o| ratio(problem, r.value, o)),
                result: Some(r),
                error: None,
            },
            Err(f) => BenchRow { instance: id.clone(), method: method.clone(), result: None, ratio: None, error: Some(f.message) },
        })
        .collect()
}

pub fn run(a: BenchArgs) -> Result<(), Failure> {
    let problem = parse_problem(&a.problem)?;
    let registry = Registry::standard();
    let methods: Vec<String> = if a.methods.is_empty() {
        registry.for_problem(problem).map(|s| s.name().to_string()).collect()
    } else {
        a.methods.clone()
    };
    if let Some(m) = methods.iter().find(|m| registry.get(problem, m).is_none()) {
        return Err(Failure::usage(format!("method '{m}' does not solve {problem}")));
    }
    let ctx = SolveContext { budget: budget(a.time_limit)?, ..Default::default() };
    let mut files: Vec<PathBuf> = std::fs::read_dir(&a.dir)
        .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", a.dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tg"))
        .collect();
    files.sort();
    let rows: Vec<BenchRow> = files
        .par_iter()
        .map(|p| bench_instance(p, problem, &methods, &ctx, &registry))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    if a.json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
        return Ok(());
    }
    println!("{:<24} {:<9} {:>6} {:>8} {:>10}", "instance", "method", "value", "ratio", "ms");
    for row in &rows {
        match &row.result {
            Some(r) => {
                let ratio = row.ratio.map_or("-".to_string(), |x| format!("{x:.3}"));
                println!("{:<24} {:<9} {:>6} {:>8} {:>10.2}", row.instance, row.method, r.value, ratio, r.wall_ms);
            }
            None => println!(
                "{:<24} {:<9} {:>6} {:>8} {:>10}  {}",
                row.instance,
                row.method,
                "-",
                "-",
                "-",
                row.error.as_deref().unwrap_or("")
            ),
        }
    }
    Ok(())
}
