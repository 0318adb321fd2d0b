pub mod bench;
pub mod decomp;
pub mod gen;
pub mod solve;
pub mod verify;

use std::path::Path;
use std::time::Duration;

use tempoc_core::exact::{SearchBudget, DEFAULT_MAX_EDGES};
use tempoc_core::{parse_temporal_graph, TemporalGraph};

use crate::failure::Failure;

pub const BUDGET_ENV: &str = "TEMPOC_BUDGET_EDGES";

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(1, format!("cannot read {}: {e}", path.display())))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<TemporalGraph, Failure> {
    let text = read_file(path)?;
    parse_temporal_graph(&text).map_err(|e| Failure::input(&path.display().to_string(), e))
}

/// Exhaustive cap from the environment plus an optional wall-clock limit in
/// seconds.
pub fn budget(time_limit: Option<f64>) -> Result<SearchBudget, Failure> {
    let max_edges = match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{BUDGET_ENV} must be a non-negative integer, got '{v}'")))?,
        Err(_) => DEFAULT_MAX_EDGES,
    };
    let time_limit = match time_limit {
        Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(Failure::usage(format!("--time-limit must be positive, got {s}"))),
        None => None,
    };
    Ok(SearchBudget { max_edges, time_limit })
}

/// File name without extension, used as the instance id.
pub fn instance_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
