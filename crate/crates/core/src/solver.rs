//! Uniform interface over every solving method, looked up by problem and
//! method name.

use num::BigRational;

use crate::approx::{greedy_temporal_edge_cover, snapshot_matching_approx, ApproxReport};
use crate::dp::{DpRun, TableStat};
use crate::error::Result;
use crate::exact::{exact_max_matching, exact_min_edge_cover, SearchBudget};
use crate::graph::TemporalGraph;
use crate::solution::{SolutionKind, SolutionSet};
use crate::treedec::{build_tree_decomposition, DecompositionMode, NiceTreeDecomposition};

#[derive(Debug, Clone, Default)]
pub struct SolveContext {
    pub budget: SearchBudget,
    /// Used by the FPT solvers; a min-fill decomposition is built otherwise.
    pub decomposition: Option<NiceTreeDecomposition>,
    /// Keep the DP table dump in the outcome.
    pub dump_tables: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub value: usize,
    pub solution: SolutionSet,
    pub width: Option<usize>,
    pub bound_factor: Option<BigRational>,
    pub per_step: Option<Vec<usize>>,
    pub table_stats: Option<Vec<TableStat>>,
    pub table_dump: Option<String>,
}

impl SolveOutcome {
    fn plain(solution: SolutionSet) -> Self {
        SolveOutcome {
            value: solution.len(),
            solution,
            width: None,
            bound_factor: None,
            per_step: None,
            table_stats: None,
            table_dump: None,
        }
    }

    fn from_approx(r: ApproxReport) -> Self {
        SolveOutcome {
            bound_factor: Some(r.bound_factor),
            per_step: Some(r.per_step),
            ..Self::plain(r.solution)
        }
    }
}

pub trait Solver: Send + Sync {
    fn name(&self) -> &'static str;
    fn problem(&self) -> SolutionKind;
    /// Whether the value is guaranteed optimal.
    fn is_exact(&self) -> bool;
    fn solve(&self, g: &TemporalGraph, ctx: &SolveContext) -> Result<SolveOutcome>;
}

struct Brute(SolutionKind);

impl Solver for Brute {
    fn name(&self) -> &'static str {
        "brute"
    }

    fn problem(&self) -> SolutionKind {
        self.0
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn solve(&self, g: &TemporalGraph, ctx: &SolveContext) -> Result<SolveOutcome> {
        let (_, solution) = match self.0 {
            SolutionKind::Cover => exact_min_edge_cover(g, ctx.budget)?,
            SolutionKind::Matching => exact_max_matching(g, ctx.budget)?,
        };
        Ok(SolveOutcome::plain(solution))
    }
}

struct Fpt(SolutionKind);

impl Solver for Fpt {
    fn name(&self) -> &'static str {
        "fpt"
    }

    fn problem(&self) -> SolutionKind {
        self.0
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn solve(&self, g: &TemporalGraph, ctx: &SolveContext) -> Result<SolveOutcome> {
        let built;
        let d = match &ctx.decomposition {
            Some(d) => d,
            None => {
                built = build_tree_decomposition(g.base(), DecompositionMode::Heuristic)?.to_nice()?;
                &built
            }
        };
        let run = DpRun::new(g, d, self.0)?;
        let solution = run.extract(g, d)?;
        Ok(SolveOutcome {
            width: Some(d.width()),
            table_stats: Some(run.stats()),
            table_dump: ctx.dump_tables.then(|| run.dump()),
            ..SolveOutcome::plain(solution)
        })
    }
}

struct Greedy;

impl Solver for Greedy {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn problem(&self) -> SolutionKind {
        SolutionKind::Cover
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn solve(&self, g: &TemporalGraph, _: &SolveContext) -> Result<SolveOutcome> {
        Ok(SolveOutcome::from_approx(greedy_temporal_edge_cover(g)))
    }
}

struct Snapshot;

impl Solver for Snapshot {
    fn name(&self) -> &'static str {
        "snapshot"
    }

    fn problem(&self) -> SolutionKind {
        SolutionKind::Matching
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn solve(&self, g: &TemporalGraph, _: &SolveContext) -> Result<SolveOutcome> {
        Ok(SolveOutcome::from_approx(snapshot_matching_approx(g)))
    }
}

pub struct Registry {
    solvers: Vec<Box<dyn Solver>>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}

impl Registry {
    pub fn empty() -> Self {
        Registry { solvers: Vec::new() }
    }

    /// Brute force and FPT for both problems, greedy for cover, snapshot for
    /// matching.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        for kind in [SolutionKind::Cover, SolutionKind::Matching] {
            r.register(Box::new(Brute(kind)));
            r.register(Box::new(Fpt(kind)));
        }
        r.register(Box::new(Greedy));
        r.register(Box::new(Snapshot));
        r
    }

    /// Replaces any solver with the same problem and name.
    pub fn register(&mut self, solver: Box<dyn Solver>) {
        self.solvers
            .retain(|s| !(s.problem() == solver.problem() && s.name() == solver.name()));
        self.solvers.push(solver);
    }

    pub fn get(&self, problem: SolutionKind, name: &str) -> Option<&dyn Solver> {
        self.solvers
            .iter()
            .find(|s| s.problem() == problem && s.name() == name)
            .map(|s| s.as_ref())
    }

    pub fn for_problem(&self, problem: SolutionKind) -> impl Iterator<Item = &dyn Solver> {
        self.solvers.iter().filter(move |s| s.problem() == problem).map(|s| s.as_ref())
    }
}
