//! Approximation algorithms: greedy per-vertex set cover for temporal edge
//! cover, and the best single-snapshot matching for temporal matching.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, ToPrimitive};

use crate::graph::{TemporalGraph, TemporalVertex};
use crate::solution::{SolutionKind, SolutionSet};
use crate::static_alg::{greedy_set_cover, harmonic, max_matching_static, SetSystem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReport {
    pub solution: SolutionSet,
    /// Cover: edges picked for each vertex in turn. Matching: maximum
    /// matching size of each snapshot.
    pub per_step: Vec<usize>,
    /// Proven ratio to the optimum: `2·H(τ)` for cover, `τ` for matching.
    pub bound_factor: BigRational,
}

impl ApproxReport {
    pub fn bound_factor_f64(&self) -> f64 {
        self.bound_factor.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Visits vertices in ascending order; for each one, greedily set-covers its
/// still-uncovered active times with the label sets of its incident edges.
pub fn greedy_temporal_edge_cover(g: &TemporalGraph) -> ApproxReport {
    let mut covered: BTreeSet<TemporalVertex> = BTreeSet::new();
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    let mut per_step = Vec::with_capacity(g.n() as usize);
    for v in 1..=g.n() {
        let pending: BTreeSet<u32> = g
            .active_times(v)
            .into_iter()
            .filter(|&t| !covered.contains(&TemporalVertex::new(v, t)))
            .collect();
        if pending.is_empty() {
            per_step.push(0);
            continue;
        }
        let mut ids: Vec<usize> = g.incident(v).iter().map(|&(_, id)| id).collect();
        ids.sort_unstable();
        let sets = ids
            .iter()
            .map(|&id| g.labels(id).intersection(&pending).copied().collect())
            .collect();
        let sys = SetSystem::new(pending, sets).expect("sets are restricted to the universe");
        let picks = greedy_set_cover(&sys).expect("every active time has an incident edge");
        per_step.push(picks.len());
        for i in picks {
            let id = ids[i];
            chosen.insert(id);
            covered.extend(g.temporal_endpoints(id));
        }
    }
    let factor = BigRational::from_integer(BigInt::from(2)) * harmonic(g.tau());
    ApproxReport {
        solution: SolutionSet::from_ids(SolutionKind::Cover, g, chosen),
        per_step,
        bound_factor: factor,
    }
}

/// Largest maximum matching over all snapshots, earliest snapshot on ties.
pub fn snapshot_matching_approx(g: &TemporalGraph) -> ApproxReport {
    let matchings: Vec<_> = (1..=g.tau())
        .map(|t| max_matching_static(&g.snapshot(t).expect("t within lifetime")))
        .collect();
    let per_step: Vec<usize> = matchings.iter().map(|m| m.len()).collect();
    let best = per_step
        .iter()
        .enumerate()
        .max_by_key(|&(t, &size)| (size, std::cmp::Reverse(t)))
        .map(|(t, _)| t)
        .expect("tau is positive");
    ApproxReport {
        solution: SolutionSet::new(SolutionKind::Matching, matchings[best].edges.iter().copied()),
        per_step,
        bound_factor: BigRational::from_integer(BigInt::from(g.tau())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::labels;
    use crate::solution::{verify_edge_cover, verify_matching};

    #[test]
    fn k2() {
        let g = TemporalGraph::new(2, 2, [(1, 2, labels(&[1, 2]))]).unwrap();
        let r = greedy_temporal_edge_cover(&g);
        assert_eq!(r.solution.len(), 1);
        assert_eq!(r.per_step, vec![1, 0]);
        assert_eq!(r.bound_factor, BigRational::new(3.into(), 1.into()));
    }

    #[test]
    fn tau_star_is_tight() {
        let tau = 4;
        let g = TemporalGraph::new(tau + 1, tau, (1..=tau).map(|i| (1, i + 1, labels(&[i])))).unwrap();
        let r = snapshot_matching_approx(&g);
        assert_eq!(r.solution.len(), 1);
        assert_eq!(r.per_step, vec![1; tau as usize]);
        assert!(verify_matching(&g, &r.solution).unwrap().ok);
        assert_eq!(r.bound_factor_f64(), 4.0);
        assert_eq!(r.solution.edges().first().unwrap().v(), 2);
    }

    #[test]
    fn greedy_cover_verifies_on_path() {
        let g = TemporalGraph::new(4, 2, [(1, 2, labels(&[1])), (2, 3, labels(&[1, 2])), (3, 4, labels(&[2]))])
            .unwrap();
        let r = greedy_temporal_edge_cover(&g);
        assert!(verify_edge_cover(&g, &r.solution).unwrap().ok);
    }

    #[test]
    fn empty_graph() {
        let g = TemporalGraph::new(2, 1, []).unwrap();
        assert!(greedy_temporal_edge_cover(&g).solution.is_empty());
        assert!(snapshot_matching_approx(&g).solution.is_empty());
    }
}
