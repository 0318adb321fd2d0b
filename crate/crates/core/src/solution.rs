use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, TemporalGraph, TemporalVertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionKind {
    Cover,
    Matching,
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionKind::Cover => "cover",
            SolutionKind::Matching => "matching",
        })
    }
}

impl std::str::FromStr for SolutionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cover" => Ok(SolutionKind::Cover),
            "matching" => Ok(SolutionKind::Matching),
            other => Err(Error::InvalidParameter(format!("unknown problem '{other}'"))),
        }
    }
}

/// A candidate cover or matching: a set of underlying edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    kind: SolutionKind,
    edges: BTreeSet<Edge>,
}

impl SolutionSet {
    pub fn new(kind: SolutionKind, edges: impl IntoIterator<Item = Edge>) -> Self {
        SolutionSet { kind, edges: edges.into_iter().collect() }
    }

    /// Builds a solution from edge ids of `g`.
    pub fn from_ids(kind: SolutionKind, g: &TemporalGraph, ids: impl IntoIterator<Item = usize>) -> Self {
        Self::new(kind, ids.into_iter().map(|id| g.edges()[id]))
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    fn edge_ids(&self, g: &TemporalGraph) -> Result<Vec<usize>> {
        self.edges
            .iter()
            .map(|&e| g.edge_id(e).ok_or(Error::EdgeNotInGraph(e)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub ok: bool,
    pub uncovered: Vec<TemporalVertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    pub ok: bool,
    pub conflicts: Vec<(Edge, Edge)>,
}

/// Checks that every non-isolated temporal vertex is covered by `s`.
pub fn verify_edge_cover(g: &TemporalGraph, s: &SolutionSet) -> Result<CoverReport> {
    let ids = s.edge_ids(g)?;
    let mut covered = BTreeSet::new();
    for id in ids {
        covered.extend(g.temporal_endpoints(id));
    }
    let uncovered: Vec<_> = g.coverable_universe().difference(&covered).copied().collect();
    Ok(CoverReport { ok: uncovered.is_empty(), uncovered })
}

/// Checks that every pair of edges in `m` is vertex-disjoint or time-disjoint.
pub fn verify_matching(g: &TemporalGraph, m: &SolutionSet) -> Result<MatchingReport> {
    let ids = m.edge_ids(g)?;
    let mut conflicts = Vec::new();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if g.edges_conflict(a, b) {
                conflicts.push((g.edges()[a], g.edges()[b]));
            }
        }
    }
    Ok(MatchingReport { ok: conflicts.is_empty(), conflicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Labels;

    fn l(ts: &[u32]) -> Labels {
        ts.iter().copied().collect()
    }

    #[test]
    fn k2_cover() {
        let g = TemporalGraph::new(2, 2, [(1, 2, l(&[1, 2]))]).unwrap();
        let s = SolutionSet::new(SolutionKind::Cover, [Edge::new(1, 2)]);
        assert!(verify_edge_cover(&g, &s).unwrap().ok);
    }

    #[test]
    fn path_with_one_edge_is_not_a_cover() {
        let g = TemporalGraph::new(3, 1, [(1, 2, l(&[1])), (2, 3, l(&[1]))]).unwrap();
        let s = SolutionSet::new(SolutionKind::Cover, [Edge::new(1, 2)]);
        let r = verify_edge_cover(&g, &s).unwrap();
        assert!(!r.ok);
        assert_eq!(r.uncovered, vec![TemporalVertex::new(3, 1)]);
    }

    #[test]
    fn foreign_edge_is_an_error() {
        let g = TemporalGraph::new(3, 1, [(1, 2, l(&[1]))]).unwrap();
        let s = SolutionSet::new(SolutionKind::Cover, [Edge::new(2, 3)]);
        assert_eq!(verify_edge_cover(&g, &s), Err(Error::EdgeNotInGraph(Edge::new(2, 3))));
        assert!(verify_matching(&g, &s).is_err());
    }

    #[test]
    fn matching_time_disjointness() {
        let ok = TemporalGraph::new(3, 2, [(1, 2, l(&[1])), (1, 3, l(&[2]))]).unwrap();
        let bad = TemporalGraph::new(3, 2, [(1, 2, l(&[1])), (1, 3, l(&[1]))]).unwrap();
        let m = SolutionSet::new(SolutionKind::Matching, [Edge::new(1, 2), Edge::new(1, 3)]);
        assert!(verify_matching(&ok, &m).unwrap().ok);
        let r = verify_matching(&bad, &m).unwrap();
        assert!(!r.ok);
        assert_eq!(r.conflicts, vec![(Edge::new(1, 2), Edge::new(1, 3))]);
        let single = SolutionSet::new(SolutionKind::Matching, [Edge::new(1, 2)]);
        assert!(verify_matching(&bad, &single).unwrap().ok);
    }
}
