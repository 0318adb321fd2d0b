use std::collections::{BTreeMap, BTreeSet};

use super::{GadgetInstance, ReductionKind};
use crate::error::{Error, Result};
use crate::graph::{Labels, TemporalGraph, Vertex};
use crate::solution::{verify_edge_cover, SolutionSet};
use crate::static_alg::SetSystem;

/// Times `1..=|U|`, the `r`-th smallest element becoming time `r`.
fn time_labels(sys: &SetSystem) -> Result<(u32, Vec<Labels>)> {
    let rank: BTreeMap<u32, u32> = sys.universe().iter().zip(1..).map(|(&x, r)| (x, r)).collect();
    let tau = rank.len() as u32;
    if tau == 0 {
        return Err(Error::InvalidSetSystem("empty universe".into()));
    }
    let labels = sys
        .sets()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if s.is_empty() {
                Err(Error::InvalidSetSystem(format!("set {} is empty", i + 1)))
            } else {
                Ok(s.iter().map(|x| rank[x]).collect())
            }
        })
        .collect::<Result<_>>()?;
    Ok((tau, labels))
}

fn require_coverable(sys: &SetSystem) -> Result<()> {
    match sys.uncovered_element() {
        Some(x) => Err(Error::NotCoverable(x)),
        None => Ok(()),
    }
}

/// Spider with centre `r = 1`, legs `r–x_i–y_i` where `x_i = 2i`,
/// `y_i = 2i+1`; `λ(r x_i) = S_i` and `λ(x_i y_i) = U`. Minimum temporal
/// edge cover is `m + opt`, so the threshold is `m + k`.
pub fn reduce_setcover_to_tree_cover(sys: &SetSystem, k: usize) -> Result<GadgetInstance> {
    require_coverable(sys)?;
    let (tau, labels) = time_labels(sys)?;
    let full: Labels = (1..=tau).collect();
    let mut edges = Vec::new();
    for (i, l) in labels.into_iter().enumerate() {
        let x = 2 * i as Vertex + 2;
        edges.push((1, x, l));
        edges.push((x, x + 1, full.clone()));
    }
    let m = sys.m();
    Ok(GadgetInstance {
        graph: TemporalGraph::new(2 * m as u32 + 1, tau, edges)?,
        marks: BTreeMap::new(),
        threshold: m + k,
        kind: ReductionKind::SetCoverTree,
    })
}

/// Star with centre `r = 1` and leaves `x_i = i+1`, `λ(r x_i) = S_i`.
/// Maximum temporal matching equals the maximum packing.
pub fn reduce_setpacking_to_star_matching(sys: &SetSystem, k: usize) -> Result<GadgetInstance> {
    let (tau, labels) = time_labels(sys)?;
    let edges = labels.into_iter().enumerate().map(|(i, l)| (1, i as Vertex + 2, l));
    Ok(GadgetInstance {
        graph: TemporalGraph::new(sys.m() as u32 + 1, tau, edges)?,
        marks: BTreeMap::new(),
        threshold: k,
        kind: ReductionKind::SetPackingStar,
    })
}

/// `m²` roots `r_h = h`, each joined to every `x_j = m²+j` with
/// `λ = S_j`, plus pendant edges `x_j–y_j` (`y_j = m²+m+j`) with `λ = U`.
/// Threshold `m + k·m²`.
pub fn reduce_setcover_inapprox(sys: &SetSystem, k: usize) -> Result<GadgetInstance> {
    require_coverable(sys)?;
    let (tau, labels) = time_labels(sys)?;
    let m = sys.m() as u32;
    let roots = m * m;
    let full: Labels = (1..=tau).collect();
    let mut edges = Vec::new();
    for h in 1..=roots {
        for (j, l) in labels.iter().enumerate() {
            edges.push((h, roots + j as u32 + 1, l.clone()));
        }
    }
    for j in 1..=m {
        edges.push((roots + j, roots + m + j, full.clone()));
    }
    let m = m as usize;
    Ok(GadgetInstance {
        graph: TemporalGraph::new((roots + 2 * m as u32).max(1), tau, edges)?,
        marks: BTreeMap::new(),
        threshold: m + k * m * m,
        kind: ReductionKind::Inapprox,
    })
}

/// Reads a set cover off a temporal edge cover of the inapproximability
/// instance: the sets behind the root with the fewest chosen edges (lowest
/// root on ties), as ascending 0-based indices.
pub fn cover_to_setcover(sys: &SetSystem, cover: &SolutionSet) -> Result<Vec<usize>> {
    let inst = reduce_setcover_inapprox(sys, 0)?;
    let report = verify_edge_cover(&inst.graph, cover)?;
    if !report.ok {
        return Err(Error::NotACover(report.uncovered.len()));
    }
    let m = sys.m() as u32;
    let roots = m * m;
    let mut groups: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); roots as usize];
    for e in cover.edges() {
        if e.u() <= roots {
            groups[e.u() as usize - 1].insert((e.v() - roots - 1) as usize);
        }
    }
    let best = groups.into_iter().min_by_key(|g| g.len()).unwrap_or_default();
    Ok(best.into_iter().collect())
}
