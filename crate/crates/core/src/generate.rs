//! Seeded random temporal graphs.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Labels, TemporalGraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    pub n: u32,
    /// Probability that a vertex pair becomes an edge.
    pub p: f64,
    pub tau: u32,
    /// Probability that an edge carries a given time.
    pub q: f64,
    pub seed: u64,
}

/// Each pair `u < v` is an edge with probability `p`; each time of an edge is
/// present with probability `q`, resampling label sets that come out empty.
/// Same parameters give the same graph.
pub fn random_temporal_graph(params: RandomParams) -> Result<TemporalGraph> {
    let RandomParams { n, p, tau, q, seed } = params;
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) || q == 0.0 {
        return Err(Error::InvalidParameter(format!("need 0 <= p <= 1 and 0 < q <= 1, got p={p} q={q}")));
    }
    if tau == 0 {
        return Err(Error::InvalidParameter("tau must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if !rng.gen_bool(p) {
                continue;
            }
            let labels = loop {
                let l: Labels = (1..=tau).filter(|_| rng.gen_bool(q)).collect();
                if !l.is_empty() {
                    break l;
                }
            };
            edges.push((u, v, labels));
        }
    }
    TemporalGraph::new(n, tau, edges)
}

/// Random subsets of `1..=universe`; each element joins each set with
/// probability `q`. The result need not cover the universe.
pub fn random_sets(universe: u32, m: usize, q: f64, rng: &mut impl Rng) -> Vec<BTreeSet<u32>> {
    (0..m)
        .map(|_| loop {
            let s: BTreeSet<u32> = (1..=universe).filter(|_| rng.gen_bool(q)).collect();
            if !s.is_empty() {
                break s;
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::serialize_temporal_graph;

    #[test]
    fn same_seed_same_bytes() {
        let params = RandomParams { n: 8, p: 0.4, tau: 3, q: 0.5, seed: 7 };
        let a = serialize_temporal_graph(&random_temporal_graph(params).unwrap());
        let b = serialize_temporal_graph(&random_temporal_graph(params).unwrap());
        assert_eq!(a, b);
        let c = serialize_temporal_graph(&random_temporal_graph(RandomParams { seed: 8, ..params }).unwrap());
        assert_ne!(a, c);
    }

    #[test]
    fn bad_parameters() {
        let params = RandomParams { n: 3, p: 1.5, tau: 2, q: 0.5, seed: 0 };
        assert!(random_temporal_graph(params).is_err());
        assert!(random_temporal_graph(RandomParams { p: 0.5, q: 0.0, ..params }).is_err());
    }

    #[test]
    fn complete_graph_with_full_labels() {
        let g = random_temporal_graph(RandomParams { n: 4, p: 1.0, tau: 2, q: 1.0, seed: 1 }).unwrap();
        assert_eq!(g.m(), 6);
        assert_eq!(g.coverable_universe().len(), 8);
    }
}
