use crate::error::{Error, Result};
use crate::graph::{TemporalGraph, TemporalVertex, Vertex};

/// Canonical orderings of one bag's vertices, edges `E(X)` (both endpoints in
/// the bag, as global edge ids) and coverable temporal vertices. Subsets of
/// the last two are encoded as `u64` bit masks over these orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BagContext {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
    pub temporal: Vec<TemporalVertex>,
    /// Temporal endpoints of each bag edge, as a mask over `temporal`.
    pub(crate) edge_tv: Vec<u64>,
}

impl BagContext {
    pub fn new(g: &TemporalGraph, bag: &[Vertex]) -> Result<Self> {
        let mut vertices = bag.to_vec();
        vertices.sort_unstable();
        let mut edges = Vec::new();
        for &v in &vertices {
            for &(u, id) in g.incident(v) {
                if u > v && vertices.binary_search(&u).is_ok() {
                    edges.push(id);
                }
            }
        }
        edges.sort_unstable();
        let mut temporal = Vec::new();
        for &v in &vertices {
            temporal.extend(g.active_times(v).into_iter().map(|t| TemporalVertex::new(v, t)));
        }
        if edges.len() > 64 || temporal.len() > 64 {
            return Err(Error::BagTooLarge(format!(
                "bag {:?} has {} edges and {} temporal vertices; at most 64 of each are supported",
                vertices,
                edges.len(),
                temporal.len()
            )));
        }
        let mut ctx = BagContext { vertices, edges, temporal, edge_tv: Vec::new() };
        ctx.edge_tv = ctx
            .edges
            .iter()
            .map(|&id| ctx.mask_of(g.temporal_endpoints(id)))
            .collect();
        Ok(ctx)
    }

    pub fn tv_index(&self, tv: TemporalVertex) -> Option<usize> {
        self.temporal.binary_search(&tv).ok()
    }

    pub fn edge_index(&self, id: usize) -> Option<usize> {
        self.edges.binary_search(&id).ok()
    }

    fn mask_of(&self, tvs: impl IntoIterator<Item = TemporalVertex>) -> u64 {
        tvs.into_iter()
            .filter_map(|tv| self.tv_index(tv))
            .fold(0, |m, i| m | 1 << i)
    }

    /// All temporal vertices of `v` in this bag.
    pub(crate) fn vertex_mask(&self, v: Vertex) -> u64 {
        self.temporal
            .iter()
            .enumerate()
            .filter(|(_, tv)| tv.v == v)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// `V^T(S)` for an edge mask.
    pub(crate) fn covered_by(&self, s: u64) -> u64 {
        bits(s).fold(0, |m, i| m | self.edge_tv[i])
    }

    pub fn edge_ids_of(&self, s: u64) -> impl Iterator<Item = usize> + '_ {
        bits(s).map(|i| self.edges[i])
    }

    pub fn temporal_of(&self, c: u64) -> impl Iterator<Item = TemporalVertex> + '_ {
        bits(c).map(|i| self.temporal[i])
    }

    /// Index map from this context's edges into `other`'s (`None` if absent).
    pub(crate) fn edge_map(&self, other: &BagContext) -> Vec<Option<usize>> {
        self.edges.iter().map(|&id| other.edge_index(id)).collect()
    }

    pub(crate) fn tv_map(&self, other: &BagContext) -> Vec<Option<usize>> {
        self.temporal.iter().map(|&tv| other.tv_index(tv)).collect()
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub(crate) fn remap(m: u64, map: &[Option<usize>]) -> u64 {
    bits(m).filter_map(|i| map[i]).fold(0, |acc, j| acc | 1 << j)
}

/// Renders a mask over `len` items as a 0/1 string, item 0 first; `-` if empty.
pub(crate) fn bit_string(m: u64, len: usize) -> String {
    if len == 0 {
        return "-".into();
    }
    (0..len).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect()
}
