//! Static and temporal graph model.
//!
//! Vertices are the integers `1..=n`. An [`Edge`] is an unordered pair stored
//! with its smaller endpoint first, so the derived ordering is the
//! lexicographic order on endpoint pairs. Every graph keeps its edges in that
//! canonical order, and an edge's position in it is its *edge id*.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type Time = u32;
pub type Labels = BTreeSet<Time>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Normalizes the endpoint order. Panics on a self-loop.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert_ne!(u, v, "self-loop {u}-{v}");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn u(self) -> Vertex {
        self.0
    }

    pub fn v(self) -> Vertex {
        self.1
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint that is not `x`.
    pub fn other(self, x: Vertex) -> Vertex {
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }

    pub fn shares_vertex(self, other: Edge) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TemporalVertex {
    pub v: Vertex,
    pub t: Time,
}

impl TemporalVertex {
    pub fn new(v: Vertex, t: Time) -> Self {
        TemporalVertex { v, t }
    }
}

impl fmt::Display for TemporalVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.v, self.t)
    }
}

/// Simple undirected graph on `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticGraph {
    n: u32,
    edges: Vec<Edge>,
    // adjacency[v] = (neighbor, edge id), sorted by neighbor; index 0 unused
    adjacency: Vec<Vec<(Vertex, usize)>>,
}

impl StaticGraph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::VertexOutOfRange { v: x, n });
                }
            }
            list.push(Edge::new(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate edge {}", w[0])));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: u32, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n as usize + 1];
        for (id, e) in edges.iter().enumerate() {
            adjacency[e.u() as usize].push((e.v(), id));
            adjacency[e.v() as usize].push((e.u(), id));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        StaticGraph { n, edges, adjacency }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    /// `(neighbor, edge id)` pairs sorted by neighbor.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_id(e).is_some()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n as usize + 1];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(y, _) in self.incident(x) {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// A static graph plus a non-empty label set in `1..=tau` for every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    base: StaticGraph,
    tau: u32,
    // parallel to base.edges()
    labels: Vec<Labels>,
}

impl TemporalGraph {
    pub fn new(
        n: u32,
        tau: u32,
        edges: impl IntoIterator<Item = (Vertex, Vertex, Labels)>,
    ) -> Result<Self> {
        if tau == 0 {
            return Err(Error::InvalidGraph("lifetime must be positive".into()));
        }
        let mut by_edge: HashMap<Edge, Labels> = HashMap::new();
        let mut pairs = Vec::new();
        for (u, v, labels) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            let e = Edge::new(u, v);
            if labels.is_empty() {
                return Err(Error::InvalidGraph(format!("edge {e} has an empty label set")));
            }
            if let Some(&t) = labels.iter().find(|&&t| t == 0 || t > tau) {
                return Err(Error::TimeOutOfRange { t, tau });
            }
            if by_edge.insert(e, labels).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge {e}")));
            }
            pairs.push((u, v));
        }
        let base = StaticGraph::new(n, pairs)?;
        let labels = base.edges().iter().map(|e| by_edge.remove(e).unwrap()).collect();
        Ok(TemporalGraph { base, tau, labels })
    }

    pub fn base(&self) -> &StaticGraph {
        &self.base
    }

    pub fn n(&self) -> u32 {
        self.base.n
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn edges(&self) -> &[Edge] {
        self.base.edges()
    }

    pub fn labels(&self, edge_id: usize) -> &Labels {
        &self.labels[edge_id]
    }

    pub fn labels_of(&self, e: Edge) -> Option<&Labels> {
        self.base.edge_id(e).map(|id| &self.labels[id])
    }

    /// `(edge, labels)` in canonical edge order.
    pub fn labelled_edges(&self) -> impl Iterator<Item = (Edge, &Labels)> {
        self.base.edges().iter().copied().zip(self.labels.iter())
    }

    pub fn incident(&self, v: Vertex) -> &[(Vertex, usize)] {
        self.base.incident(v)
    }

    pub fn edge_id(&self, e: Edge) -> Option<usize> {
        self.base.edge_id(e)
    }

    /// Spanning subgraph of the edges active at time `t`.
    pub fn snapshot(&self, t: Time) -> Result<StaticGraph> {
        self.check_time(t)?;
        let edges = self
            .labelled_edges()
            .filter(|(_, l)| l.contains(&t))
            .map(|(e, _)| e)
            .collect();
        Ok(StaticGraph::from_sorted(self.n(), edges))
    }

    /// True iff no edge at `v` is active at `t`.
    pub fn is_isolated(&self, v: Vertex, t: Time) -> bool {
        !self.incident(v).iter().any(|&(_, id)| self.labels[id].contains(&t))
    }

    /// All non-isolated temporal vertices, sorted by `(v, t)`.
    pub fn coverable_universe(&self) -> BTreeSet<TemporalVertex> {
        let mut out = BTreeSet::new();
        for (e, labels) in self.labelled_edges() {
            for &t in labels {
                out.insert(TemporalVertex::new(e.u(), t));
                out.insert(TemporalVertex::new(e.v(), t));
            }
        }
        out
    }

    /// Times at which `v` is not isolated.
    pub fn active_times(&self, v: Vertex) -> Labels {
        let mut out = Labels::new();
        for &(_, id) in self.incident(v) {
            out.extend(self.labels[id].iter().copied());
        }
        out
    }

    /// Temporal vertices `V^T(e)` touched by an edge.
    pub fn temporal_endpoints(&self, edge_id: usize) -> impl Iterator<Item = TemporalVertex> + '_ {
        let e = self.edges()[edge_id];
        self.labels[edge_id]
            .iter()
            .flat_map(move |&t| [TemporalVertex::new(e.u(), t), TemporalVertex::new(e.v(), t)])
    }

    /// Two distinct edges may not both be in a temporal matching.
    pub fn edges_conflict(&self, a: usize, b: usize) -> bool {
        a != b
            && self.edges()[a].shares_vertex(self.edges()[b])
            && !self.labels[a].is_disjoint(&self.labels[b])
    }

    fn check_time(&self, t: Time) -> Result<()> {
        if t == 0 || t > self.tau {
            Err(Error::TimeOutOfRange { t, tau: self.tau })
        } else {
            Ok(())
        }
    }
}
