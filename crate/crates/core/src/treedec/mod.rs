//! Tree decompositions of underlying graphs: construction, validation, and
//! conversion to nice form for the dynamic programs.

mod elimination;
mod nice;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::{content_lines, join_list, parse_list, parse_num};
use crate::graph::{Edge, StaticGraph, Vertex};

pub use elimination::{exact_elimination_order, min_fill_order, EXACT_LIMIT};
pub use nice::{NiceKind, NiceNode, NiceTreeDecomposition};

/// Bags plus the tree edges between them. Bags are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    tree: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionMode {
    /// Min-fill elimination ordering.
    Heuristic,
    /// Optimal elimination ordering; refused above [`EXACT_LIMIT`] vertices.
    Exact,
}

impl std::str::FromStr for DecompositionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heuristic" | "min-fill" => Ok(DecompositionMode::Heuristic),
            "exact" => Ok(DecompositionMode::Exact),
            other => Err(Error::InvalidParameter(format!("unknown decomposition mode '{other}'"))),
        }
    }
}

/// One failed condition of a tree decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    /// Condition 1: the vertex is in no bag.
    VertexMissing(Vertex),
    /// Condition 2: no bag holds both endpoints.
    EdgeUncovered(Edge),
    /// Condition 3: the bags holding the vertex are not connected.
    Disconnected(Vertex),
    UnknownVertex(Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(msg) => write!(f, "not a tree: {msg}"),
            Violation::VertexMissing(v) => write!(f, "condition 1: vertex {v} is in no bag"),
            Violation::EdgeUncovered(e) => write!(f, "condition 2: no bag contains edge {e}"),
            Violation::Disconnected(v) => {
                write!(f, "condition 3: bags containing {v} are not connected")
            }
            Violation::UnknownVertex(v) => write!(f, "bag mentions unknown vertex {v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidDecomposition(v.to_string())),
        }
    }
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<Vertex>>, tree: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, tree }
    }

    /// One bag holding every vertex.
    pub fn single_bag(h: &StaticGraph) -> Self {
        Self::new(vec![h.vertices().collect()], Vec::new())
    }

    /// Builds a decomposition from an elimination ordering: every vertex gets
    /// the bag `{v} ∪ N⁺(v)` of its later neighbours in the filled graph.
    /// All component roots hang off an empty bag at node 0.
    pub fn from_elimination_order(h: &StaticGraph, order: &[Vertex]) -> Result<Self> {
        elimination::decomposition_from_order(h, order)
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one; 0 when every bag is empty.
    pub fn width(&self) -> usize {
        width_of(self.bags.iter().map(|b| b.len()))
    }

    pub(crate) fn adjacency(&self) -> Result<Vec<Vec<usize>>> {
        let k = self.bags.len();
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in &self.tree {
            if a >= k || b >= k {
                return Err(Error::InvalidDecomposition(format!("tree edge {a}-{b} names a missing node")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Ok(adj)
    }

    fn tree_violation(&self) -> Option<Violation> {
        let k = self.bags.len();
        if k == 0 {
            return Some(Violation::NotATree("no nodes".into()));
        }
        if self.tree.len() != k - 1 {
            return Some(Violation::NotATree(format!("{k} nodes but {} edges", self.tree.len())));
        }
        let adj = match self.adjacency() {
            Ok(adj) => adj,
            Err(e) => return Some(Violation::NotATree(e.to_string())),
        };
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            None
        } else {
            Some(Violation::NotATree("disconnected".into()))
        }
    }

    /// Third condition only; does not need the graph.
    fn connectivity_violations(&self, adj: &[Vec<usize>]) -> Vec<Violation> {
        let mut holders: std::collections::BTreeMap<Vertex, Vec<usize>> = Default::default();
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                holders.entry(v).or_default().push(i);
            }
        }
        let mut out = Vec::new();
        for (v, nodes) in holders {
            let member: BTreeSet<usize> = nodes.iter().copied().collect();
            let mut seen = BTreeSet::from([nodes[0]]);
            let mut stack = vec![nodes[0]];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if member.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if seen.len() != member.len() {
                out.push(Violation::Disconnected(v));
            }
        }
        out
    }

    /// Checks tree shape and the three decomposition conditions against `h`.
    pub fn validate(&self, h: &StaticGraph) -> ValidationReport {
        let mut violations = Vec::new();
        if let Some(v) = self.tree_violation() {
            return ValidationReport { violations: vec![v] };
        }
        let adj = self.adjacency().expect("checked by tree_violation");
        let mut present = vec![false; h.n() as usize + 1];
        for bag in &self.bags {
            for &v in bag {
                if v == 0 || v > h.n() {
                    violations.push(Violation::UnknownVertex(v));
                } else {
                    present[v as usize] = true;
                }
            }
        }
        violations.extend(
            h.vertices()
                .filter(|&v| !present[v as usize])
                .map(Violation::VertexMissing),
        );
        for &e in h.edges() {
            let covered = self
                .bags
                .iter()
                .any(|b| b.binary_search(&e.u()).is_ok() && b.binary_search(&e.v()).is_ok());
            if !covered {
                violations.push(Violation::EdgeUncovered(e));
            }
        }
        violations.extend(self.connectivity_violations(&adj));
        ValidationReport { violations }
    }

    /// Rooted at node 0; vertices introduced and forgotten in ascending order.
    pub fn to_nice(&self) -> Result<NiceTreeDecomposition> {
        if let Some(v) = self.tree_violation() {
            return Err(Error::InvalidDecomposition(v.to_string()));
        }
        let adj = self.adjacency()?;
        ValidationReport { violations: self.connectivity_violations(&adj) }.into_result()?;
        Ok(nice::nicify(self, &adj))
    }

    /// Dump lines: `b <id> bag <v1,...>` then `t <parent> <child>`, rooted at 0.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, bag) in self.bags.iter().enumerate() {
            let _ = writeln!(out, "b {i} bag {}", join_list(bag.iter().copied()));
        }
        for &(a, b) in &self.tree {
            let _ = writeln!(out, "t {a} {b}");
        }
        out
    }
}

pub(crate) fn width_of(sizes: impl Iterator<Item = usize>) -> usize {
    sizes.max().unwrap_or(0).saturating_sub(1)
}

/// Either kind of decomposition read back from a dump file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionFile {
    Plain(TreeDecomposition),
    Nice(NiceTreeDecomposition),
}

impl DecompositionFile {
    /// A file whose kinds are all `bag` is a plain decomposition; otherwise
    /// every node must carry a nice kind.
    pub fn parse(text: &str) -> Result<Self> {
        let mut nodes: Vec<Option<(String, Vec<Vertex>)>> = Vec::new();
        let mut links = Vec::new();
        for (line, fields) in content_lines(text) {
            match fields[0] {
                "b" if fields.len() == 3 || fields.len() == 4 => {
                    let id: usize = parse_num(line, fields[1], "node id")?;
                    let bag = match fields.get(3) {
                        Some(f) => parse_list(line, f, "vertex")?,
                        None => Vec::new(),
                    };
                    if nodes.len() <= id {
                        nodes.resize(id + 1, None);
                    }
                    if nodes[id].is_some() {
                        return Err(Error::parse(line, format!("node {id} defined twice")));
                    }
                    nodes[id] = Some((fields[2].to_string(), bag));
                }
                "t" if fields.len() == 3 => {
                    let a: usize = parse_num(line, fields[1], "node id")?;
                    let b: usize = parse_num(line, fields[2], "node id")?;
                    links.push((line, a, b));
                }
                _ => return Err(Error::parse(line, "expected 'b <id> <kind> <bag>' or 't <parent> <child>'")),
            }
        }
        let nodes: Vec<(String, Vec<Vertex>)> = nodes
            .into_iter()
            .enumerate()
            .map(|(i, n)| n.ok_or_else(|| Error::InvalidDecomposition(format!("node {i} missing"))))
            .collect::<Result<_>>()?;
        for &(line, a, b) in &links {
            if a >= nodes.len() || b >= nodes.len() {
                return Err(Error::parse(line, "tree edge names an undefined node"));
            }
        }
        if nodes.iter().all(|(k, _)| k == "bag") {
            let tree = links.iter().map(|&(_, a, b)| (a, b)).collect();
            let bags = nodes.into_iter().map(|(_, b)| b).collect();
            return Ok(DecompositionFile::Plain(TreeDecomposition::new(bags, tree)));
        }
        let links: Vec<(usize, usize)> = links.iter().map(|&(_, a, b)| (a, b)).collect();
        NiceTreeDecomposition::from_parts(nodes, &links).map(DecompositionFile::Nice)
    }
}

/// Builds a decomposition of `h` in the given mode.
pub fn build_tree_decomposition(h: &StaticGraph, mode: DecompositionMode) -> Result<TreeDecomposition> {
    let order = match mode {
        DecompositionMode::Heuristic => min_fill_order(h),
        DecompositionMode::Exact => exact_elimination_order(h)?,
    };
    TreeDecomposition::from_elimination_order(h, &order)
}

/// Exact treewidth for graphs within [`EXACT_LIMIT`].
pub fn treewidth(h: &StaticGraph) -> Result<usize> {
    Ok(build_tree_decomposition(h, DecompositionMode::Exact)?.width())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: u32) -> StaticGraph {
        StaticGraph::new(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    /// Treewidth as the minimum over all elimination orders of the largest
    /// later-neighbourhood, by enumerating permutations.
    fn brute_treewidth(h: &StaticGraph) -> usize {
        fn width_of_order(h: &StaticGraph, order: &[Vertex]) -> usize {
            let n = h.n() as usize;
            let mut adj = vec![BTreeSet::new(); n + 1];
            for e in h.edges() {
                adj[e.u() as usize].insert(e.v());
                adj[e.v() as usize].insert(e.u());
            }
            let mut w = 0;
            for &v in order {
                let nb: Vec<Vertex> = adj[v as usize].iter().copied().collect();
                w = w.max(nb.len());
                for &a in &nb {
                    adj[a as usize].remove(&v);
                    for &b in &nb {
                        if a != b {
                            adj[a as usize].insert(b);
                        }
                    }
                }
            }
            w
        }
        fn permute(h: &StaticGraph, rest: &mut Vec<Vertex>, prefix: &mut Vec<Vertex>, best: &mut usize) {
            if rest.is_empty() {
                *best = (*best).min(width_of_order(h, prefix));
                return;
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                prefix.push(v);
                permute(h, rest, prefix, best);
                prefix.pop();
                rest.insert(i, v);
            }
        }
        let mut best = usize::MAX;
        permute(h, &mut h.vertices().collect(), &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn widths_of_small_graphs() {
        let path = StaticGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        for mode in [DecompositionMode::Heuristic, DecompositionMode::Exact] {
            let d = build_tree_decomposition(&path, mode).unwrap();
            assert!(d.validate(&path).is_valid());
            assert_eq!(d.width(), 1);
        }
        let c4 = cycle(4);
        assert_eq!(brute_treewidth(&c4), 2);
        assert_eq!(treewidth(&c4).unwrap(), 2);
        let tree = StaticGraph::new(7, [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7)]).unwrap();
        assert_eq!(build_tree_decomposition(&tree, DecompositionMode::Heuristic).unwrap().width(), 1);
        assert_eq!(treewidth(&tree).unwrap(), 1);
    }

    #[test]
    fn exact_refuses_large_graphs() {
        let big = cycle(13);
        assert!(matches!(
            build_tree_decomposition(&big, DecompositionMode::Exact),
            Err(Error::ExactTooLarge { .. })
        ));
    }

    #[test]
    fn missing_edge_is_condition_two() {
        let path = StaticGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let d = TreeDecomposition::new(vec![vec![1, 2], vec![2]], vec![(0, 1)]);
        let report = d.validate(&path);
        assert!(report.violations.contains(&Violation::EdgeUncovered(Edge::new(2, 3))));
        assert!(report.violations.contains(&Violation::VertexMissing(3)));
        assert!(report.violations[0].to_string().starts_with("condition"));
    }

    #[test]
    fn disconnected_holders_are_condition_three() {
        let path = StaticGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        let d = TreeDecomposition::new(vec![vec![1, 2], vec![3], vec![2, 3]], vec![(0, 1), (1, 2)]);
        assert_eq!(d.validate(&path).violations, vec![Violation::Disconnected(2)]);
        assert!(d.to_nice().is_err());
    }

    #[test]
    fn single_bag_width() {
        let k3 = StaticGraph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        let d = TreeDecomposition::single_bag(&k3);
        assert!(d.validate(&k3).is_valid());
        assert_eq!(d.width(), 2);
        let empty = StaticGraph::new(0, []).unwrap();
        let d = build_tree_decomposition(&empty, DecompositionMode::Heuristic).unwrap();
        assert_eq!(d.width(), 0);
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn dump_round_trip() {
        let c4 = cycle(4);
        let d = build_tree_decomposition(&c4, DecompositionMode::Heuristic).unwrap();
        assert_eq!(DecompositionFile::parse(&d.to_text()).unwrap(), DecompositionFile::Plain(d.clone()));
        let nice = d.to_nice().unwrap();
        assert_eq!(DecompositionFile::parse(&nice.to_text()).unwrap(), DecompositionFile::Nice(nice));
    }

    pub(crate) fn arb_graph(max_n: u32) -> impl Strategy<Value = StaticGraph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs: Vec<(u32, u32)> =
                (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            let k = pairs.len();
            proptest::sample::subsequence(pairs, 0..=k).prop_map(move |es| StaticGraph::new(n, es).unwrap())
        })
    }

    proptest! {
        #[test]
        fn built_decompositions_are_valid(h in arb_graph(9)) {
            for mode in [DecompositionMode::Heuristic, DecompositionMode::Exact] {
                let d = build_tree_decomposition(&h, mode).unwrap();
                let report = d.validate(&h);
                prop_assert!(report.is_valid(), "{:?}", report);
                let max_bag = d.bags().iter().map(|b| b.len()).max().unwrap();
                prop_assert_eq!(d.width(), max_bag.saturating_sub(1));
            }
        }

        #[test]
        fn exact_width_is_treewidth(h in arb_graph(6)) {
            prop_assert_eq!(treewidth(&h).unwrap(), brute_treewidth(&h));
            let heuristic = build_tree_decomposition(&h, DecompositionMode::Heuristic).unwrap();
            prop_assert!(heuristic.width() >= treewidth(&h).unwrap());
        }

        #[test]
        fn nice_form_is_valid(h in arb_graph(9), exact in any::<bool>()) {
            let mode = if exact { DecompositionMode::Exact } else { DecompositionMode::Heuristic };
            let d = build_tree_decomposition(&h, mode).unwrap();
            let nice = d.to_nice().unwrap();
            prop_assert!(nice.validate(&h).is_ok(), "{:?}", nice.validate(&h));
            prop_assert_eq!(nice.width(), d.width());
            let mut forgets = vec![0usize; h.n() as usize + 1];
            for node in nice.nodes() {
                if let NiceKind::Forget(v) = node.kind { forgets[v as usize] += 1; }
            }
            prop_assert!(forgets[1..].iter().all(|&c| c == 1));
            for &e in h.edges() {
                let seen = nice.nodes().iter().any(|node| {
                    matches!(node.kind, NiceKind::Introduce(_) | NiceKind::Join)
                        && node.bag.contains(&e.u()) && node.bag.contains(&e.v())
                });
                prop_assert!(seen, "edge {} never inside an introduce/join bag", e);
            }
            let total: usize = d.bags().iter().map(|b| b.len()).sum();
            prop_assert!(nice.nodes().len() <= 4 * total + 2 * d.len() + 1);
        }
    }
}
