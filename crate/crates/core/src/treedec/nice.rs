use std::fmt;
use std::fmt::Write as _;

use super::{width_of, TreeDecomposition};
use crate::error::{Error, Result};
use crate::format::join_list;
use crate::graph::{StaticGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

impl NiceKind {
    fn name(self) -> &'static str {
        match self {
            NiceKind::Leaf => "leaf",
            NiceKind::Introduce(_) => "introduce",
            NiceKind::Forget(_) => "forget",
            NiceKind::Join => "join",
        }
    }
}

impl fmt::Display for NiceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NiceKind::Introduce(v) | NiceKind::Forget(v) => write!(f, "{} {v}", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
    root: usize,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidDecomposition(msg.into())
}

/// Sorted-bag difference `a ∖ b`.
fn difference(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NiceKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }

    fn introduce(&mut self, mut top: usize, vs: &[Vertex]) -> usize {
        for &v in vs {
            let mut bag = self.nodes[top].bag.clone();
            let at = bag.binary_search(&v).unwrap_err();
            bag.insert(at, v);
            top = self.push(NiceKind::Introduce(v), bag, vec![top]);
        }
        top
    }

    fn forget(&mut self, mut top: usize, vs: &[Vertex]) -> usize {
        for &v in vs {
            let bag: Vec<Vertex> = self.nodes[top].bag.iter().copied().filter(|&x| x != v).collect();
            top = self.push(NiceKind::Forget(v), bag, vec![top]);
        }
        top
    }
}

/// Post-order conversion of a rooted plain decomposition. Node indices of the
/// result always put children before their parents.
pub(super) fn nicify(d: &TreeDecomposition, adj: &[Vec<usize>]) -> NiceTreeDecomposition {
    let k = d.len();
    let mut parent = vec![usize::MAX; k];
    let mut order = vec![0];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let mut children = vec![Vec::new(); k];
    for &x in &order[1..] {
        children[parent[x]].push(x);
    }

    let mut b = Builder { nodes: Vec::new() };
    let mut top = vec![usize::MAX; k];
    for &x in order.iter().rev() {
        let bag = &d.bags()[x];
        let mut branches = Vec::new();
        for &c in &children[x] {
            let cbag = &d.bags()[c];
            let t = b.forget(top[c], &difference(cbag, bag));
            branches.push(b.introduce(t, &difference(bag, cbag)));
        }
        if branches.is_empty() {
            let leaf = b.push(NiceKind::Leaf, Vec::new(), Vec::new());
            branches.push(b.introduce(leaf, bag));
        }
        let mut acc = branches[0];
        for &other in &branches[1..] {
            acc = b.push(NiceKind::Join, bag.clone(), vec![acc, other]);
        }
        top[x] = acc;
    }
    let root_bag = d.bags()[0].clone();
    let root = b.forget(top[0], &root_bag);
    NiceTreeDecomposition { nodes: b.nodes, root }
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn width(&self) -> usize {
        width_of(self.nodes.iter().map(|n| n.bag.len()))
    }

    /// Node indices with every child listed before its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded {
                out.push(x);
            } else {
                stack.push((x, true));
                for &c in self.nodes[x].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Forgets the node kinds.
    pub fn to_plain(&self) -> TreeDecomposition {
        let bags = self.nodes.iter().map(|n| n.bag.clone()).collect();
        let tree = self
            .nodes
            .iter()
            .enumerate()
            .flat_map(|(p, n)| n.children.iter().map(move |&c| (p, c)))
            .collect();
        TreeDecomposition::new(bags, tree)
    }

    /// Shape checks that do not need the graph: rooted tree, empty root and
    /// leaf bags, and the per-kind bag relations.
    pub fn check_structure(&self) -> Result<()> {
        let k = self.nodes.len();
        if self.root >= k {
            return Err(invalid("root index out of range"));
        }
        if !self.nodes[self.root].bag.is_empty() {
            return Err(invalid("root bag is not empty"));
        }
        let mut parents = vec![0usize; k];
        for n in &self.nodes {
            for &c in &n.children {
                if c >= k {
                    return Err(invalid(format!("child {c} does not exist")));
                }
                parents[c] += 1;
            }
        }
        for (i, &p) in parents.iter().enumerate() {
            let want = usize::from(i != self.root);
            if p != want {
                return Err(invalid(format!("node {i} has {p} parents")));
            }
        }
        if self.post_order().len() != k {
            return Err(invalid("nodes unreachable from the root"));
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if n.bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(format!("node {i}: bag not sorted")));
            }
            let child_bag = |j: usize| &self.nodes[n.children[j]].bag;
            let ok = match n.kind {
                NiceKind::Leaf => n.children.is_empty() && n.bag.is_empty(),
                NiceKind::Introduce(v) => {
                    n.children.len() == 1
                        && difference(&n.bag, child_bag(0)) == [v]
                        && difference(child_bag(0), &n.bag).is_empty()
                }
                NiceKind::Forget(v) => {
                    n.children.len() == 1
                        && difference(child_bag(0), &n.bag) == [v]
                        && difference(&n.bag, child_bag(0)).is_empty()
                }
                NiceKind::Join => {
                    n.children.len() == 2 && *child_bag(0) == n.bag && *child_bag(1) == n.bag
                }
            };
            if !ok {
                return Err(invalid(format!("node {i} ({}) violates its kind", n.kind)));
            }
        }
        Ok(())
    }

    /// Structural checks plus the three decomposition conditions for `h`,
    /// plus every vertex being forgotten exactly once.
    pub fn validate(&self, h: &StaticGraph) -> Result<()> {
        self.check_structure()?;
        self.to_plain().validate(h).into_result()?;
        let mut forgets = vec![0usize; h.n() as usize + 1];
        for n in &self.nodes {
            if let NiceKind::Forget(v) = n.kind {
                forgets[v as usize] += 1;
            }
        }
        match h.vertices().find(|&v| forgets[v as usize] != 1) {
            Some(v) => Err(invalid(format!("vertex {v} forgotten {} times", forgets[v as usize]))),
            None => Ok(()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "b {i} {} {}", n.kind.name(), join_list(n.bag.iter().copied()));
        }
        for (p, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                let _ = writeln!(out, "t {p} {c}");
            }
        }
        out
    }

    pub(super) fn from_parts(parts: Vec<(String, Vec<Vertex>)>, links: &[(usize, usize)]) -> Result<Self> {
        let k = parts.len();
        let mut children = vec![Vec::new(); k];
        let mut has_parent = vec![false; k];
        for &(p, c) in links {
            children[p].push(c);
            has_parent[c] = true;
        }
        let roots: Vec<usize> = (0..k).filter(|&i| !has_parent[i]).collect();
        if roots.len() != 1 {
            return Err(invalid(format!("expected one root, found {}", roots.len())));
        }
        let mut bags: Vec<Vec<Vertex>> = parts.iter().map(|(_, b)| b.clone()).collect();
        for b in &mut bags {
            b.sort_unstable();
        }
        let mut nodes = Vec::with_capacity(k);
        for (i, (kind, _)) in parts.iter().enumerate() {
            let one_diff = |a: &[Vertex], b: &[Vertex]| -> Result<Vertex> {
                match difference(a, b)[..] {
                    [v] => Ok(v),
                    _ => Err(invalid(format!("node {i}: bag differs from its child by more than one vertex"))),
                }
            };
            let single_child = || -> Result<usize> {
                match children[i][..] {
                    [c] => Ok(c),
                    _ => Err(invalid(format!("node {i} ({kind}) needs exactly one child"))),
                }
            };
            let kind = match kind.as_str() {
                "leaf" => NiceKind::Leaf,
                "join" => NiceKind::Join,
                "introduce" => NiceKind::Introduce(one_diff(&bags[i], &bags[single_child()?])?),
                "forget" => NiceKind::Forget(one_diff(&bags[single_child()?], &bags[i])?),
                other => return Err(invalid(format!("node {i}: unknown kind '{other}'"))),
            };
            nodes.push(NiceNode { kind, bag: bags[i].clone(), children: children[i].clone() });
        }
        let nice = NiceTreeDecomposition { nodes, root: roots[0] };
        nice.check_structure()?;
        Ok(nice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bag_chain() {
        let d = TreeDecomposition::new(vec![vec![1, 2]], vec![]);
        let nice = d.to_nice().unwrap();
        let kinds: Vec<NiceKind> = nice.post_order().iter().map(|&i| nice.nodes()[i].kind).collect();
        assert_eq!(
            kinds,
            vec![
                NiceKind::Leaf,
                NiceKind::Introduce(1),
                NiceKind::Introduce(2),
                NiceKind::Forget(1),
                NiceKind::Forget(2)
            ]
        );
        let k2 = StaticGraph::new(2, [(1, 2)]).unwrap();
        nice.validate(&k2).unwrap();
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn structure_errors_are_caught() {
        let d = TreeDecomposition::new(vec![vec![1, 2]], vec![]);
        let mut nice = d.to_nice().unwrap();
        nice.nodes[1].kind = NiceKind::Introduce(2);
        assert!(nice.check_structure().is_err());
        let text = "b 0 leaf -\nb 1 introduce 1,2\nt 1 0\n";
        assert!(super::super::DecompositionFile::parse(text).is_err());
    }

    #[test]
    fn unforgotten_vertex_fails_validation() {
        let k2 = StaticGraph::new(3, [(1, 2)]).unwrap();
        let d = TreeDecomposition::new(vec![vec![1, 2]], vec![]);
        let nice = d.to_nice().unwrap();
        assert!(nice.validate(&k2).is_err());
    }
}
