//! Dynamic programs over nice tree decompositions for minimum temporal edge
//! cover and maximum temporal matching.
//!
//! Cover tables map `(S, C)` to the least `|S'|` over edge sets `S'` of the
//! subtree graph with `S' ∩ E(X) = S` that cover every coverable temporal
//! vertex of forgotten vertices and exactly `C` inside the bag.
//! Matching tables map `(N, C)` to the largest temporal matching `M` of the
//! subtree graph with `M ∩ E(X) = N` and `V^T(M) ∩ V^T(X) = C`.
//! Infeasible keys are simply absent.

mod context;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

pub use context::BagContext;
use context::{bit_string, bits, remap};

use crate::error::{Error, Result};
use crate::graph::TemporalGraph;
use crate::solution::{SolutionKind, SolutionSet};
use crate::treedec::{NiceKind, NiceNode, NiceTreeDecomposition};

pub type Key = (u64, u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    Leaf,
    /// `added` is the mask of new bag edges at the introduced vertex.
    Introduce { child: Key, added: u64 },
    Forget { child: Key },
    Join { left: Key, right: Key },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Entry {
    pub value: u32,
    pub choice: Choice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    context: BagContext,
    entries: BTreeMap<Key, Entry>,
}

impl DpTable {
    pub fn context(&self) -> &BagContext {
        &self.context
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `None` means infeasible.
    pub fn value(&self, key: Key) -> Option<u32> {
        self.entries.get(&key).map(|e| e.value)
    }

    pub fn entries(&self) -> impl Iterator<Item = (Key, &Entry)> {
        self.entries.iter().map(|(&k, e)| (k, e))
    }

    fn offer(&mut self, kind: SolutionKind, key: Key, value: u32, choice: Choice) {
        use std::collections::btree_map::Entry as Slot;
        match self.entries.entry(key) {
            Slot::Vacant(slot) => {
                slot.insert(Entry { value, choice });
            }
            Slot::Occupied(mut slot) => {
                let old = slot.get().value;
                let better = match kind {
                    SolutionKind::Cover => value < old,
                    SolutionKind::Matching => value > old,
                };
                if better {
                    slot.insert(Entry { value, choice });
                }
            }
        }
    }
}

/// Subsets of `mask` in ascending numeric order, starting with the empty set.
fn submasks(mask: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut s = 0u64;
    loop {
        out.push(s);
        if s == mask {
            break;
        }
        s = (s.wrapping_sub(mask)) & mask;
    }
    out
}

/// Computes one node's table from its children's tables.
pub fn dp_transition(
    g: &TemporalGraph,
    kind: SolutionKind,
    node: &NiceNode,
    children: &[&DpTable],
) -> Result<DpTable> {
    let context = BagContext::new(g, &node.bag)?;
    let mut table = DpTable { context, entries: BTreeMap::new() };
    let arity = |want: usize| {
        if children.len() == want {
            Ok(())
        } else {
            Err(Error::InvalidDecomposition(format!(
                "{} node given {} child tables",
                node.kind,
                children.len()
            )))
        }
    };
    match node.kind {
        NiceKind::Leaf => {
            arity(0)?;
            table.offer(kind, (0, 0), 0, Choice::Leaf);
        }
        NiceKind::Introduce(v) => {
            arity(1)?;
            let child = children[0];
            let ctx = &table.context;
            let emap = child.context.edge_map(ctx);
            let tmap = child.context.tv_map(ctx);
            let new_edges = ctx
                .edges
                .iter()
                .enumerate()
                .filter(|&(_, &id)| g.edges()[id].contains(v))
                .fold(0u64, |m, (i, _)| m | 1 << i);
            let options: Vec<(u64, u64, u32)> = submasks(new_edges)
                .into_iter()
                .filter_map(|f| {
                    let mut seen = 0u64;
                    for i in bits(f) {
                        let tv = ctx.edge_tv[i];
                        if kind == SolutionKind::Matching && seen & tv != 0 {
                            return None;
                        }
                        seen |= tv;
                    }
                    Some((f, seen, f.count_ones()))
                })
                .collect();
            let mut out = Vec::new();
            for (&(sc, cc), e) in &child.entries {
                let s = remap(sc, &emap);
                let c = remap(cc, &tmap);
                for &(f, vt, size) in &options {
                    if kind == SolutionKind::Matching && c & vt != 0 {
                        continue;
                    }
                    out.push(((s | f, c | vt), e.value + size, Choice::Introduce { child: (sc, cc), added: f }));
                }
            }
            for (key, value, choice) in out {
                table.offer(kind, key, value, choice);
            }
        }
        NiceKind::Forget(v) => {
            arity(1)?;
            let child = children[0];
            let emap = child.context.edge_map(&table.context);
            let tmap = child.context.tv_map(&table.context);
            let needed = child.context.vertex_mask(v);
            for (&(sc, cc), e) in &child.entries {
                if kind == SolutionKind::Cover && cc & needed != needed {
                    continue;
                }
                let key = (remap(sc, &emap), remap(cc, &tmap));
                table.offer(kind, key, e.value, Choice::Forget { child: (sc, cc) });
            }
        }
        NiceKind::Join => {
            arity(2)?;
            let (left, right) = (children[0], children[1]);
            if left.context != table.context || right.context != table.context {
                return Err(Error::InvalidDecomposition("join children have different bags".into()));
            }
            let mut by_s: BTreeMap<u64, Vec<(u64, u32)>> = BTreeMap::new();
            for (&(s, c), e) in &right.entries {
                by_s.entry(s).or_default().push((c, e.value));
            }
            let mut out = Vec::new();
            for (&(s, c1), e1) in &left.entries {
                let Some(rs) = by_s.get(&s) else { continue };
                let shared = table.context.covered_by(s);
                for &(c2, v2) in rs {
                    if kind == SolutionKind::Matching && c1 & c2 != shared {
                        continue;
                    }
                    let value = e1.value + v2 - s.count_ones();
                    out.push(((s, c1 | c2), value, Choice::Join { left: (s, c1), right: (s, c2) }));
                }
            }
            for (key, value, choice) in out {
                table.offer(kind, key, value, choice);
            }
        }
    }
    Ok(table)
}

/// Per-node size record for the table-size bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableStat {
    pub node: usize,
    pub entries: usize,
    pub bag_edges: usize,
    pub bag_temporal: usize,
}

impl TableStat {
    /// `2^{|E(X)|} · 2^{|V^T(X)|}`, saturating.
    pub fn bound(&self) -> u128 {
        let exp = (self.bag_edges + self.bag_temporal) as u32;
        1u128.checked_shl(exp).unwrap_or(u128::MAX)
    }
}

/// All tables of one DP run, indexed by decomposition node.
#[derive(Debug, Clone)]
pub struct DpRun {
    kind: SolutionKind,
    tables: Vec<DpTable>,
    root: usize,
}

impl DpRun {
    /// Fills every table bottom-up. `d` must be a valid nice decomposition
    /// of the underlying graph of `g`.
    pub fn new(g: &TemporalGraph, d: &NiceTreeDecomposition, kind: SolutionKind) -> Result<Self> {
        d.validate(g.base())?;
        let mut tables: Vec<Option<DpTable>> = vec![None; d.nodes().len()];
        for x in d.post_order() {
            let node = &d.nodes()[x];
            let kids: Vec<&DpTable> = node
                .children
                .iter()
                .map(|&c| tables[c].as_ref().expect("post-order visits children first"))
                .collect();
            let table = dp_transition(g, kind, node, &kids)?;
            tables[x] = Some(table);
        }
        Ok(DpRun {
            kind,
            tables: tables.into_iter().map(|t| t.expect("every node visited")).collect(),
            root: d.root(),
        })
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn table(&self, node: usize) -> &DpTable {
        &self.tables[node]
    }

    /// `T_r(∅, ∅)`.
    pub fn value(&self) -> Option<u32> {
        self.tables[self.root].value((0, 0))
    }

    /// Replays the stored choices from the root.
    pub fn extract(&self, g: &TemporalGraph, d: &NiceTreeDecomposition) -> Result<SolutionSet> {
        if self.tables[self.root].value((0, 0)).is_none() {
            return Err(Error::Infeasible);
        }
        let mut ids = BTreeSet::new();
        let mut stack = vec![(self.root, (0u64, 0u64))];
        while let Some((x, key)) = stack.pop() {
            let table = &self.tables[x];
            let entry = table.entries.get(&key).ok_or(Error::Infeasible)?;
            let kids = &d.nodes()[x].children;
            match entry.choice {
                Choice::Leaf => {}
                Choice::Introduce { child, added } => {
                    ids.extend(table.context.edge_ids_of(added));
                    stack.push((kids[0], child));
                }
                Choice::Forget { child } => stack.push((kids[0], child)),
                Choice::Join { left, right } => {
                    stack.push((kids[0], left));
                    stack.push((kids[1], right));
                }
            }
        }
        Ok(SolutionSet::from_ids(self.kind, g, ids))
    }

    pub fn stats(&self) -> Vec<TableStat> {
        self.tables
            .iter()
            .enumerate()
            .map(|(node, t)| TableStat {
                node,
                entries: t.len(),
                bag_edges: t.context.edges.len(),
                bag_temporal: t.context.temporal.len(),
            })
            .collect()
    }

    /// One line per entry: `<node> <S-bits> <C-bits> <value>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (node, t) in self.tables.iter().enumerate() {
            for (&(s, c), e) in &t.entries {
                let _ = writeln!(
                    out,
                    "{node} {} {} {}",
                    bit_string(s, t.context.edges.len()),
                    bit_string(c, t.context.temporal.len()),
                    e.value
                );
            }
        }
        out
    }
}

fn solve(g: &TemporalGraph, d: &NiceTreeDecomposition, kind: SolutionKind) -> Result<(usize, SolutionSet)> {
    let run = DpRun::new(g, d, kind)?;
    let value = run.value().ok_or(Error::Infeasible)? as usize;
    Ok((value, run.extract(g, d)?))
}

pub fn fpt_min_edge_cover(g: &TemporalGraph, d: &NiceTreeDecomposition) -> Result<(usize, SolutionSet)> {
    solve(g, d, SolutionKind::Cover)
}

pub fn fpt_max_matching(g: &TemporalGraph, d: &NiceTreeDecomposition) -> Result<(usize, SolutionSet)> {
    solve(g, d, SolutionKind::Matching)
}
