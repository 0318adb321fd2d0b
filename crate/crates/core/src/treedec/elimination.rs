use std::collections::BTreeSet;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{StaticGraph, Vertex};

/// Largest vertex count accepted by the exact ordering search.
pub const EXACT_LIMIT: u32 = 12;

fn neighbour_sets(h: &StaticGraph) -> Vec<BTreeSet<Vertex>> {
    let mut adj = vec![BTreeSet::new(); h.n() as usize + 1];
    for e in h.edges() {
        adj[e.u() as usize].insert(e.v());
        adj[e.v() as usize].insert(e.u());
    }
    adj
}

fn fill_in(adj: &[BTreeSet<Vertex>], v: Vertex) -> usize {
    let nb: Vec<Vertex> = adj[v as usize].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if !adj[a as usize].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

fn eliminate(adj: &mut [BTreeSet<Vertex>], v: Vertex) {
    let nb: Vec<Vertex> = std::mem::take(&mut adj[v as usize]).into_iter().collect();
    for &a in &nb {
        adj[a as usize].remove(&v);
        for &b in &nb {
            if a != b {
                adj[a as usize].insert(b);
            }
        }
    }
}

/// Greedy min-fill ordering; ties go to lower degree, then lower id.
pub fn min_fill_order(h: &StaticGraph) -> Vec<Vertex> {
    let mut adj = neighbour_sets(h);
    let mut alive: BTreeSet<Vertex> = h.vertices().collect();
    let mut order = Vec::with_capacity(alive.len());
    while let Some(v) = alive
        .iter()
        .copied()
        .min_by_key(|&v| (fill_in(&adj, v), adj[v as usize].len(), v))
    {
        eliminate(&mut adj, v);
        alive.remove(&v);
        order.push(v);
    }
    order
}

/// Optimal elimination ordering by dynamic programming over vertex subsets:
/// `tw(S) = min_{v∈S} max(tw(S∖v), |Q(S∖v, v)|)` where `Q(S, v)` is the set of
/// vertices outside `S ∪ {v}` reachable from `v` through `S`.
pub fn exact_elimination_order(h: &StaticGraph) -> Result<Vec<Vertex>> {
    let n = h.n();
    if n > EXACT_LIMIT {
        return Err(Error::ExactTooLarge { n: n as usize, limit: EXACT_LIMIT as usize });
    }
    let n = n as usize;
    let mut nbr = vec![0u32; n];
    for e in h.edges() {
        let (a, b) = (e.u() as usize - 1, e.v() as usize - 1);
        nbr[a] |= 1 << b;
        nbr[b] |= 1 << a;
    }
    let q = |s: u32, v: usize| -> u32 {
        let mut reached = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut outside = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = nbr[x] & !reached;
            reached |= fresh;
            outside |= fresh & !s;
            frontier |= fresh & s;
        }
        outside.count_ones()
    };
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut tw = vec![u32::MAX; full as usize + 1];
    let mut last = vec![0u8; full as usize + 1];
    tw[0] = 0;
    for s in 1..=full {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let cand = tw[rest as usize].max(q(rest, v));
            if cand < tw[s as usize] {
                tw[s as usize] = cand;
                last[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize];
        order.push(v as Vertex + 1);
        s &= !(1 << v);
    }
    order.reverse();
    Ok(order)
}

pub(super) fn decomposition_from_order(h: &StaticGraph, order: &[Vertex]) -> Result<TreeDecomposition> {
    let n = h.n() as usize;
    let mut position = vec![usize::MAX; n + 1];
    for (i, &v) in order.iter().enumerate() {
        if v == 0 || v as usize > n || position[v as usize] != usize::MAX {
            return Err(Error::InvalidParameter(format!("elimination order is not a permutation of 1..={n}")));
        }
        position[v as usize] = i;
    }
    if order.len() != n {
        return Err(Error::InvalidParameter(format!("elimination order is not a permutation of 1..={n}")));
    }
    let mut adj = neighbour_sets(h);
    let mut bags = vec![Vec::new()];
    let mut tree = Vec::new();
    for &v in order {
        let later: Vec<Vertex> = adj[v as usize].iter().copied().collect();
        let parent = later
            .iter()
            .min_by_key(|&&u| position[u as usize])
            .map(|&u| position[u as usize] + 1)
            .unwrap_or(0);
        let mut bag = later;
        bag.push(v);
        bags.push(bag);
        tree.push((parent, position[v as usize] + 1));
        eliminate(&mut adj, v);
    }
    Ok(TreeDecomposition::new(bags, tree))
}
