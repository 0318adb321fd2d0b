//! Exhaustive and branch-and-bound solvers used as ground truth.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::TemporalGraph;
use crate::solution::{SolutionKind, SolutionSet};
use crate::static_alg::SetSystem;

pub const DEFAULT_MAX_EDGES: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Exhaustive search is refused above this many edges.
    pub max_edges: usize,
    /// Wall-clock bound for branch-and-bound beyond the edge cap.
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_edges: DEFAULT_MAX_EDGES, time_limit: None }
    }
}

impl SearchBudget {
    fn check_exhaustive(&self, g: &TemporalGraph) -> Result<()> {
        if g.m() > self.max_edges {
            Err(Error::BudgetExceeded(format!(
                "{} edges exceed the exhaustive cap of {}",
                g.m(),
                self.max_edges
            )))
        } else {
            Ok(())
        }
    }
}

struct Clock {
    deadline: Option<Instant>,
    ticks: u32,
}

impl Clock {
    fn new(limit: Option<Duration>) -> Self {
        Clock { deadline: limit.map(|d| Instant::now() + d), ticks: 0 }
    }

    fn expired(&mut self) -> bool {
        self.ticks = self.ticks.wrapping_add(1);
        self.ticks.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Coverage data: each edge as a bit set over the coverable universe, plus,
/// per universe element, the ids of edges covering it.
struct CoverData {
    words: usize,
    universe: usize,
    edge_masks: Vec<Vec<u64>>,
    covering: Vec<Vec<usize>>,
}

impl CoverData {
    fn new(g: &TemporalGraph) -> Self {
        let universe: Vec<_> = g.coverable_universe().into_iter().collect();
        let words = universe.len().div_ceil(64).max(1);
        let mut edge_masks = vec![vec![0u64; words]; g.m()];
        let mut covering = vec![Vec::new(); universe.len()];
        for (id, mask) in edge_masks.iter_mut().enumerate() {
            for tv in g.temporal_endpoints(id) {
                let i = universe.binary_search(&tv).expect("endpoints are coverable");
                mask[i / 64] |= 1 << (i % 64);
                covering[i].push(id);
            }
        }
        for c in &mut covering {
            c.sort_unstable();
            c.dedup();
        }
        CoverData { words, universe: universe.len(), edge_masks, covering }
    }

    fn count(&self, covered: &[u64]) -> usize {
        covered.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first_uncovered(&self, covered: &[u64]) -> Option<usize> {
        covered.iter().enumerate().find_map(|(w, &bits)| {
            let free = !bits;
            let i = w * 64 + free.trailing_zeros() as usize;
            (free != 0 && i < self.universe).then_some(i)
        })
    }

    fn is_covered(&self, covered: &[u64], i: usize) -> bool {
        covered[i / 64] >> (i % 64) & 1 == 1
    }
}

/// Minimum temporal edge cover by enumerating edge subsets in order of
/// size, lexicographically within a size. Returns the lexicographically
/// least optimum.
pub fn brute_min_edge_cover(g: &TemporalGraph, budget: SearchBudget) -> Result<(usize, SolutionSet)> {
    budget.check_exhaustive(g)?;
    let data = CoverData::new(g);
    let max_gain = data.edge_masks.iter().map(|m| data.count(m)).max().unwrap_or(0);
    let last_option: Vec<usize> = data.covering.iter().map(|c| *c.last().expect("coverable")).collect();

    struct Search<'a> {
        data: &'a CoverData,
        max_gain: usize,
        last_option: &'a [usize],
        m: usize,
        picked: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize, slots: usize, covered: &mut Vec<u64>) -> bool {
            let have = self.data.count(covered);
            if have == self.data.universe {
                return true;
            }
            if slots == 0 || (self.data.universe - have) > slots * self.max_gain {
                return false;
            }
            for i in 0..self.data.universe {
                if !self.data.is_covered(covered, i) && self.last_option[i] < start {
                    return false;
                }
            }
            for id in start..self.m {
                let saved = covered.clone();
                for (w, bits) in covered.iter_mut().zip(&self.data.edge_masks[id]) {
                    *w |= bits;
                }
                self.picked.push(id);
                if self.run(id + 1, slots - 1, covered) {
                    return true;
                }
                self.picked.pop();
                *covered = saved;
            }
            false
        }
    }

    let mut search = Search { data: &data, max_gain, last_option: &last_option, m: g.m(), picked: Vec::new() };
    for k in 0..=g.m() {
        let mut covered = vec![0u64; data.words];
        if search.run(0, k, &mut covered) {
            let picked = std::mem::take(&mut search.picked);
            return Ok((k, SolutionSet::from_ids(SolutionKind::Cover, g, picked)));
        }
    }
    unreachable!("the full edge set covers the universe")
}

fn conflict_masks(g: &TemporalGraph) -> Vec<u64> {
    assert!(g.m() <= 64, "conflict masks hold at most 64 edges");
    (0..g.m())
        .map(|a| (0..g.m()).filter(|&b| g.edges_conflict(a, b)).fold(0, |m, b| m | 1 << b))
        .collect()
}

/// Maximum temporal matching by include-first search over edges with
/// conflict pruning. Returns the lexicographically least optimum.
pub fn brute_max_matching(g: &TemporalGraph, budget: SearchBudget) -> Result<(usize, SolutionSet)> {
    budget.check_exhaustive(g)?;
    let m = g.m();
    if m > 64 {
        return Err(Error::BudgetExceeded(format!("{m} edges exceed the 64-edge search limit")));
    }
    let conflicts = conflict_masks(g);

    fn go(i: usize, m: usize, chosen: u64, blocked: u64, conflicts: &[u64], best: &mut (u32, u64)) {
        if i == m {
            if chosen.count_ones() > best.0 {
                *best = (chosen.count_ones(), chosen);
            }
            return;
        }
        let remaining = (i..m).filter(|&j| blocked >> j & 1 == 0).count() as u32;
        if chosen.count_ones() + remaining <= best.0 {
            return;
        }
        if blocked >> i & 1 == 0 {
            go(i + 1, m, chosen | 1 << i, blocked | conflicts[i], conflicts, best);
        }
        go(i + 1, m, chosen, blocked, conflicts, best);
    }

    let mut best = (0u32, 0u64);
    go(0, m, 0, 0, &conflicts, &mut best);
    let ids = (0..m).filter(|&j| best.1 >> j & 1 == 1);
    Ok((best.0 as usize, SolutionSet::from_ids(SolutionKind::Matching, g, ids)))
}

/// Size of a maximum independent set of the conflict graph on `E(G)`.
/// Independent of [`brute_max_matching`]; used to cross-check it.
pub fn conflict_graph_mis(g: &TemporalGraph) -> usize {
    fn mis(set: u64, adj: &[u64]) -> usize {
        if set == 0 {
            return 0;
        }
        let mut v = set.trailing_zeros() as usize;
        let mut best_deg = 0;
        let mut bits = set;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let d = (adj[x] & set).count_ones();
            if d == 0 {
                return 1 + mis(set & !(1 << x), adj);
            }
            if d > best_deg {
                best_deg = d;
                v = x;
            }
        }
        let without = mis(set & !(1 << v), adj);
        let with = 1 + mis(set & !(1 << v) & !adj[v], adj);
        without.max(with)
    }
    let adj = conflict_masks(g);
    let all = if g.m() == 64 { u64::MAX } else { (1u64 << g.m()) - 1 };
    mis(all, &adj)
}

/// Branch and bound for covers: branch on the uncovered temporal vertex with
/// fewest covering edges, bound by `⌈uncovered / max gain⌉`. Fails with
/// `BudgetExceeded` once the time limit passes.
pub fn bnb_min_edge_cover(g: &TemporalGraph, budget: SearchBudget) -> Result<(usize, SolutionSet)> {
    let data = CoverData::new(g);
    let max_gain = data.edge_masks.iter().map(|m| data.count(m)).max().unwrap_or(1).max(1);
    let mut clock = Clock::new(budget.time_limit);

    struct State<'a> {
        data: &'a CoverData,
        max_gain: usize,
        best: Vec<usize>,
        picked: Vec<usize>,
        timed_out: bool,
    }

    fn go(st: &mut State, covered: &mut Vec<u64>, clock: &mut Clock) {
        if st.timed_out || clock.expired() {
            st.timed_out = true;
            return;
        }
        let have = st.data.count(covered);
        let missing = st.data.universe - have;
        if missing == 0 {
            if st.picked.len() < st.best.len() {
                st.best = st.picked.clone();
            }
            return;
        }
        if st.picked.len() + missing.div_ceil(st.max_gain) >= st.best.len() {
            return;
        }
        let target = (0..st.data.universe)
            .filter(|&i| !st.data.is_covered(covered, i))
            .min_by_key(|&i| st.data.covering[i].len())
            .expect("something is missing");
        for &id in &st.data.covering[target] {
            let saved = covered.clone();
            for (w, bits) in covered.iter_mut().zip(&st.data.edge_masks[id]) {
                *w |= bits;
            }
            st.picked.push(id);
            go(st, covered, clock);
            st.picked.pop();
            *covered = saved;
        }
    }

    let first = greedy_seed(&data, g.m());
    let mut st = State { data: &data, max_gain, best: first, picked: Vec::new(), timed_out: false };
    let mut covered = vec![0u64; data.words];
    go(&mut st, &mut covered, &mut clock);
    if st.timed_out {
        return Err(Error::BudgetExceeded("branch and bound hit the time limit".into()));
    }
    let mut best = st.best;
    best.sort_unstable();
    Ok((best.len(), SolutionSet::from_ids(SolutionKind::Cover, g, best)))
}

/// Incumbent for the cover search: repeatedly take the edge with most gain.
fn greedy_seed(data: &CoverData, m: usize) -> Vec<usize> {
    let mut covered = vec![0u64; data.words];
    let mut out = Vec::new();
    while data.first_uncovered(&covered).is_some() {
        let gain = |id: usize| -> usize {
            data.edge_masks[id]
                .iter()
                .zip(&covered)
                .map(|(e, c)| (e & !c).count_ones() as usize)
                .sum()
        };
        let id = (0..m).max_by_key(|&id| (gain(id), std::cmp::Reverse(id))).expect("edges exist");
        for (w, bits) in covered.iter_mut().zip(&data.edge_masks[id]) {
            *w |= bits;
        }
        out.push(id);
    }
    out
}

/// Branch and bound for matchings, bounded by a greedy partition of the
/// remaining candidates into conflict cliques.
pub fn bnb_max_matching(g: &TemporalGraph, budget: SearchBudget) -> Result<(usize, SolutionSet)> {
    let m = g.m();
    let conflict: Vec<Vec<bool>> = (0..m).map(|a| (0..m).map(|b| g.edges_conflict(a, b)).collect()).collect();
    let mut clock = Clock::new(budget.time_limit);

    struct State<'a> {
        conflict: &'a [Vec<bool>],
        best: Vec<usize>,
        picked: Vec<usize>,
        timed_out: bool,
    }

    fn clique_bound(cands: &[usize], conflict: &[Vec<bool>]) -> usize {
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        for &c in cands {
            match cliques.iter_mut().find(|q| q.iter().all(|&x| conflict[x][c])) {
                Some(q) => q.push(c),
                None => cliques.push(vec![c]),
            }
        }
        cliques.len()
    }

    fn go(st: &mut State, cands: Vec<usize>, clock: &mut Clock) {
        if st.timed_out || clock.expired() {
            st.timed_out = true;
            return;
        }
        if st.picked.len() > st.best.len() {
            st.best = st.picked.clone();
        }
        if cands.is_empty() || st.picked.len() + clique_bound(&cands, st.conflict) <= st.best.len() {
            return;
        }
        let e = cands[0];
        let rest: Vec<usize> = cands[1..].iter().copied().filter(|&x| !st.conflict[e][x]).collect();
        st.picked.push(e);
        go(st, rest, clock);
        st.picked.pop();
        go(st, cands[1..].to_vec(), clock);
    }

    let mut st = State { conflict: &conflict, best: Vec::new(), picked: Vec::new(), timed_out: false };
    go(&mut st, (0..m).collect(), &mut clock);
    if st.timed_out {
        return Err(Error::BudgetExceeded("branch and bound hit the time limit".into()));
    }
    Ok((st.best.len(), SolutionSet::from_ids(SolutionKind::Matching, g, st.best)))
}

/// Exhaustive search within the edge cap, branch and bound above it when a
/// time limit is set.
pub fn exact_min_edge_cover(g: &TemporalGraph, budget: SearchBudget) -> Result<(usize, SolutionSet)> {
    if g.m() <= budget.max_edges {
        brute_min_edge_cover(g, budget)
    } else if budget.time_limit.is_some() {
        bnb_min_edge_cover(g, budget)
    } else {
        budget.check_exhaustive(g).map(|_| unreachable!())
    }
}

pub fn exact_max_matching(g: &TemporalGraph, budget: SearchBudget) -> Result<(usize, SolutionSet)> {
    if g.m() <= budget.max_edges {
        brute_max_matching(g, budget)
    } else if budget.time_limit.is_some() {
        bnb_max_matching(g, budget)
    } else {
        budget.check_exhaustive(g).map(|_| unreachable!())
    }
}

/// Smallest subcollection covering the universe (lexicographically least
/// among the smallest), or `None` if the sets do not cover it.
pub fn brute_set_cover(sys: &SetSystem) -> Option<Vec<usize>> {
    if sys.uncovered_element().is_some() {
        return None;
    }
    let m = sys.m();
    for k in 0..=m {
        let mut found = None;
        for_each_combination(m, k, &mut |combo| {
            let covered: std::collections::BTreeSet<u32> =
                combo.iter().flat_map(|&i| sys.sets()[i].iter().copied()).collect();
            if covered.len() == sys.universe().len() {
                found = Some(combo.to_vec());
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Largest subcollection of pairwise disjoint sets.
pub fn brute_set_packing(sys: &SetSystem) -> Vec<usize> {
    let m = sys.m();
    for k in (0..=m).rev() {
        let mut found = None;
        for_each_combination(m, k, &mut |combo| {
            let total: usize = combo.iter().map(|&i| sys.sets()[i].len()).sum();
            let union: std::collections::BTreeSet<u32> =
                combo.iter().flat_map(|&i| sys.sets()[i].iter().copied()).collect();
            if union.len() == total {
                found = Some(combo.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(f) = found {
            return f;
        }
    }
    Vec::new()
}

/// Visits k-subsets of `0..m` in lexicographic order until `f` returns true.
fn for_each_combination(m: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if go(i + 1, m, k, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(0, m, k, &mut Vec::with_capacity(k), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::labels;
    use crate::solution::{verify_edge_cover, verify_matching};
    use std::collections::BTreeSet;

    fn star(ls: &[&[u32]], tau: u32) -> TemporalGraph {
        let n = ls.len() as u32 + 1;
        TemporalGraph::new(n, tau, ls.iter().enumerate().map(|(i, l)| (1, i as u32 + 2, labels(l)))).unwrap()
    }

    #[test]
    fn small_covers() {
        let k2 = star(&[&[1]], 1);
        assert_eq!(brute_min_edge_cover(&k2, SearchBudget::default()).unwrap().0, 1);
        let s = star(&[&[1], &[2]], 2);
        let (size, cover) = brute_min_edge_cover(&s, SearchBudget::default()).unwrap();
        assert_eq!(size, 2);
        assert!(verify_edge_cover(&s, &cover).unwrap().ok);
        assert_eq!(bnb_min_edge_cover(&s, SearchBudget::default()).unwrap().0, 2);
    }

    #[test]
    fn small_matchings() {
        let s = star(&[&[1], &[1], &[2]], 2);
        let (size, m) = brute_max_matching(&s, SearchBudget::default()).unwrap();
        assert_eq!(size, 2);
        assert!(verify_matching(&s, &m).unwrap().ok);
        // Lexicographically least optimum: edges 1-2 and 1-4.
        assert_eq!(
            m.edges().iter().map(|e| (e.u(), e.v())).collect::<Vec<_>>(),
            vec![(1, 2), (1, 4)]
        );
        assert_eq!(conflict_graph_mis(&s), 2);
        assert_eq!(bnb_max_matching(&s, SearchBudget::default()).unwrap().0, 2);
        let disjoint = star(&[&[1], &[2], &[3]], 3);
        assert_eq!(brute_max_matching(&disjoint, SearchBudget::default()).unwrap().0, 3);
    }

    #[test]
    fn budget_is_enforced() {
        let one: &[u32] = &[1];
        let g = star(&[one; 5], 1);
        let tight = SearchBudget { max_edges: 4, time_limit: None };
        assert!(matches!(brute_min_edge_cover(&g, tight), Err(Error::BudgetExceeded(_))));
        assert!(matches!(exact_max_matching(&g, tight), Err(Error::BudgetExceeded(_))));
        let timed = SearchBudget { max_edges: 4, time_limit: Some(Duration::from_secs(5)) };
        assert_eq!(exact_min_edge_cover(&g, timed).unwrap().0, 5);
        assert_eq!(exact_max_matching(&g, timed).unwrap().0, 1);
    }

    #[test]
    fn set_oracles() {
        let sets: Vec<BTreeSet<u32>> = vec![[1, 2].into(), [2, 3].into(), [3].into()];
        let sys = SetSystem::over_range(3, sets).unwrap();
        assert_eq!(brute_set_cover(&sys), Some(vec![0, 1]));
        let sets: Vec<BTreeSet<u32>> = vec![[1, 2].into(), [2, 3].into(), [4].into()];
        let sys = SetSystem::over_range(4, sets).unwrap();
        assert_eq!(brute_set_packing(&sys), vec![0, 2]);
    }
}
