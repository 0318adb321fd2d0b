//! Static-graph subroutines: maximum matching, minimum edge cover through the
//! matching, and greedy set cover.

mod blossom;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::{content_lines, join_list, parse_list, parse_num};
use crate::graph::{Edge, StaticGraph};

/// Pairwise vertex-disjoint edges of a static graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticMatching {
    pub edges: Vec<Edge>,
}

/// Edges touching every vertex of the host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticEdgeCover {
    pub edges: Vec<Edge>,
}

impl StaticMatching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl StaticEdgeCover {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn max_matching_static(h: &StaticGraph) -> StaticMatching {
    let n = h.n() as usize;
    let adj: Vec<Vec<usize>> = (1..=h.n())
        .map(|v| h.incident(v).iter().map(|&(w, _)| w as usize - 1).collect())
        .collect();
    let mate = blossom::Blossom::new(&adj).solve();
    let mut edges = Vec::new();
    for (v, m) in mate.iter().enumerate().take(n) {
        if let Some(w) = *m {
            if v < w {
                edges.push(Edge::new(v as u32 + 1, w as u32 + 1));
            }
        }
    }
    StaticMatching { edges }
}

/// Maximum matching plus, for every unsaturated vertex in ascending order, its
/// lexicographically smallest incident edge. Size is `n - α'(H)`.
pub fn min_edge_cover_static(h: &StaticGraph) -> Result<StaticEdgeCover> {
    if let Some(v) = h.vertices().find(|&v| h.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let matching = max_matching_static(h);
    let mut saturated = vec![false; h.n() as usize + 1];
    for e in &matching.edges {
        saturated[e.u() as usize] = true;
        saturated[e.v() as usize] = true;
    }
    let mut edges: BTreeSet<Edge> = matching.edges.into_iter().collect();
    for v in h.vertices().filter(|&v| !saturated[v as usize]) {
        let e = h
            .incident(v)
            .iter()
            .map(|&(w, _)| Edge::new(v, w))
            .min()
            .expect("degree checked above");
        edges.insert(e);
    }
    Ok(StaticEdgeCover { edges: edges.into_iter().collect() })
}

/// A universe of integers and an ordered list of subsets of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    universe: BTreeSet<u32>,
    sets: Vec<BTreeSet<u32>>,
}

impl SetSystem {
    pub fn new(universe: BTreeSet<u32>, sets: Vec<BTreeSet<u32>>) -> Result<Self> {
        for (i, s) in sets.iter().enumerate() {
            if let Some(x) = s.iter().find(|x| !universe.contains(x)) {
                return Err(Error::InvalidSetSystem(format!(
                    "set {} contains {x}, which is outside the universe",
                    i + 1
                )));
            }
        }
        Ok(SetSystem { universe, sets })
    }

    /// Universe `{1, ..., n}`.
    pub fn over_range(n: u32, sets: Vec<BTreeSet<u32>>) -> Result<Self> {
        Self::new((1..=n).collect(), sets)
    }

    pub fn universe(&self) -> &BTreeSet<u32> {
        &self.universe
    }

    pub fn sets(&self) -> &[BTreeSet<u32>] {
        &self.sets
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// First universe element contained in no set, if any.
    pub fn uncovered_element(&self) -> Option<u32> {
        self.universe
            .iter()
            .copied()
            .find(|x| !self.sets.iter().any(|s| s.contains(x)))
    }

    /// Universe must be `{1, ..., n}` for this to round-trip.
    pub fn to_text(&self) -> String {
        let mut out = format!("p setsys {} {}\n", self.universe.len(), self.sets.len());
        for s in &self.sets {
            let _ = writeln!(out, "s {}", join_list(s.iter().copied()));
        }
        out
    }

    /// Parses `p setsys <n> <m>` followed by `m` lines `s <e1,e2,...>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing 'p setsys' header"))?;
        if header.len() != 4 || header[0] != "p" || header[1] != "setsys" {
            return Err(Error::parse(hline, "expected header 'p setsys <n> <m>'"));
        }
        let n: u32 = parse_num(hline, header[2], "universe size")?;
        let m: usize = parse_num(hline, header[3], "set count")?;
        let mut sets = Vec::with_capacity(m);
        let mut last = hline;
        for (line, fields) in lines {
            last = line;
            if fields.len() != 2 || fields[0] != "s" {
                return Err(Error::parse(line, "expected set line 's <e1,e2,...>'"));
            }
            let items = parse_list(line, fields[1], "element")?;
            if let Some(x) = items.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::parse(line, format!("element {x} out of range 1..={n}")));
            }
            sets.push(items.into_iter().collect());
        }
        if sets.len() != m {
            return Err(Error::parse(
                last,
                format!("header announces {m} sets but {} were given", sets.len()),
            ));
        }
        Self::over_range(n, sets)
    }
}

/// Greedy set cover: repeatedly takes the set covering the most uncovered
/// elements, lowest index on ties. Returns 0-based set indices in pick order.
pub fn greedy_set_cover(sys: &SetSystem) -> Result<Vec<usize>> {
    if let Some(x) = sys.uncovered_element() {
        return Err(Error::NotCoverable(x));
    }
    let mut uncovered = sys.universe.clone();
    let mut picked = Vec::new();
    while !uncovered.is_empty() {
        let mut best = (0usize, 0usize);
        for (i, s) in sys.sets.iter().enumerate() {
            let gain = s.intersection(&uncovered).count();
            if gain > best.1 {
                best = (i, gain);
            }
        }
        debug_assert!(best.1 > 0);
        for x in &sys.sets[best.0] {
            uncovered.remove(x);
        }
        picked.push(best.0);
    }
    Ok(picked)
}

/// `H(k) = 1 + 1/2 + ... + 1/k` as an exact rational.
pub fn harmonic(k: u32) -> num::BigRational {
    use num::{BigInt, BigRational, One};
    let mut h = BigRational::from_integer(BigInt::from(0));
    for i in 1..=k {
        h += BigRational::new(BigInt::one(), BigInt::from(i));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(xs: &[u32]) -> BTreeSet<u32> {
        xs.iter().copied().collect()
    }

    /// Largest pairwise vertex-disjoint edge subset, by exhaustive search.
    fn brute_matching_size(h: &StaticGraph) -> usize {
        let m = h.m();
        assert!(m <= 16);
        let edges = h.edges();
        (0u32..1 << m)
            .filter(|mask| {
                let mut used = 0u64;
                (0..m).filter(|i| mask >> i & 1 == 1).all(|i| {
                    let bits = 1u64 << edges[i].u() | 1u64 << edges[i].v();
                    let ok = used & bits == 0;
                    used |= bits;
                    ok
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn is_matching(edges: &[Edge]) -> bool {
        let mut seen = BTreeSet::new();
        edges.iter().all(|e| seen.insert(e.u()) && seen.insert(e.v()))
    }

    #[test]
    fn small_matchings() {
        let p4 = StaticGraph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(max_matching_static(&p4).len(), 2);
        let tri = StaticGraph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(max_matching_static(&tri).len(), 1);
        // Petersen graph has a perfect matching
        let petersen = StaticGraph::new(
            10,
            [
                (1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
                (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
                (6, 8), (8, 10), (10, 7), (7, 9), (9, 6),
            ],
        )
        .unwrap();
        assert_eq!(max_matching_static(&petersen).len(), 5);
        assert!(max_matching_static(&StaticGraph::new(3, []).unwrap()).is_empty());
    }

    #[test]
    fn small_edge_covers() {
        let k2 = StaticGraph::new(2, [(1, 2)]).unwrap();
        assert_eq!(min_edge_cover_static(&k2).unwrap().len(), 1);
        let p4 = StaticGraph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(min_edge_cover_static(&p4).unwrap().len(), 2);
        let star = StaticGraph::new(4, [(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(min_edge_cover_static(&star).unwrap().len(), 3);
        let with_isolated = StaticGraph::new(3, [(1, 2)]).unwrap();
        assert_eq!(min_edge_cover_static(&with_isolated), Err(Error::IsolatedVertex(3)));
    }

    #[test]
    fn greedy_hand_simulation() {
        let sys = SetSystem::over_range(3, vec![set(&[1, 2]), set(&[2, 3]), set(&[3])]).unwrap();
        assert_eq!(greedy_set_cover(&sys).unwrap(), vec![0, 1]);
        let single = SetSystem::over_range(1, vec![set(&[1])]).unwrap();
        assert_eq!(greedy_set_cover(&single).unwrap(), vec![0]);
        let bad = SetSystem::over_range(2, vec![set(&[1])]).unwrap();
        assert_eq!(greedy_set_cover(&bad), Err(Error::NotCoverable(2)));
    }

    #[test]
    fn setsys_text() {
        let sys = SetSystem::parse("p setsys 3 3\ns 1,2\ns 2,3\ns -\n").unwrap();
        assert_eq!(sys.sets()[2], set(&[]));
        assert_eq!(SetSystem::parse(&sys.to_text()).unwrap(), sys);
        assert!(SetSystem::parse("p setsys 2 1\ns 3").is_err());
        assert!(SetSystem::parse("p setsys 2 2\ns 1").is_err());
    }

    #[test]
    fn harmonic_numbers() {
        use num::{BigInt, BigRational};
        assert_eq!(harmonic(1), BigRational::from_integer(BigInt::from(1)));
        assert_eq!(harmonic(3), BigRational::new(BigInt::from(11), BigInt::from(6)));
    }

    fn arb_static_graph(max_n: u32, max_m: usize) -> impl Strategy<Value = StaticGraph> {
        (1..=max_n).prop_flat_map(move |n| {
            let pairs: Vec<(u32, u32)> =
                (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            let k = pairs.len();
            proptest::sample::subsequence(pairs, 0..=k.min(max_m))
                .prop_map(move |es| StaticGraph::new(n, es).unwrap())
        })
    }

    fn brute_set_cover_size(sys: &SetSystem) -> usize {
        let m = sys.m();
        (0u32..1 << m)
            .filter(|mask| {
                let mut u = BTreeSet::new();
                for i in (0..m).filter(|i| mask >> i & 1 == 1) {
                    u.extend(sys.sets()[i].iter().copied());
                }
                &u == sys.universe()
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    proptest! {
        #[test]
        fn blossom_matches_brute_force(h in arb_static_graph(9, 14)) {
            let m = max_matching_static(&h);
            prop_assert!(is_matching(&m.edges));
            prop_assert!(m.edges.iter().all(|&e| h.has_edge(e)));
            prop_assert_eq!(m.len(), brute_matching_size(&h));
        }

        #[test]
        fn gallai_identity(h in arb_static_graph(9, 14)) {
            prop_assume!(h.vertices().all(|v| h.degree(v) > 0));
            let cover = min_edge_cover_static(&h).unwrap();
            let mut touched = BTreeSet::new();
            for e in &cover.edges {
                prop_assert!(h.has_edge(*e));
                touched.insert(e.u());
                touched.insert(e.v());
            }
            prop_assert_eq!(touched.len(), h.n() as usize);
            prop_assert_eq!(cover.len() + max_matching_static(&h).len(), h.n() as usize);
        }

        #[test]
        fn greedy_within_harmonic_bound(
            n in 1u32..=10,
            raw in proptest::collection::vec(proptest::collection::btree_set(1u32..=10, 1..5), 1..7),
        ) {
            let mut sets: Vec<BTreeSet<u32>> =
                raw.into_iter().map(|s| s.into_iter().filter(|&x| x <= n).collect()).collect();
            sets.push((1..=n).filter(|x| x % 2 == 1).collect());
            sets.push((1..=n).filter(|x| x % 2 == 0).collect());
            let sys = SetSystem::over_range(n, sets).unwrap();
            let picked = greedy_set_cover(&sys).unwrap();
            prop_assert_eq!(greedy_set_cover(&sys).unwrap(), picked.clone());
            let mut u = BTreeSet::new();
            for &i in &picked { u.extend(sys.sets()[i].iter().copied()); }
            prop_assert_eq!(&u, sys.universe());
            let opt = brute_set_cover_size(&sys);
            let bound = harmonic(n) * num::BigRational::from_integer(opt.into());
            prop_assert!(num::BigRational::from_integer(picked.len().into()) <= bound);
        }
    }
}
