use std::collections::BTreeMap;
use std::fmt;

use super::{GadgetInstance, ReductionKind};
use crate::error::{Error, Result};
use crate::format::{content_lines, parse_num};
use crate::graph::{Edge, Labels, StaticGraph, TemporalGraph, Vertex};
use crate::solution::{SolutionKind, SolutionSet};

/// CNF formula over variables `1..=n`; literals are signed variable ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf22Formula {
    n: u32,
    clauses: Vec<Vec<i32>>,
}

impl Cnf22Formula {
    pub fn new(n: u32, clauses: Vec<Vec<i32>>) -> Self {
        Cnf22Formula { n, clauses }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// DIMACS CNF: `c` comments, `p cnf <n> <m>`, zero-terminated clauses.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (line, fields) in content_lines(text) {
            if fields[0] == "c" || fields[0] == "%" {
                continue;
            }
            if fields[0] == "p" {
                if fields.len() != 4 || fields[1] != "cnf" || header.is_some() {
                    return Err(Error::parse(line, "expected a single 'p cnf <n> <m>' header"));
                }
                let n: u32 = parse_num(line, fields[2], "variable count")?;
                let m: usize = parse_num(line, fields[3], "clause count")?;
                header = Some((line, n, m));
                continue;
            }
            let Some((_, n, _)) = header else {
                return Err(Error::parse(line, "clause before 'p cnf' header"));
            };
            for f in fields {
                let lit: i32 = parse_num(line, f, "literal")?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if lit.unsigned_abs() > n {
                    return Err(Error::parse(line, format!("literal {lit} names a variable above {n}")));
                } else {
                    current.push(lit);
                }
            }
        }
        let (hline, n, m) = header.ok_or_else(|| Error::parse(1, "missing 'p cnf' header"))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != m {
            return Err(Error::parse(hline, format!("header announces {m} clauses but {} were given", clauses.len())));
        }
        Ok(Cnf22Formula { n, clauses })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n, self.clauses.len());
        for c in &self.clauses {
            let lits: Vec<String> = c.iter().map(|l| l.to_string()).collect();
            out.push_str(&lits.join(" "));
            out.push_str(" 0\n");
        }
        out
    }

    /// 1-based index of the first clause `sigma` leaves false.
    pub fn first_unsatisfied(&self, sigma: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|&l| literal_true(l, sigma)))
            .map(|p| p + 1)
    }
}

fn literal_true(lit: i32, sigma: &[bool]) -> bool {
    sigma[lit.unsigned_abs() as usize - 1] == (lit > 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cnf22Violation {
    ClauseArity { clause: usize, len: usize },
    LiteralOutOfRange { clause: usize, literal: i32 },
    Occurrences { var: u32, positive: usize, negative: usize },
}

impl fmt::Display for Cnf22Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cnf22Violation::ClauseArity { clause, len } => {
                write!(f, "clause {clause} has {len} literals instead of 3")
            }
            Cnf22Violation::LiteralOutOfRange { clause, literal } => {
                write!(f, "clause {clause} has out-of-range literal {literal}")
            }
            Cnf22Violation::Occurrences { var, positive, negative } => write!(
                f,
                "variable {var} occurs {positive} times positively and {negative} times negatively, expected 2 and 2"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cnf22Report {
    pub violations: Vec<Cnf22Violation>,
}

impl Cnf22Report {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every clause has three literals; every variable occurs twice positively
/// and twice negatively.
pub fn validate_cnf22(f: &Cnf22Formula) -> Cnf22Report {
    let mut violations = Vec::new();
    let mut counts = vec![(0usize, 0usize); f.n as usize + 1];
    for (p, c) in f.clauses.iter().enumerate() {
        if c.len() != 3 {
            violations.push(Cnf22Violation::ClauseArity { clause: p + 1, len: c.len() });
        }
        for &lit in c {
            let var = lit.unsigned_abs();
            if lit == 0 || var > f.n {
                violations.push(Cnf22Violation::LiteralOutOfRange { clause: p + 1, literal: lit });
            } else if lit > 0 {
                counts[var as usize].0 += 1;
            } else {
                counts[var as usize].1 += 1;
            }
        }
    }
    for var in 1..=f.n {
        let (positive, negative) = counts[var as usize];
        if (positive, negative) != (2, 2) {
            violations.push(Cnf22Violation::Occurrences { var, positive, negative });
        }
    }
    Cnf22Report { violations }
}

fn require_valid(f: &Cnf22Formula) -> Result<()> {
    match validate_cnf22(f).violations.first() {
        Some(v) => Err(Error::InvalidFormula(v.to_string())),
        None => Ok(()),
    }
}

/// Mark pattern around the 10-cycle: `+1` and `-1` stand for `i` and `-i`.
const CYCLE_MARKS: [i64; 10] = [1, 0, 1, 0, 0, -1, 0, -1, 0, 0];
const POSITIVE_SLOTS: [usize; 2] = [0, 2];
const NEGATIVE_SLOTS: [usize; 2] = [5, 7];

/// The marked 10-cycle of one variable, on vertices `1..=10`. Cycle edge `p`
/// joins positions `p` and `p+1 (mod 10)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableCycle {
    pub i: u32,
    /// In cycle order.
    pub edges: Vec<Edge>,
    /// Parallel to `edges`.
    pub marks: Vec<i64>,
}

impl VariableCycle {
    pub fn graph(&self) -> StaticGraph {
        StaticGraph::new(10, self.edges.iter().map(|e| (e.u(), e.v()))).expect("a 10-cycle")
    }

    /// `which = 1`: the perfect matching holding both `+i` edges;
    /// `which = 2`: the one holding both `-i` edges.
    pub fn perfect_matching(&self, which: u8) -> Vec<Edge> {
        let parity = usize::from(which != 1);
        self.edges.iter().enumerate().filter(|(p, _)| p % 2 == parity).map(|(_, &e)| e).collect()
    }
}

pub fn build_variable_cycle(i: u32) -> VariableCycle {
    assert!(i >= 1, "variables are numbered from 1");
    let edges = (0..10).map(|p| Edge::new(p + 1, (p + 1) % 10 + 1)).collect();
    let marks = CYCLE_MARKS.iter().map(|&s| s * i as i64).collect();
    VariableCycle { i, edges, marks }
}

fn labels(ts: &[u32]) -> Labels {
    ts.iter().copied().collect()
}

/// Shared marked edge `a–b` of one literal occurrence.
#[derive(Debug, Clone, Copy)]
struct Occurrence {
    var: u32,
    positive: bool,
    a: Vertex,
    b: Vertex,
}

fn cycle_vertex(i: u32, p: usize) -> Vertex {
    10 * (i - 1) + (p % 10) as u32 + 1
}

/// Cycle edges of every variable, labelled at time 1 (marked ones at 1 and 2),
/// plus the literal occurrences in clause order.
type VariablePart = (Vec<(Vertex, Vertex, Labels)>, BTreeMap<Edge, i64>, Vec<Vec<Occurrence>>);

fn variable_part(f: &Cnf22Formula) -> VariablePart {
    let mut edges = Vec::new();
    let mut marks = BTreeMap::new();
    for i in 1..=f.n {
        for (p, &sign) in CYCLE_MARKS.iter().enumerate() {
            let (u, v) = (cycle_vertex(i, p), cycle_vertex(i, p + 1));
            if sign == 0 {
                edges.push((u, v, labels(&[1])));
            } else {
                edges.push((u, v, labels(&[1, 2])));
                marks.insert(Edge::new(u, v), sign * i as i64);
            }
        }
    }
    let mut used = vec![(0usize, 0usize); f.n as usize + 1];
    let occurrences = f
        .clauses
        .iter()
        .map(|c| {
            c.iter()
                .map(|&lit| {
                    let var = lit.unsigned_abs();
                    let slot = if lit > 0 {
                        let k = &mut used[var as usize].0;
                        *k += 1;
                        POSITIVE_SLOTS[*k - 1]
                    } else {
                        let k = &mut used[var as usize].1;
                        *k += 1;
                        NEGATIVE_SLOTS[*k - 1]
                    };
                    Occurrence { var, positive: lit > 0, a: cycle_vertex(var, slot), b: cycle_vertex(var, slot + 1) }
                })
                .collect()
        })
        .collect();
    (edges, marks, occurrences)
}

/// Vertices of clause `p`'s cover gadget: `z, w, c_1..c_3, d_1..d_3`.
fn cover_clause_vertices(n: u32, p: usize) -> (Vertex, Vertex, [Vertex; 3], [Vertex; 3]) {
    let base = 10 * n + 8 * p as u32 + 1;
    (base, base + 1, [base + 2, base + 3, base + 4], [base + 5, base + 6, base + 7])
}

/// Unmarked gadget edges around marked edges `a_q–b_q`:
/// `z–a_q, z–c_q, a_q–c_q, w–b_q, w–d_q, b_q–d_q`.
fn t_gadget_edges(z: Vertex, w: Vertex, ab: [(Vertex, Vertex); 3], c: [Vertex; 3], d: [Vertex; 3]) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for q in 0..3 {
        let (a, b) = ab[q];
        out.extend([(z, a), (z, c[q]), (a, c[q]), (w, b), (w, d[q]), (b, d[q])]);
    }
    out
}

/// Temporal edge cover instance with lifetime 2 and threshold `5n + 6m`.
pub fn reduce_sat_to_cover(f: &Cnf22Formula) -> Result<GadgetInstance> {
    require_valid(f)?;
    let (mut edges, marks, occurrences) = variable_part(f);
    for (p, occ) in occurrences.iter().enumerate() {
        let (z, w, c, d) = cover_clause_vertices(f.n, p);
        let ab = [0, 1, 2].map(|q| (occ[q].a, occ[q].b));
        edges.extend(t_gadget_edges(z, w, ab, c, d).into_iter().map(|(u, v)| (u, v, labels(&[2]))));
    }
    let n = 10 * f.n + 8 * f.m() as u32;
    Ok(GadgetInstance {
        graph: TemporalGraph::new(n, 2, edges)?,
        marks,
        threshold: 5 * f.n as usize + 6 * f.m(),
        kind: ReductionKind::SatCover,
    })
}

/// Temporal matching instance with lifetime 2 and threshold `5n + m`.
pub fn reduce_sat_to_matching(f: &Cnf22Formula) -> Result<GadgetInstance> {
    require_valid(f)?;
    let (mut edges, marks, occurrences) = variable_part(f);
    for (p, occ) in occurrences.iter().enumerate() {
        let z = 10 * f.n + p as u32 + 1;
        edges.extend(occ.iter().map(|o| (z, o.a, labels(&[2]))));
    }
    let n = 10 * f.n + f.m() as u32;
    Ok(GadgetInstance {
        graph: TemporalGraph::new(n, 2, edges)?,
        marks,
        threshold: 5 * f.n as usize + f.m(),
        kind: ReductionKind::SatMatching,
    })
}

fn check_assignment(f: &Cnf22Formula, sigma: &[bool]) -> Result<()> {
    require_valid(f)?;
    if sigma.len() != f.n as usize {
        return Err(Error::InvalidParameter(format!(
            "assignment has {} values for {} variables",
            sigma.len(),
            f.n
        )));
    }
    match f.first_unsatisfied(sigma) {
        Some(p) => Err(Error::Unsatisfied(p)),
        None => Ok(()),
    }
}

fn cycle_matching(i: u32, which: u8) -> impl Iterator<Item = Edge> {
    let parity = usize::from(which != 1);
    (0..10)
        .filter(move |p| p % 2 == parity)
        .map(move |p| Edge::new(cycle_vertex(i, p), cycle_vertex(i, p + 1)))
}

/// True variables take the cycle matching with their `+i` edges, false ones
/// the `-i` side; each clause then needs six more edges.
pub fn assignment_to_cover(f: &Cnf22Formula, sigma: &[bool]) -> Result<SolutionSet> {
    check_assignment(f, sigma)?;
    let (_, _, occurrences) = variable_part(f);
    let mut edges = Vec::new();
    for i in 1..=f.n {
        edges.extend(cycle_matching(i, if sigma[i as usize - 1] { 1 } else { 2 }));
    }
    for (p, occ) in occurrences.iter().enumerate() {
        let (z, w, c, d) = cover_clause_vertices(f.n, p);
        let first = occ
            .iter()
            .position(|o| sigma[o.var as usize - 1] == o.positive)
            .expect("clause is satisfied");
        for (q, o) in occ.iter().enumerate() {
            if q == first {
                edges.extend([Edge::new(z, c[q]), Edge::new(w, d[q])]);
            } else {
                edges.extend([Edge::new(o.a, c[q]), Edge::new(o.b, d[q])]);
            }
        }
    }
    Ok(SolutionSet::new(SolutionKind::Cover, edges))
}

/// False variables take the cycle matching with their `+i` edges, true ones
/// the `-i` side; each clause adds the top edge of its first true literal,
/// whose marked edge is then unused.
pub fn assignment_to_matching(f: &Cnf22Formula, sigma: &[bool]) -> Result<SolutionSet> {
    check_assignment(f, sigma)?;
    let (_, _, occurrences) = variable_part(f);
    let mut edges = Vec::new();
    for i in 1..=f.n {
        edges.extend(cycle_matching(i, if sigma[i as usize - 1] { 2 } else { 1 }));
    }
    for (p, occ) in occurrences.iter().enumerate() {
        let z = 10 * f.n + p as u32 + 1;
        let o = occ
            .iter()
            .find(|o| sigma[o.var as usize - 1] == o.positive)
            .expect("clause is satisfied");
        edges.push(Edge::new(z, o.a));
    }
    Ok(SolutionSet::new(SolutionKind::Matching, edges))
}

/// Stand-alone cover clause gadget: top `z = 1`, bottom `w = 2`, and for the
/// `q`-th mark vertices `a, b, c, d = 3+4q .. 6+4q`. Marked edges `a–b` live
/// at times 1 and 2, the other 18 edges at time 2.
pub fn build_clause_gadget_cover(j: u32, k: u32, l: u32) -> GadgetInstance {
    let ab = [0u32, 1, 2].map(|q| (3 + 4 * q, 4 + 4 * q));
    let c = [0u32, 1, 2].map(|q| 5 + 4 * q);
    let d = [0u32, 1, 2].map(|q| 6 + 4 * q);
    let mut edges: Vec<(Vertex, Vertex, Labels)> =
        t_gadget_edges(1, 2, ab, c, d).into_iter().map(|(u, v)| (u, v, labels(&[2]))).collect();
    let mut marks = BTreeMap::new();
    for (q, mark) in [j, k, l].into_iter().enumerate() {
        let (a, b) = ab[q];
        edges.push((a, b, labels(&[1, 2])));
        marks.insert(Edge::new(a, b), mark as i64);
    }
    GadgetInstance {
        graph: TemporalGraph::new(14, 2, edges).expect("fixed gadget"),
        marks,
        threshold: 6,
        kind: ReductionKind::ClauseCover,
    }
}

/// Stand-alone matching clause gadget: top `z = 1`, marked edges
/// `a_q–b_q = (2+2q)–(3+2q)` at times 1 and 2, and `z–a_q` at time 2.
pub fn build_clause_gadget_matching(j: u32, k: u32, l: u32) -> GadgetInstance {
    let mut edges = Vec::new();
    let mut marks = BTreeMap::new();
    for (q, mark) in [j, k, l].into_iter().enumerate() {
        let (a, b) = (2 + 2 * q as u32, 3 + 2 * q as u32);
        edges.push((a, b, labels(&[1, 2])));
        edges.push((1, a, labels(&[2])));
        marks.insert(Edge::new(a, b), mark as i64);
    }
    GadgetInstance {
        graph: TemporalGraph::new(7, 2, edges).expect("fixed gadget"),
        marks,
        threshold: 1,
        kind: ReductionKind::ClauseMatching,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::{verify_edge_cover, verify_matching};

    pub(crate) fn example() -> Cnf22Formula {
        Cnf22Formula::new(3, vec![vec![1, 2, 3], vec![1, 2, 3], vec![-1, -2, -3], vec![-1, -2, -3]])
    }

    #[test]
    fn validation() {
        assert!(validate_cnf22(&example()).is_valid());
        assert!(validate_cnf22(&Cnf22Formula::new(0, vec![])).is_valid());
        let bad = Cnf22Formula::new(1, vec![vec![1, 1, 1], vec![-1, -1]]);
        let report = validate_cnf22(&bad);
        assert!(report.violations.contains(&Cnf22Violation::ClauseArity { clause: 2, len: 2 }));
        assert!(report
            .violations
            .contains(&Cnf22Violation::Occurrences { var: 1, positive: 3, negative: 2 }));
    }

    #[test]
    fn dimacs_round_trip() {
        let f = example();
        assert_eq!(Cnf22Formula::parse_dimacs(&f.to_dimacs()).unwrap(), f);
        let spread = "c hello\np cnf 2 2\n1 -2\n0 2 -1 0\n";
        let g = Cnf22Formula::parse_dimacs(spread).unwrap();
        assert_eq!(g.clauses(), &[vec![1, -2], vec![2, -1]]);
        assert!(Cnf22Formula::parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(Cnf22Formula::parse_dimacs("p cnf 1 2\n1 0\n").is_err());
    }

    #[test]
    fn cycle_marks_and_matchings() {
        let c = build_variable_cycle(4);
        let mut ms = c.marks.clone();
        ms.sort();
        assert_eq!(ms, vec![-4, -4, 0, 0, 0, 0, 0, 0, 4, 4]);
        let m1 = c.perfect_matching(1);
        let marked = |e: &Edge| c.marks[c.edges.iter().position(|x| x == e).unwrap()];
        assert_eq!(m1.iter().filter(|e| marked(e) == 4).count(), 2);
        assert_eq!(m1.iter().filter(|e| marked(e) == -4).count(), 0);
        let m2 = c.perfect_matching(2);
        assert_eq!(m2.iter().filter(|e| marked(e) == -4).count(), 2);
    }

    #[test]
    fn sizes_and_thresholds() {
        let f = example();
        let cover = reduce_sat_to_cover(&f).unwrap();
        assert_eq!(cover.threshold, 39);
        assert_eq!(cover.graph.n(), 62);
        assert_eq!(cover.graph.m(), 102);
        assert_eq!(cover.marks.len(), 12);
        let matching = reduce_sat_to_matching(&f).unwrap();
        assert_eq!(matching.threshold, 19);
        assert_eq!(matching.graph.n(), 34);
        assert_eq!(matching.graph.m(), 42);
    }

    #[test]
    fn forward_direction() {
        let f = example();
        let sigma = [true, false, false];
        let cover = assignment_to_cover(&f, &sigma).unwrap();
        let inst = reduce_sat_to_cover(&f).unwrap();
        assert_eq!(cover.len(), 39);
        assert!(verify_edge_cover(&inst.graph, &cover).unwrap().ok);
        let matching = assignment_to_matching(&f, &sigma).unwrap();
        let inst = reduce_sat_to_matching(&f).unwrap();
        assert_eq!(matching.len(), 19);
        assert!(verify_matching(&inst.graph, &matching).unwrap().ok);
        assert_eq!(assignment_to_cover(&f, &[true, true, true]), Err(Error::Unsatisfied(3)));
    }

    #[test]
    fn clause_gadget_shapes() {
        let t = build_clause_gadget_cover(1, 2, 3);
        assert_eq!((t.graph.n(), t.graph.m()), (14, 21));
        let c = build_clause_gadget_matching(1, 2, 3);
        assert_eq!((c.graph.n(), c.graph.m()), (7, 6));
        let unmarked: Vec<Edge> = c.graph.edges().iter().copied().filter(|&e| c.mark(e) == 0).collect();
        assert_eq!(unmarked.len(), 3);
        assert!(unmarked.iter().all(|e| e.contains(1)));
    }
}
