//! Line-oriented text formats for instances and solutions.
//!
//! Instance:
//! ```text
//! # comment
//! p tgraph <n> <m> <tau>
//! e <u> <v> <t1,t2,...>
//! ```
//! Solution:
//! ```text
//! s <cover|matching> <count>
//! e <u> <v>
//! ```
//! Blank lines and lines starting with `#` are ignored by every parser here.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, Labels, TemporalGraph, Time, Vertex};
use crate::solution::{SolutionKind, SolutionSet};

/// Yields `(1-based line number, whitespace-split fields)` for content lines.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

pub(crate) fn parse_num<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} '{field}'")))
}

/// Parses a comma-separated list of integers. `-` denotes the empty list.
pub(crate) fn parse_list(line: usize, field: &str, what: &str) -> Result<Vec<u32>> {
    if field == "-" {
        return Ok(Vec::new());
    }
    field
        .split(',')
        .map(|s| parse_num(line, s, what))
        .collect()
}

pub(crate) fn join_list<I: IntoIterator<Item = u32>>(items: I) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join(",")
    }
}

pub fn parse_temporal_graph(text: &str) -> Result<TemporalGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'p tgraph' header"))?;
    if header.len() != 5 || header[0] != "p" || header[1] != "tgraph" {
        return Err(Error::parse(hline, "expected header 'p tgraph <n> <m> <tau>'"));
    }
    let n: u32 = parse_num(hline, header[2], "vertex count")?;
    let m: usize = parse_num(hline, header[3], "edge count")?;
    let tau: Time = parse_num(hline, header[4], "lifetime")?;
    if tau == 0 {
        return Err(Error::parse(hline, "lifetime must be positive"));
    }

    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut last_line = hline;
    for (line, fields) in lines {
        last_line = line;
        if fields[0] != "e" || fields.len() != 4 {
            return Err(Error::parse(line, "expected edge line 'e <u> <v> <t1,...>'"));
        }
        let u: Vertex = parse_num(line, fields[1], "vertex")?;
        let v: Vertex = parse_num(line, fields[2], "vertex")?;
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(Error::parse(line, format!("vertex {x} out of range 1..={n}")));
            }
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop at vertex {u}")));
        }
        if !seen.insert(Edge::new(u, v)) {
            return Err(Error::parse(line, format!("duplicate edge {}", Edge::new(u, v))));
        }
        let times = parse_list(line, fields[3], "time label")?;
        if times.is_empty() {
            return Err(Error::parse(line, "empty label set"));
        }
        if let Some(t) = times.iter().find(|&&t| t == 0 || t > tau) {
            return Err(Error::parse(line, format!("label {t} out of range 1..={tau}")));
        }
        let labels: Labels = times.into_iter().collect();
        edges.push((u, v, labels));
    }
    if edges.len() != m {
        return Err(Error::parse(
            last_line,
            format!("header announces {m} edges but {} were given", edges.len()),
        ));
    }
    TemporalGraph::new(n, tau, edges).map_err(|e| Error::parse(hline, e.to_string()))
}

/// Canonical form: edges in lexicographic order, labels ascending.
pub fn serialize_temporal_graph(g: &TemporalGraph) -> String {
    let mut out = format!("p tgraph {} {} {}\n", g.n(), g.m(), g.tau());
    for (e, labels) in g.labelled_edges() {
        let _ = writeln!(out, "e {} {} {}", e.u(), e.v(), join_list(labels.iter().copied()));
    }
    out
}

pub fn parse_solution(text: &str) -> Result<SolutionSet> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 's <kind> <count>' header"))?;
    if header.len() != 3 || header[0] != "s" {
        return Err(Error::parse(hline, "expected header 's <kind> <count>'"));
    }
    let kind = match header[1] {
        "cover" => SolutionKind::Cover,
        "matching" => SolutionKind::Matching,
        other => return Err(Error::parse(hline, format!("unknown solution kind '{other}'"))),
    };
    let count: usize = parse_num(hline, header[2], "edge count")?;
    let mut edges = Vec::with_capacity(count);
    let mut last_line = hline;
    for (line, fields) in lines {
        last_line = line;
        if fields.len() != 3 || fields[0] != "e" {
            return Err(Error::parse(line, "expected 'e <u> <v>'"));
        }
        let u: Vertex = parse_num(line, fields[1], "vertex")?;
        let v: Vertex = parse_num(line, fields[2], "vertex")?;
        if u == v {
            return Err(Error::parse(line, format!("self-loop at vertex {u}")));
        }
        edges.push(Edge::new(u, v));
    }
    if edges.len() != count {
        return Err(Error::parse(
            last_line,
            format!("header announces {count} edges but {} were given", edges.len()),
        ));
    }
    Ok(SolutionSet::new(kind, edges))
}

pub fn serialize_solution(s: &SolutionSet) -> String {
    let mut out = format!("s {} {}\n", s.kind(), s.len());
    for e in s.edges() {
        let _ = writeln!(out, "e {} {}", e.u(), e.v());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smallest_instance() {
        let g = parse_temporal_graph("p tgraph 2 1 2\ne 1 2 1,2").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.labels(0).iter().copied().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn label_out_of_range_reports_line() {
        let err = parse_temporal_graph("p tgraph 2 1 2\ne 1 2 3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn path_at_time_one() {
        let g = parse_temporal_graph("p tgraph 3 2 1\ne 1 2 1\ne 2 3 1").unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edges(), &[Edge::new(1, 2), Edge::new(2, 3)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("p graph 2 1 2\ne 1 2 1", 1),
            ("p tgraph 2 1 2\n# c\ne 1 5 1", 3),
            ("p tgraph 3 2 2\ne 1 2 1\ne 2 1 2", 3),
            ("p tgraph 2 1 2\ne 1 2 -", 2),
            ("p tgraph 2 1 2\ne 1 2 0", 2),
            ("p tgraph 2 2 2\ne 1 2 1", 2),
            ("p tgraph 2 1 2\ne 1 2 x", 2),
        ];
        for (text, want) in cases {
            match parse_temporal_graph(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn serialize_sorts_labels_and_edges() {
        let g = TemporalGraph::new(2, 2, [(2, 1, [2, 1].into_iter().collect())]).unwrap();
        assert_eq!(serialize_temporal_graph(&g), "p tgraph 2 1 2\ne 1 2 1,2\n");
        let empty = TemporalGraph::new(4, 3, []).unwrap();
        assert_eq!(serialize_temporal_graph(&empty), "p tgraph 4 0 3\n");
    }

    #[test]
    fn solution_round_trip() {
        let s = SolutionSet::new(SolutionKind::Matching, [Edge::new(3, 1), Edge::new(1, 2)]);
        let text = serialize_solution(&s);
        assert_eq!(text, "s matching 2\ne 1 2\ne 1 3\n");
        assert_eq!(parse_solution(&text).unwrap(), s);
        assert!(parse_solution("s cover 2\ne 1 2").is_err());
        assert!(parse_solution("s other 0").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = TemporalGraph> {
        (1u32..8, 1u32..5).prop_flat_map(|(n, tau)| {
            let pairs: Vec<(u32, u32)> =
                (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            let k = pairs.len();
            proptest::collection::vec(
                proptest::option::of(proptest::collection::btree_set(1..=tau, 1..=tau as usize)),
                k,
            )
            .prop_map(move |choice| {
                let edges = pairs
                    .iter()
                    .zip(choice)
                    .filter_map(|(&(u, v), l)| l.map(|l| (u, v, l)));
                TemporalGraph::new(n, tau, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn parse_serialize_round_trip(g in arb_graph()) {
            let text = serialize_temporal_graph(&g);
            let back = parse_temporal_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(serialize_temporal_graph(&back), text);
        }

        #[test]
        fn snapshots_partition_nothing_away(g in arb_graph()) {
            let mut union = std::collections::BTreeSet::new();
            for t in 1..=g.tau() {
                let s = g.snapshot(t).unwrap();
                prop_assert_eq!(s.n(), g.n());
                union.extend(s.edges().iter().copied());
            }
            prop_assert_eq!(union.into_iter().collect::<Vec<_>>(), g.edges().to_vec());
        }

        #[test]
        fn isolation_matches_scan(g in arb_graph()) {
            let mut isolated = 0usize;
            for v in 1..=g.n() {
                for t in 1..=g.tau() {
                    let touched = g.labelled_edges().any(|(e, l)| e.contains(v) && l.contains(&t));
                    prop_assert_eq!(g.is_isolated(v, t), !touched);
                    if !touched { isolated += 1; }
                }
            }
            let total = g.n() as usize * g.tau() as usize;
            prop_assert_eq!(g.coverable_universe().len(), total - isolated);
        }
    }
}
