//! Instance generators for the hardness reductions, with edge marks,
//! thresholds, and solution constructors for the forward direction.

mod sat;
mod sets;

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_num};
use crate::graph::{Edge, Labels, TemporalGraph};

pub use sat::{
    assignment_to_cover, assignment_to_matching, build_clause_gadget_cover, build_clause_gadget_matching,
    build_variable_cycle, reduce_sat_to_cover, reduce_sat_to_matching, validate_cnf22, Cnf22Formula,
    Cnf22Report, Cnf22Violation, VariableCycle,
};
pub use sets::{
    cover_to_setcover, reduce_setcover_inapprox, reduce_setcover_to_tree_cover, reduce_setpacking_to_star_matching,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    SatCover,
    SatMatching,
    ClauseCover,
    ClauseMatching,
    SetCoverTree,
    SetPackingStar,
    Inapprox,
}

impl ReductionKind {
    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::SatCover => "sat-cover",
            ReductionKind::SatMatching => "sat-matching",
            ReductionKind::ClauseCover => "clause-cover",
            ReductionKind::ClauseMatching => "clause-matching",
            ReductionKind::SetCoverTree => "setcover-tree",
            ReductionKind::SetPackingStar => "setpacking-star",
            ReductionKind::Inapprox => "inapprox",
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ReductionKind::SatCover,
            ReductionKind::SatMatching,
            ReductionKind::ClauseCover,
            ReductionKind::ClauseMatching,
            ReductionKind::SetCoverTree,
            ReductionKind::SetPackingStar,
            ReductionKind::Inapprox,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown reduction '{s}'")))
    }
}

/// A generated instance plus its edge marks (absent means 0) and the value
/// the reduction compares against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: TemporalGraph,
    pub marks: BTreeMap<Edge, i64>,
    pub threshold: usize,
    pub kind: ReductionKind,
}

/// Contents of a marks sidecar file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sidecar {
    pub kind: ReductionKind,
    pub threshold: usize,
    pub marks: BTreeMap<Edge, i64>,
}

impl GadgetInstance {
    pub fn mark(&self, e: Edge) -> i64 {
        self.marks.get(&e).copied().unwrap_or(0)
    }

    /// `r <kind> <threshold>` followed by `m <u> <v> <mark>` per marked edge.
    pub fn sidecar_text(&self) -> String {
        let mut out = format!("r {} {}\n", self.kind, self.threshold);
        for (e, mark) in &self.marks {
            let _ = writeln!(out, "m {} {} {mark}", e.u(), e.v());
        }
        out
    }
}

impl Sidecar {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing 'r' line"))?;
        if header.len() != 3 || header[0] != "r" {
            return Err(Error::parse(hline, "expected 'r <kind> <threshold>'"));
        }
        let kind = header[1].parse().map_err(|e: Error| Error::parse(hline, e.to_string()))?;
        let threshold = parse_num(hline, header[2], "threshold")?;
        let mut marks = BTreeMap::new();
        for (line, fields) in lines {
            if fields.len() != 4 || fields[0] != "m" {
                return Err(Error::parse(line, "expected 'm <u> <v> <mark>'"));
            }
            let u: u32 = parse_num(line, fields[1], "vertex")?;
            let v: u32 = parse_num(line, fields[2], "vertex")?;
            if u == v {
                return Err(Error::parse(line, "self-loop"));
            }
            marks.insert(Edge::new(u, v), parse_num(line, fields[3], "mark")?);
        }
        Ok(Sidecar { kind, threshold, marks })
    }
}

/// Adds the fresh time `τ+1` to every label set.
pub fn augment_labels(g: &TemporalGraph) -> TemporalGraph {
    let tau = g.tau() + 1;
    let edges = g.labelled_edges().map(|(e, l)| {
        let mut l: Labels = l.clone();
        l.insert(tau);
        (e.u(), e.v(), l)
    });
    TemporalGraph::new(g.n(), tau, edges).expect("labels stay within the new lifetime")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::labels;

    #[test]
    fn augment_extends_lifetime_each_time() {
        let g = TemporalGraph::new(2, 1, [(1, 2, labels(&[1]))]).unwrap();
        let a = augment_labels(&g);
        assert_eq!(a.tau(), 2);
        assert_eq!(a.labels(0), &labels(&[1, 2]));
        let b = augment_labels(&a);
        assert_eq!(b.tau(), 3);
        assert_ne!(a, b);
    }

    #[test]
    fn sidecar_round_trip() {
        let g = build_clause_gadget_cover(1, 2, 3);
        let side = Sidecar::parse(&g.sidecar_text()).unwrap();
        assert_eq!(side.kind, ReductionKind::ClauseCover);
        assert_eq!(side.threshold, g.threshold);
        assert_eq!(side.marks, g.marks);
        assert!(Sidecar::parse("r nope 3").is_err());
    }
}
