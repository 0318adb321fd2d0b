use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use tempoc_core::generate::{random_temporal_graph, RandomParams};
use tempoc_core::reductions::{
    augment_labels, reduce_sat_to_cover, reduce_sat_to_matching, reduce_setcover_inapprox,
    reduce_setcover_to_tree_cover, reduce_setpacking_to_star_matching, Cnf22Formula, GadgetInstance,
};
use tempoc_core::serialize_temporal_graph;
use tempoc_core::static_alg::SetSystem;

use super::{load_graph, read_file, write_file};
use crate::failure::Failure;

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
}

#[derive(Args)]
struct Output {
    /// Instance file; stdout if absent.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Threshold and marks sidecar; defaults to `<out>.marks`, or stderr
    /// when writing the instance to stdout.
    #[arg(long, value_name = "FILE")]
    marks: Option<PathBuf>,
}

#[derive(Args)]
struct SetsInput {
    /// Set system file (`p setsys <n> <m>` then `s <e1,e2,...>` lines).
    #[arg(long, value_name = "FILE")]
    sets: PathBuf,
    /// Target value the threshold is computed from.
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct FormulaInput {
    /// DIMACS CNF file.
    #[arg(long, value_name = "FILE")]
    formula: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum GenKind {
    /// Seeded random temporal graph.
    Random {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        tau: u32,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// 3SAT(2,2) formula to temporal edge cover.
    SatCover(FormulaInput),
    /// 3SAT(2,2) formula to temporal matching.
    SatMatching(FormulaInput),
    /// Set cover to edge cover on a spider.
    SetcoverTree(SetsInput),
    /// Set packing to matching on a star.
    SetpackingStar(SetsInput),
    /// Set cover to edge cover with m² roots.
    Inapprox(SetsInput),
    /// Add a fresh final time to every label set.
    Augment {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn emit_graph(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_gadget(inst: GadgetInstance, output: &Output) -> Result<(), Failure> {
    emit_graph(&serialize_temporal_graph(&inst.graph), output.out.as_ref())?;
    let sidecar = inst.sidecar_text();
    let marks = output.marks.clone().or_else(|| {
        output.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".marks");
            PathBuf::from(s)
        })
    });
    match marks {
        Some(path) => write_file(&path, &sidecar),
        None => {
            eprint!("{sidecar}");
            Ok(())
        }
    }
}

fn load_formula(path: &Path) -> Result<Cnf22Formula, Failure> {
    Cnf22Formula::parse_dimacs(&read_file(path)?).map_err(|e| Failure::input(&path.display().to_string(), e))
}

fn load_sets(path: &Path) -> Result<SetSystem, Failure> {
    SetSystem::parse(&read_file(path)?).map_err(|e| Failure::input(&path.display().to_string(), e))
}

pub fn run(a: GenArgs) -> Result<(), Failure> {
    match a.kind {
        GenKind::Random { n, p, tau, q, seed, out } => {
            let g = random_temporal_graph(RandomParams { n, p, tau, q, seed })?;
            emit_graph(&serialize_temporal_graph(&g), out.as_ref())
        }
        GenKind::SatCover(f) => emit_gadget(reduce_sat_to_cover(&load_formula(&f.formula)?)?, &f.output),
        GenKind::SatMatching(f) => emit_gadget(reduce_sat_to_matching(&load_formula(&f.formula)?)?, &f.output),
        GenKind::SetcoverTree(s) => emit_gadget(reduce_setcover_to_tree_cover(&load_sets(&s.sets)?, s.k)?, &s.output),
        GenKind::SetpackingStar(s) => {
            emit_gadget(reduce_setpacking_to_star_matching(&load_sets(&s.sets)?, s.k)?, &s.output)
        }
        GenKind::Inapprox(s) => emit_gadget(reduce_setcover_inapprox(&load_sets(&s.sets)?, s.k)?, &s.output),
        GenKind::Augment { input, out } => {
            emit_graph(&serialize_temporal_graph(&augment_labels(&load_graph(&input)?)), out.as_ref())
        }
    }
}
