//! Command-line interface.
//!
//! Exit codes: `check` returns 0 for a positive verdict, 1 for inconclusive
//! and 2 when a hypothesis fails. Every command returns 3 on bad input or an
//! unwritable output; `report` returns 1 when it had to skip corrupt lines.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::criterion::{CriterionOptions, CriterionVerdict, Decision, EdgeOutcome};
use crate::fine_interior::{default_bound, dim_certificate, fine_interior_reduced};
use crate::fwps::{simplex_from_weights, weights_from_simplex};
use crate::harness::catalog::{csv_row, summarize, CatalogRecord, CSV_HEADER};
use crate::harness::io::{
    parse_simplex, parse_simplices, parse_subdivision, SimplexRecord, SubdivisionRecord, WeightRecord,
};
use crate::harness::search::{evaluate_simplex, run_search, DegreeMode, SearchMode, SearchSpec};
use crate::polytope::{Simplex3, EDGE_PAIRS};
use crate::subdivision::{identity_check, subdivide_along_oriented_edge, validate_admissibility, EdgeSubdivision};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 1;
pub const EXIT_HYPOTHESIS_FAILED: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fwps-picard",
    version,
    about = "Edge-degeneration criterion for Picard number > 1 on surfaces in fake weighted projective 3-spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the criterion for one simplex.
    Check(CheckArgs),
    /// Run the criterion over a family of weight systems or a simplex file.
    Search(SearchArgs),
    /// Summarize a machine-format catalog.
    Report(ReportArgs),
    /// Print the maximal subdivision along an edge, or validate a custom one.
    Subdivide(SubdivideArgs),
    /// Print the Fine interior of a simplex.
    FineInterior(FineInteriorArgs),
    /// Print the weight system and multiplicity of a simplex.
    Weights(InputArgs),
    /// Print the simplex record of a weight system and degree.
    FromWeights(FromWeightsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Simplex record file, or `-` for stdin.
    pub file: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Max-norm bound on Fine-interior normals, in the reduced lattice frame.
    #[arg(long, value_name = "N")]
    pub fine_bound: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Largest weight to enumerate.
    #[arg(long, value_name = "N", required_unless_present = "simplex_file", value_parser = clap::value_parser!(u64).range(1..))]
    pub q_max: Option<u64>,
    /// `anticanonical` or `divisors:D`.
    #[arg(long, default_value = "anticanonical", value_name = "MODE")]
    pub degree_mode: DegreeMode,
    /// Search the simplex records in this file instead of weight systems.
    #[arg(long, value_name = "PATH", conflicts_with = "q_max")]
    pub simplex_file: Option<PathBuf>,
    /// Max-norm bound on Fine-interior normals, in the reduced lattice frame.
    #[arg(long, value_name = "N")]
    pub fine_bound: Option<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Omit timing fields, for byte-for-byte comparison of catalogs.
    #[arg(long)]
    pub strip_timings: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Catalog in machine format, or `-` for stdin.
    pub catalog: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SubdivideArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Oriented edge `i,j`; all edges with interior points when omitted.
    #[arg(long, value_name = "I,J", value_parser = parse_edge, conflicts_with = "subdivision")]
    pub edge: Option<(usize, usize)>,
    /// Custom subdivision record to validate.
    #[arg(long, value_name = "PATH")]
    pub subdivision: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FineInteriorArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Max-norm bound on Fine-interior normals, in the reduced lattice frame.
    #[arg(long, value_name = "N")]
    pub fine_bound: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FromWeightsArgs {
    /// Four positive weights `q0,q1,q2,q3`.
    #[arg(long, value_delimiter = ',', required = true, value_name = "Q0,Q1,Q2,Q3")]
    pub weights: Vec<u64>,
    /// Degree; the sum of the weights when omitted.
    #[arg(long)]
    pub degree: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err("expected two vertex indices `i,j`".to_string());
    };
    let a: usize = a.parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.parse().map_err(|e| format!("{e}"))?;
    if a > 3 || b > 3 || a == b {
        return Err("vertex indices must be distinct and in 0..=3".to_string());
    }
    Ok((a, b))
}

/// A failure that ends the command with the given exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT_ERROR, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(format!("cannot write output: {e}"))
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT_ERROR,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    match command {
        Command::Check(a) => cmd_check(a, stdout),
        Command::Search(a) => cmd_search(a, stdout, stderr),
        Command::Report(a) => cmd_report(a, stdout, stderr),
        Command::Subdivide(a) => cmd_subdivide(a, stdout),
        Command::FineInterior(a) => cmd_fine_interior(a, stdout),
        Command::Weights(a) => cmd_weights(a, stdout),
        Command::FromWeights(a) => cmd_from_weights(a, stdout),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        File::open(path).and_then(|mut f| f.read_to_string(&mut text)).map(|_| ())
    };
    res.map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn read_simplex(path: &Path) -> Result<Simplex3, Failure> {
    let text = read_input(path)?;
    parse_simplex(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Runs `body` against the requested sink and flushes it.
fn with_output(out: &Option<PathBuf>, stdout: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> Outcome) -> Outcome {
    match out {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            let code = body(&mut w)?;
            w.flush()?;
            Ok(code)
        }
        None => {
            let code = body(stdout)?;
            stdout.flush()?;
            Ok(code)
        }
    }
}

fn verdict_exit(d: &Decision) -> i32 {
    match d.verdict {
        CriterionVerdict::PicardGreaterOne { .. } => EXIT_POSITIVE,
        CriterionVerdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
        CriterionVerdict::HypothesisFailed { .. } => EXIT_HYPOTHESIS_FAILED,
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_check(a: CheckArgs, stdout: &mut dyn Write) -> Outcome {
    let s = read_simplex(&a.input.file)?;
    let opts = CriterionOptions { fine_bound: a.fine_bound };
    let id = a.input.file.display().to_string();
    let weights = WeightRecord::new(&weights_from_simplex(&s), None);
    let record = evaluate_simplex(id, &s, weights, &opts, false);
    let decision = record.decision.as_ref().expect("evaluated record");
    let code = verdict_exit(decision);
    with_output(&a.input.output.out, stdout, |w| {
        match a.input.output.format.unwrap_or(Format::Text) {
            Format::Text => write_check_text(w, &s, &record)?,
            Format::Machine => writeln!(w, "{}", record.to_json_line())?,
            Format::Csv => writeln!(w, "{CSV_HEADER}\n{}", csv_row(&record))?,
        }
        Ok(code)
    })
}

fn write_check_text(w: &mut dyn Write, s: &Simplex3, r: &CatalogRecord) -> io::Result<()> {
    let d = r.decision.as_ref().expect("evaluated record");
    let h = &d.hypotheses;
    writeln!(w, "simplex: {s}")?;
    if let Some(ws) = &r.weights {
        writeln!(w, "weights: ({}), multiplicity {}", join(&ws.weights), ws.multiplicity)?;
    }
    writeln!(w, "l*(Δ) = {}", h.l_star_delta)?;
    let stable = match h.fine_stable {
        Some(true) => "stable",
        Some(false) => "unstable",
        None => "stability not probed",
    };
    writeln!(w, "fine interior: {}, bound {}, {stable}", h.fine_dim, h.fine_bound)?;
    let edges: Vec<String> =
        h.edges_with_interior.iter().map(|e| format!("({},{}) l*={}", e.edge.0, e.edge.1, e.l_star)).collect();
    writeln!(
        w,
        "edges with interior points: {}",
        if edges.is_empty() { "none".to_string() } else { edges.join(", ") }
    )?;
    if h.all_hold {
        writeln!(w, "hypotheses: hold")?;
    } else {
        writeln!(w, "hypotheses: failed")?;
        for reason in &h.reasons {
            writeln!(w, "  - {reason}")?;
        }
    }
    if !d.per_edge.is_empty() {
        writeln!(w, "{:<7} {:>4} {:>12} {:>12} {:>7}  status", "edge", "l*", "pieces", "cuts", "margin")?;
        for e in &d.per_edge {
            let edge = format!("({},{})", e.edge.0, e.edge.1);
            match &e.outcome {
                EdgeOutcome::Primitive => {
                    writeln!(w, "{edge:<7} {:>4} {:>12} {:>12} {:>7}  primitive", e.l_star, "-", "-", "-")?
                }
                EdgeOutcome::Evaluated { budget, admissible, satisfies_inequality } => {
                    let pieces: BigInt = budget.piece_pg.iter().sum();
                    let cuts: BigInt = budget.cut_genera.iter().sum();
                    let status = match (admissible, satisfies_inequality) {
                        (false, _) => "inadmissible",
                        (true, true) => "satisfies inequality",
                        (true, false) => "fails inequality",
                    };
                    writeln!(w, "{edge:<7} {:>4} {pieces:>12} {cuts:>12} {:>7}  {status}", e.l_star, budget.margin)?;
                }
                EdgeOutcome::Invalid { reason } => {
                    writeln!(w, "{edge:<7} {:>4} {:>12} {:>12} {:>7}  invalid: {reason}", e.l_star, "-", "-", "-")?
                }
            }
        }
    }
    match &d.verdict {
        CriterionVerdict::PicardGreaterOne { witness_edge, budget, assumption } => {
            writeln!(
                w,
                "verdict: picard_greater_one (witness edge ({},{}), margin {}, p_g {}, vanishing_dim {})",
                witness_edge.0, witness_edge.1, budget.margin, budget.p_g, budget.vanishing_dim
            )?;
            writeln!(w, "assumption: {assumption}")?;
            writeln!(w, "reverified: {}", r.reverified == Some(true))?;
        }
        CriterionVerdict::Inconclusive { best_margin, note } => {
            let m = best_margin.as_ref().map_or("-".to_string(), BigInt::to_string);
            writeln!(w, "verdict: inconclusive (best margin {m})")?;
            writeln!(w, "note: {note}")?;
        }
        CriterionVerdict::HypothesisFailed { .. } => writeln!(w, "verdict: hypothesis_failed")?,
    }
    Ok(())
}

fn cmd_search(a: SearchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let mode = match (&a.simplex_file, a.q_max) {
        (Some(path), _) => {
            let text = read_input(path)?;
            let list = parse_simplices(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            SearchMode::Simplices(list)
        }
        (None, Some(q_max)) => SearchMode::Weights { q_max, degrees: a.degree_mode },
        (None, None) => return Err(Failure::input("either --q-max or --simplex-file is required")),
    };
    let spec =
        SearchSpec { mode, fine_bound_override: a.fine_bound, parallelism: a.jobs as usize, timings: !a.strip_timings };
    let format = a.output.format.unwrap_or(Format::Machine);
    let summary = with_output(&a.output.out, stdout, |w| {
        if format == Format::Csv {
            writeln!(w, "{CSV_HEADER}")?;
        }
        let summary = run_search(&spec, |r| match format {
            Format::Machine => writeln!(w, "{}", r.to_json_line()),
            Format::Csv => writeln!(w, "{}", csv_row(r)),
            Format::Text => writeln!(w, "{}", r.to_text()),
        })?;
        if format == Format::Text {
            writeln!(w, "{}", summary.line())?;
        } else {
            let _ = writeln!(stderr, "{}", summary.line());
        }
        Ok(0)
    })?;
    Ok(summary)
}

fn cmd_report(a: ReportArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let text = read_input(&a.catalog)?;
    let rep = summarize(&text);
    let code = if rep.corrupt.is_empty() { 0 } else { 1 };
    for (line, reason) in &rep.corrupt {
        let _ = writeln!(stderr, "skipping corrupt line {line}: {reason}");
    }
    with_output(&a.output.out, stdout, |w| {
        match a.output.format.unwrap_or(Format::Text) {
            Format::Text => write!(w, "{}", rep.to_text())?,
            Format::Machine => {
                let margins: Vec<_> = rep.margins.iter().map(|(m, n)| json!([m.to_string(), n])).collect();
                let v = json!({
                    "records": rep.records,
                    "by_verdict": rep.by_verdict,
                    "margins": margins,
                    "genuine": rep.genuine,
                    "fake": rep.fake,
                    "unknown_multiplicity": rep.unknown_multiplicity,
                    "unverified_positive": rep.unverified_positive,
                    "corrupt_lines": rep.corrupt.iter().map(|(l, _)| l).collect::<Vec<_>>(),
                });
                writeln!(w, "{v}")?;
            }
            Format::Csv => {
                writeln!(w, "verdict,count")?;
                for (v, n) in &rep.by_verdict {
                    writeln!(w, "{v},{n}")?;
                }
            }
        }
        Ok(code)
    })
}

fn subdivision_json(sub: &EdgeSubdivision) -> serde_json::Value {
    let check = identity_check(sub);
    let violations: Vec<_> = match validate_admissibility(sub) {
        Ok(()) => Vec::new(),
        Err(v) => v
            .iter()
            .map(|x| json!({"point": x.point.to_string(), "edge": [x.edge[0].to_string(), x.edge[1].to_string()]}))
            .collect(),
    };
    json!({
        "subdivision": SubdivisionRecord::from_subdivision(sub),
        "identity": check,
        "admissibility_violations": violations,
    })
}

fn write_subdivision_text(w: &mut dyn Write, sub: &EdgeSubdivision) -> io::Result<()> {
    let check = identity_check(sub);
    writeln!(w, "edge ({},{}): {}", sub.orientation.0, sub.orientation.1, sub.edge.simplex)?;
    for (p, l) in sub.pieces.iter().zip(&check.piece_lstars) {
        writeln!(w, "  piece {p} l*={l}")?;
    }
    for (c, l) in sub.cuts.iter().zip(&check.cut_lstars) {
        writeln!(w, "  cut   {c} l*={l}")?;
    }
    writeln!(
        w,
        "  identity: {} = {} + {} ({})",
        check.lhs,
        check.pieces_sum,
        check.cuts_sum,
        if check.holds { "holds" } else { "VIOLATED" }
    )?;
    match validate_admissibility(sub) {
        Ok(()) => writeln!(w, "  admissible: yes")?,
        Err(vs) => {
            writeln!(w, "  admissible: no")?;
            for v in vs {
                writeln!(w, "    interior point {} on edge [{}, {}]", v.point, v.edge[0], v.edge[1])?;
            }
        }
    }
    Ok(())
}

fn cmd_subdivide(a: SubdivideArgs, stdout: &mut dyn Write) -> Outcome {
    let s = read_simplex(&a.input.file)?;
    let subs: Vec<EdgeSubdivision> = if let Some(path) = &a.subdivision {
        let text = read_input(path)?;
        let rec = parse_subdivision(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        vec![rec.into_subdivision(&s).map_err(|e| Failure::input(e.to_string()))?]
    } else if let Some((i, j)) = a.edge {
        vec![subdivide_along_oriented_edge(&s, i, j).map_err(|e| Failure::input(e.to_string()))?]
    } else {
        let all: Vec<EdgeSubdivision> =
            EDGE_PAIRS.iter().filter_map(|&(i, j)| subdivide_along_oriented_edge(&s, i, j).ok()).collect();
        if all.is_empty() {
            return Err(Failure::input(crate::Error::EdgeWithoutInteriorPoints.to_string()));
        }
        all
    };
    with_output(&a.input.output.out, stdout, |w| {
        for sub in &subs {
            match a.input.output.format.unwrap_or(Format::Text) {
                Format::Machine | Format::Csv => writeln!(w, "{}", subdivision_json(sub))?,
                Format::Text => write_subdivision_text(w, sub)?,
            }
        }
        Ok(0)
    })
}

fn cmd_fine_interior(a: FineInteriorArgs, stdout: &mut dyn Write) -> Outcome {
    let s = read_simplex(&a.input.file)?;
    let bound = a.fine_bound.unwrap_or_else(|| default_bound(&s));
    let fine = fine_interior_reduced(&s, bound);
    let cert = dim_certificate(&fine);
    let vertices: Vec<String> = fine.vertices.iter().map(ToString::to_string).collect();
    with_output(&a.input.output.out, stdout, |w| {
        match a.input.output.format.unwrap_or(Format::Text) {
            Format::Text => {
                let verts = if vertices.is_empty() { "none".to_string() } else { vertices.join(", ") };
                writeln!(w, "{cert}, vertices: {verts}")?;
                for h in &fine.halfspaces {
                    writeln!(w, "  {h}")?;
                }
                writeln!(
                    w,
                    "  bound {}, dim between {} and {}, sandwich {}, stable {}",
                    fine.bound_used,
                    fine.dim_low,
                    fine.dim_high,
                    fine.sandwich_holds,
                    fine.stable.map_or("n/a".to_string(), |b| b.to_string())
                )?;
            }
            Format::Machine | Format::Csv => {
                let v = json!({
                    "dim": cert,
                    "vertices": vertices,
                    "halfspaces": fine.halfspaces.iter().map(|h| json!({
                        "normal": h.normal().to_string(),
                        "bound": h.bound().to_string(),
                    })).collect::<Vec<_>>(),
                    "dim_low": fine.dim_low,
                    "dim_high": fine.dim_high,
                    "certified": fine.certified,
                    "bound": fine.bound_used,
                    "stable": fine.stable,
                    "sandwich_holds": fine.sandwich_holds,
                });
                writeln!(w, "{v}")?;
            }
        }
        Ok(0)
    })
}

fn cmd_weights(a: InputArgs, stdout: &mut dyn Write) -> Outcome {
    let s = read_simplex(&a.file)?;
    let ws = weights_from_simplex(&s);
    with_output(&a.output.out, stdout, |w| {
        match a.output.format.unwrap_or(Format::Text) {
            Format::Text => writeln!(w, "{ws}")?,
            Format::Machine | Format::Csv => {
                writeln!(w, "{}", serde_json::to_string(&WeightRecord::new(&ws, None)).expect("serializable"))?
            }
        }
        Ok(0)
    })
}

fn cmd_from_weights(a: FromWeightsArgs, stdout: &mut dyn Write) -> Outcome {
    let q: [u64; 4] = a.weights.clone().try_into().map_err(|_| Failure::input("expected four weights"))?;
    let degree = a.degree.unwrap_or(q.iter().sum());
    let s = simplex_from_weights(&q, degree).map_err(|e| Failure::input(e.to_string()))?;
    let rec = SimplexRecord::from_simplex(&s).ok_or_else(|| Failure::input("coordinates exceed 64 bits"))?;
    with_output(&a.output.out, stdout, |w| {
        match a.output.format.unwrap_or(Format::Machine) {
            Format::Text => writeln!(w, "{s}")?,
            Format::Machine | Format::Csv => writeln!(w, "{}", serde_json::to_string(&rec).expect("serializable"))?,
        }
        Ok(0)
    })
}
