//! Command-line front end.
//!
//! Exit status is 0 on success, 1 when a check fails (a formula mismatch or
//! a classification count off its expected value), and 2 on bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith::IntMatrix4;
use crate::catalog::{classify_surfaces, match_by_relabeling, parse_rows, SymbolicSurface};
use crate::character::{picard_report, CharacterGroup, CharacterVector, DelsarteMatrix, PicardReport};
use crate::error::{Error, Result};
use crate::formula::{
    coverage_plan, discover_for_entry, find_maximal, load_table, verify_pairs, CaseCheck, MaximalHit,
    UntestedResidue, CASE_COUNT,
};
use crate::hodge::{build_exceptional_set, census, classify_with_bound, Census, DEFAULT_EXCEPTIONAL_ORDER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "delsarte", version, about = "Picard numbers of Delsarte surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "DELSARTE_THREADS", global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lefschetz and Picard numbers of one surface.
    Picard {
        /// Catalog case id.
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        case: Option<u32>,
        /// Exponent rows, e.g. "n,0,0,0; 0,n,0,0; 0,0,n,0; 0,0,0,n".
        #[arg(long)]
        matrix: Option<String>,
        /// Degree.
        #[arg(long)]
        n: Option<i64>,
        /// Largest order labelled exceptional in the census.
        #[arg(long, default_value_t = DEFAULT_EXCEPTIONAL_ORDER)]
        max_order: u64,
    },
    /// Run the classification of degree-n Delsarte surfaces with rational
    /// double points and print the catalog.
    Classify,
    /// Label one character vector, e.g. "1/24,19/24,1/3,5/6".
    Label {
        vector: String,
        #[arg(long, default_value_t = DEFAULT_EXCEPTIONAL_ORDER)]
        max_order: u64,
    },
    /// Compare every table formula with direct computation.
    Verify {
        #[arg(long, default_value_t = 6)]
        n_from: i64,
        #[arg(long, default_value_t = 36)]
        n_to: i64,
        /// Also check the first degree triggering each delta residue, up to
        /// this degree.
        #[arg(long)]
        cover_to: Option<i64>,
        /// Restrict to these case ids.
        #[arg(long, value_delimiter = ',')]
        cases: Vec<u32>,
        /// Compare against the formulas with errata applied.
        #[arg(long)]
        corrected: bool,
    },
    /// Enumerate exceptional elements.
    Exceptional {
        #[arg(long, default_value_t = DEFAULT_EXCEPTIONAL_ORDER)]
        max_order: u64,
        /// Write the elements, one per line, to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Search for surfaces with Picard number equal to h^{1,1}.
    Maximal {
        #[arg(long, default_value_t = 5)]
        n_min: i64,
        #[arg(long, default_value_t = 12)]
        n_max: i64,
    },
    /// Recover a Picard formula for a case from computed samples.
    Discover {
        #[arg(long)]
        case: u32,
        #[arg(long, default_value_t = 6)]
        n_from: i64,
        #[arg(long, default_value_t = 53)]
        n_to: i64,
        #[arg(long, default_value_t = 24)]
        period_bound: u32,
    },
}

/// One catalog line of `classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub id: u32,
    pub rows: String,
    pub equation: String,
    pub points: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub candidates: usize,
    pub pruned: usize,
    pub survivors: usize,
    pub catalog: Vec<CatalogRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PicardOutput {
    pub report: PicardReport,
    pub census: Census,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub checks: Vec<CaseCheck>,
    pub mismatches: usize,
    pub untested: Vec<UntestedResidue>,
    pub seconds: f64,
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn explicit_matrix(text: &str, n: Option<i64>) -> Result<DelsarteMatrix> {
    let rows = parse_rows(text)?;
    let symbolic = rows.iter().flatten().any(|e| e.n_coeff != 0);
    let degree = match (symbolic, n) {
        (true, Some(n)) => n,
        (true, None) => return Err(Error::Precondition("--n is required for rows in n".into())),
        (false, _) => rows[0].iter().map(|e| e.offset).sum(),
    };
    if let (false, Some(n)) = (symbolic, n) {
        if n != degree {
            return Err(Error::InvalidMatrix(format!("rows have degree {degree}, not {n}")));
        }
    }
    let m = rows.map(|r| r.map(|e| e.eval(degree)));
    let degree = u32::try_from(degree).map_err(|_| Error::InvalidMatrix(format!("degree {degree}")))?;
    DelsarteMatrix::new(IntMatrix4(m), degree)
}

fn cmd_picard(
    out: &mut dyn Write,
    format: Format,
    case: Option<u32>,
    matrix: Option<String>,
    n: Option<i64>,
    max_order: u64,
) -> Result<i32> {
    let start = Instant::now();
    let a = match (case, matrix) {
        (Some(id), _) => {
            let n = n.ok_or_else(|| Error::Precondition("--n is required with --case".into()))?;
            load_table()?.case(id)?.matrix(n)?
        }
        (None, Some(m)) => explicit_matrix(&m, n)?,
        (None, None) => return Err(Error::Precondition("give --case or --matrix".into())),
    };
    let report = picard_report(&a)?;
    let census = census(&CharacterGroup::new(&a)?, max_order)?;
    let seconds = start.elapsed().as_secs_f64();
    match format {
        Format::Json => emit_json(out, &PicardOutput { report, census, seconds })?,
        Format::Text => {
            let r = &report;
            writeln!(out, "degree      {}", r.degree)?;
            writeln!(out, "#L          {}", r.order_l)?;
            writeln!(out, "#L0         {}", r.order_l0)?;
            writeln!(out, "lambda      {}", r.lefschetz)?;
            writeln!(out, "b2          {}", r.betti2)?;
            writeln!(out, "rho         {}", r.picard)?;
            writeln!(out, "h11         {}", r.hodge11)?;
            writeln!(out, "maximal     {}", if r.maximal { "yes" } else { "no" })?;
            writeln!(
                out,
                "census      D={} R={} I={}",
                census.decomposable, census.regular, census.exceptional
            )?;
            writeln!(out, "time        {seconds:.3}s")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_classify(out: &mut dyn Write, format: Format) -> Result<i32> {
    let c = classify_surfaces()?;
    let table = load_table()?;
    let matched = match_by_relabeling(&c.survivors, &table.surfaces()?)?;
    let mut catalog = Vec::with_capacity(matched.len());
    for (id, s) in &matched {
        let listed: SymbolicSurface = table.case(*id)?.surface()?;
        let points = listed.singular_points()?.iter().map(|p| p.to_string()).collect();
        catalog.push(CatalogRecord { id: *id, rows: listed.to_string(), equation: listed.equation(), points });
        debug_assert_eq!(s.canonical(), listed.canonical());
    }
    let result = ClassifyOutput {
        candidates: c.candidates,
        pruned: c.pruned,
        survivors: c.survivors.len(),
        catalog,
    };
    let ok = (result.candidates, result.pruned, result.survivors) == (2401, 90, CASE_COUNT as usize);
    match format {
        Format::Json => emit_json(out, &result)?,
        Format::Text => {
            writeln!(out, "candidates  {}", result.candidates)?;
            writeln!(out, "pruned      {}", result.pruned)?;
            writeln!(out, "survivors   {}", result.survivors)?;
            for r in &result.catalog {
                let pts = if r.points.is_empty() { "smooth".to_string() } else { r.points.join(", ") };
                writeln!(out, "{:>3}  {:<44} {pts}", r.id, r.equation)?;
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_label(out: &mut dyn Write, format: Format, vector: &str, max_order: u64) -> Result<i32> {
    let x: CharacterVector = vector.parse()?;
    let label = classify_with_bound(&x, max_order)?;
    match format {
        Format::Json => emit_json(out, &serde_json::json!({ "vector": x.to_string(), "label": label }))?,
        Format::Text => writeln!(out, "{label}")?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    out: &mut dyn Write,
    format: Format,
    n_from: i64,
    n_to: i64,
    cover_to: Option<i64>,
    cases: Vec<u32>,
    corrected: bool,
) -> Result<i32> {
    let table = load_table()?;
    let ids: Vec<u32> = if cases.is_empty() { (1..=CASE_COUNT).collect() } else { cases };
    for &id in &ids {
        table.case(id)?;
    }
    let mut pairs: Vec<(u32, i64)> = ids.iter().flat_map(|&id| (n_from..=n_to).map(move |n| (id, n))).collect();
    let mut untested = Vec::new();
    if let Some(max_n) = cover_to {
        let plan = coverage_plan(&table, (n_from, n_to), max_n)?;
        pairs.extend(plan.extra.iter().filter(|(id, _)| ids.contains(id)));
        untested = plan.untested.into_iter().filter(|u| ids.contains(&u.id)).collect();
    }
    pairs.sort_unstable();
    pairs.dedup();
    let report = verify_pairs(&table, &pairs)?;
    let failed: Vec<&CaseCheck> = report
        .checks
        .iter()
        .filter(|c| if corrected { !c.matches_corrected() } else { !c.matches() })
        .collect();
    let seconds = report.elapsed.as_secs_f64();
    match format {
        Format::Json => emit_json(
            out,
            &VerifyOutput { mismatches: failed.len(), checks: report.checks.clone(), untested, seconds },
        )?,
        Format::Text => {
            writeln!(out, "checked {} (case, n) pairs in {seconds:.2}s", report.checks.len())?;
            for c in &failed {
                write!(out, "MISMATCH {} n={} computed={} formula={}", c.id, c.n, c.computed, c.formula)?;
                match c.corrected {
                    Some(v) => writeln!(out, " corrected={v}")?,
                    None => writeln!(out)?,
                }
            }
            for u in &untested {
                writeln!(
                    out,
                    "untested case {} term {} residue {} mod {} (first n = {})",
                    u.id,
                    u.term + 1,
                    u.residue,
                    u.modulus,
                    u.first_trigger
                )?;
            }
            writeln!(out, "{} mismatches", failed.len())?;
        }
    }
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_exceptional(out: &mut dyn Write, format: Format, max_order: u64, emit: Option<PathBuf>) -> Result<i32> {
    let start = Instant::now();
    let set = build_exceptional_set(max_order)?;
    if let Some(path) = &emit {
        std::fs::write(path, set.to_text())?;
    }
    let seconds = start.elapsed().as_secs_f64();
    match format {
        Format::Json => emit_json(out, &serde_json::json!({ "max_order": max_order, "count": set.len(), "seconds": seconds }))?,
        Format::Text => {
            writeln!(out, "{} exceptional elements of order <= {max_order} ({seconds:.2}s)", set.len())?;
            if let Some(path) = emit {
                writeln!(out, "written to {}", path.display())?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_maximal(out: &mut dyn Write, format: Format, n_min: i64, n_max: i64) -> Result<i32> {
    let table = load_table()?;
    let hits: Vec<MaximalHit> = find_maximal(&table, n_min, n_max)?;
    match format {
        Format::Json => emit_json(out, &hits)?,
        Format::Text => {
            for h in &hits {
                let eq = table.get(h.id).map(|e| e.surface().map(|s| s.equation()));
                let eq = match eq {
                    Some(Ok(s)) => s,
                    _ => String::new(),
                };
                writeln!(out, "{:<9} n={:<3} rho=h11={:<4} {eq}", h.id.to_string(), h.n, h.picard)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_discover(out: &mut dyn Write, format: Format, case: u32, n_from: i64, n_to: i64, bound: u32) -> Result<i32> {
    let table = load_table()?;
    let q = discover_for_entry(table.case(case)?, n_from, n_to, bound)?;
    match format {
        Format::Json => emit_json(out, &q)?,
        Format::Text => writeln!(out, "{q}")?,
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let f = cli.format;
    match cli.command {
        Command::Picard { case, matrix, n, max_order } => cmd_picard(out, f, case, matrix, n, max_order),
        Command::Classify => cmd_classify(out, f),
        Command::Label { vector, max_order } => cmd_label(out, f, &vector, max_order),
        Command::Verify { n_from, n_to, cover_to, cases, corrected } => {
            cmd_verify(out, f, n_from, n_to, cover_to, cases, corrected)
        }
        Command::Exceptional { max_order, emit } => cmd_exceptional(out, f, max_order, emit),
        Command::Maximal { n_min, n_max } => cmd_maximal(out, f, n_min, n_max),
        Command::Discover { case, n_from, n_to, period_bound } => {
            cmd_discover(out, f, case, n_from, n_to, period_bound)
        }
    }
}

/// Parses `args`, runs the command writing to `out` and errors to `err`, and
/// returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Internal(_) => EXIT_CHECK_FAILED,
                _ => EXIT_INPUT,
            }
        }
    }
}
