//! Closed quasi-polynomial Picard formulas for the catalog surfaces, their
//! verification against direct computation, and recovery of such formulas
//! from computed samples.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::IntMatrix4;
use crate::catalog::{parse_rows, SingularPoint, SymbolicRows, SymbolicSurface, MIN_DEGREE};
use crate::character::{hodge11, picard_report, DelsarteMatrix, PicardReport};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// The shipped table.
pub const APPENDIX: &str = include_str!("../data/appendix.txt");

/// Number of catalog entries.
pub const CASE_COUNT: u32 = 83;

/// `(c1*n + c0) * [n mod modulus in residues]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaTerm {
    pub c1: i64,
    pub c0: i64,
    residues: Vec<u32>,
    raw_residues: Vec<i64>,
    modulus: u32,
}

impl DeltaTerm {
    pub fn new(c1: i64, c0: i64, residues: &[i64], modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Precondition(format!("modulus {modulus} < 2")));
        }
        if residues.is_empty() {
            return Err(Error::Precondition("empty residue set".into()));
        }
        let mut normalized: Vec<u32> =
            residues.iter().map(|r| r.rem_euclid(modulus as i64) as u32).collect();
        normalized.sort_unstable();
        let len = normalized.len();
        normalized.dedup();
        if normalized.len() != len {
            return Err(Error::Precondition(format!("repeated residue mod {modulus}")));
        }
        Ok(DeltaTerm { c1, c0, residues: normalized, raw_residues: residues.to_vec(), modulus })
    }

    /// Residues in `[0, modulus)`, ascending.
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    /// Residues as written in the source text.
    pub fn raw_residues(&self) -> &[i64] {
        &self.raw_residues
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn applies(&self, n: i64) -> bool {
        let r = n.rem_euclid(self.modulus as i64) as u32;
        self.residues.binary_search(&r).is_ok()
    }

    pub fn value(&self, n: i64) -> i64 {
        if self.applies(n) {
            self.c1 * n + self.c0
        } else {
            0
        }
    }

    /// Smallest `n >= from` hitting `residue`.
    pub fn first_trigger(&self, residue: u32, from: i64) -> i64 {
        let j = self.modulus as i64;
        from + (residue as i64 - from).rem_euclid(j)
    }
}

impl fmt::Display for DeltaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = IntPoly::linear(self.c1, self.c0);
        let set = if self.residues.len() == 1 {
            self.residues[0].to_string()
        } else {
            let r: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
            format!("{{{}}}", r.join(","))
        };
        match (self.c1, self.c0) {
            (0, 1) => write!(f, "d[{set} mod {}]", self.modulus),
            (0, _) => write!(f, "{c}*d[{set} mod {}]", self.modulus),
            _ => write!(f, "({c})*d[{set} mod {}]", self.modulus),
        }
    }
}

/// A polynomial in `n` plus residue-class corrections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomial {
    pub base: IntPoly,
    pub terms: Vec<DeltaTerm>,
}

impl QuasiPolynomial {
    pub fn evaluate(&self, n: i64) -> i64 {
        let v = self.base.eval(n) + self.terms.iter().map(|t| t.value(n) as i128).sum::<i128>();
        i64::try_from(v).expect("formula value fits in i64")
    }

    /// Least common multiple of the moduli.
    pub fn period(&self) -> u64 {
        self.terms.iter().fold(1u64, |p, t| num_integer::lcm(p, t.modulus as u64))
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for t in &self.terms {
            let s = t.to_string();
            match s.strip_prefix('-') {
                Some(rest) => write!(f, " - {rest}")?,
                None => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntryId {
    Case(u32),
    Extra(u32),
}

impl fmt::Display for EntryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntryId::Case(i) => write!(f, "case {i}"),
            EntryId::Extra(i) => write!(f, "extra {i}"),
        }
    }
}

/// One record of the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub id: EntryId,
    pub rows: SymbolicRows,
    /// Fixed degree, for entries outside the uniform catalog.
    pub degree: Option<u32>,
    pub points: Vec<SingularPoint>,
    pub smooth: bool,
    pub formula: QuasiPolynomial,
    /// Replacements for printed delta terms, by 1-based position.
    pub errata: Vec<(usize, DeltaTerm)>,
    pub notes: Vec<String>,
}

impl TableEntry {
    pub fn surface(&self) -> Result<SymbolicSurface> {
        SymbolicSurface::new(self.rows)
    }

    /// Degrees at which the entry is meaningful: `n >= min_degree` for
    /// catalog cases, only the fixed degree for extras.
    pub fn admits(&self, n: i64) -> bool {
        match self.degree {
            Some(d) => n == d as i64,
            None => n >= 5,
        }
    }

    pub fn matrix(&self, n: i64) -> Result<DelsarteMatrix> {
        if !self.admits(n) {
            return Err(Error::Precondition(format!("{} is not defined at degree {n}", self.id)));
        }
        let m = self.rows.map(|r| r.map(|e| e.eval(n)));
        let degree = u32::try_from(n).map_err(|_| Error::TooLarge(n.to_string()))?;
        DelsarteMatrix::new(IntMatrix4(m), degree)
    }

    /// The formula with every erratum applied.
    pub fn corrected_formula(&self) -> QuasiPolynomial {
        let mut q = self.formula.clone();
        for (i, t) in &self.errata {
            q.terms[i - 1] = t.clone();
        }
        q
    }

    pub fn compute(&self, n: i64) -> Result<PicardReport> {
        picard_report(&self.matrix(n)?)
    }
}

/// The parsed table, keeping its header comment for faithful output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaTable {
    pub header: Vec<String>,
    pub entries: Vec<TableEntry>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => perr(line, other.to_string()),
    }
}

fn parse_int_list(s: &str, line: usize) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| perr(line, format!("bad integer '{}'", t.trim()))))
        .collect()
}

fn parse_delta(s: &str, line: usize) -> Result<DeltaTerm> {
    let parts: Vec<&str> = s.split('|').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(perr(line, "delta needs 'c1,c0 | residues | modulus'"));
    }
    let c = parse_int_list(parts[0], line)?;
    if c.len() != 2 {
        return Err(perr(line, "delta coefficient needs two integers"));
    }
    let residues = parse_int_list(parts[1], line)?;
    let modulus: u32 = parts[2].parse().map_err(|_| perr(line, format!("bad modulus '{}'", parts[2])))?;
    DeltaTerm::new(c[0], c[1], &residues, modulus).map_err(at_line(line))
}

fn join_ints<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl FormulaTable {
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = Vec::new();
        let mut entries: Vec<TableEntry> = Vec::new();
        let mut current: Option<(TableEntry, usize)> = None;
        let mut seen: HashMap<EntryId, usize> = HashMap::new();
        let mut has_rows = false;
        let mut has_base = false;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim_end();
            if current.is_none() {
                if l.is_empty() {
                    continue;
                }
                if l.starts_with('#') {
                    if !entries.is_empty() {
                        return Err(perr(line, "comments are only allowed before the first record"));
                    }
                    header.push(l.to_string());
                    continue;
                }
                let (kw, rest) = l.split_once(' ').ok_or_else(|| perr(line, format!("expected a record, got '{l}'")))?;
                let num: u32 = rest.trim().parse().map_err(|_| perr(line, format!("bad id '{rest}'")))?;
                let id = match kw {
                    "case" if (1..=CASE_COUNT).contains(&num) => EntryId::Case(num),
                    "case" => return Err(perr(line, format!("unknown case id {num}"))),
                    "extra" => EntryId::Extra(num),
                    _ => return Err(perr(line, format!("expected 'case' or 'extra', got '{kw}'"))),
                };
                if let Some(prev) = seen.insert(id, line) {
                    return Err(perr(line, format!("{id} already defined on line {prev}")));
                }
                current = Some((
                    TableEntry {
                        id,
                        rows: [[Default::default(); 4]; 4],
                        degree: None,
                        points: Vec::new(),
                        smooth: false,
                        formula: QuasiPolynomial::default(),
                        errata: Vec::new(),
                        notes: Vec::new(),
                    },
                    line,
                ));
                has_rows = false;
                has_base = false;
                continue;
            }
            let (entry, start) = current.as_mut().unwrap();
            let (kw, rest) = match l.split_once(' ') {
                Some((k, r)) => (k, r.trim()),
                None => (l, ""),
            };
            match kw {
                "rows" => {
                    entry.rows = parse_rows(rest).map_err(at_line(line))?;
                    has_rows = true;
                }
                "degree" => {
                    entry.degree = Some(rest.parse().map_err(|_| perr(line, format!("bad degree '{rest}'")))?);
                }
                "point" => entry.points.push(rest.parse().map_err(at_line(line))?),
                "smooth" if rest.is_empty() => entry.smooth = true,
                "base" => {
                    entry.formula.base = IntPoly::new(parse_int_list(rest, line)?);
                    has_base = true;
                }
                "delta" => entry.formula.terms.push(parse_delta(rest, line)?),
                "erratum" => {
                    let (pos, term) = rest.split_once(' ').ok_or_else(|| perr(line, "erratum needs a position and a term"))?;
                    let pos: usize = pos.parse().map_err(|_| perr(line, format!("bad position '{pos}'")))?;
                    if pos == 0 || pos > entry.formula.terms.len() {
                        return Err(perr(line, format!("erratum refers to missing delta {pos}")));
                    }
                    entry.errata.push((pos, parse_delta(term, line)?));
                }
                "note" => entry.notes.push(rest.to_string()),
                "end" if rest.is_empty() => {
                    if !has_rows || !has_base {
                        return Err(perr(*start, format!("{} lacks rows or base", entry.id)));
                    }
                    if entry.smooth && !entry.points.is_empty() {
                        return Err(perr(*start, format!("{} is smooth but lists points", entry.id)));
                    }
                    if matches!(entry.id, EntryId::Extra(_)) != entry.degree.is_some() {
                        return Err(perr(*start, "extra entries need a degree, cases must not have one"));
                    }
                    entries.push(current.take().unwrap().0);
                }
                _ => return Err(perr(line, format!("unexpected line '{l}'"))),
            }
        }
        if let Some((e, start)) = current {
            return Err(perr(start, format!("{} is not terminated by 'end'", e.id)));
        }
        Ok(FormulaTable { header, entries })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str(h);
            out.push('\n');
        }
        for e in &self.entries {
            if !out.is_empty() {
                out.push('\n');
            }
            match e.id {
                EntryId::Case(i) => out.push_str(&format!("case {i}\n")),
                EntryId::Extra(i) => out.push_str(&format!("extra {i}\n")),
            }
            if let Some(d) = e.degree {
                out.push_str(&format!("degree {d}\n"));
            }
            let rows: Vec<String> = e.rows.iter().map(|r| join_ints(r)).collect();
            out.push_str(&format!("rows {}\n", rows.join("; ")));
            for p in &e.points {
                out.push_str(&format!("point {p}\n"));
            }
            if e.smooth {
                out.push_str("smooth\n");
            }
            out.push_str(&format!("base {}\n", join_ints(e.formula.base.coeffs())));
            for t in &e.formula.terms {
                out.push_str(&format!(
                    "delta {},{} | {} | {}\n",
                    t.c1,
                    t.c0,
                    join_ints(t.raw_residues()),
                    t.modulus()
                ));
            }
            for (i, t) in &e.errata {
                out.push_str(&format!(
                    "erratum {i} {},{} | {} | {}\n",
                    t.c1,
                    t.c0,
                    join_ints(t.raw_residues()),
                    t.modulus()
                ));
            }
            for n in &e.notes {
                out.push_str(&format!("note {n}\n"));
            }
            out.push_str("end\n");
        }
        out
    }

    pub fn get(&self, id: EntryId) -> Option<&TableEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn case(&self, id: u32) -> Result<&TableEntry> {
        self.get(EntryId::Case(id)).ok_or(Error::UnknownCase(id))
    }

    pub fn cases(&self) -> impl Iterator<Item = &TableEntry> {
        self.entries.iter().filter(|e| matches!(e.id, EntryId::Case(_)))
    }

    pub fn extras(&self) -> impl Iterator<Item = &TableEntry> {
        self.entries.iter().filter(|e| matches!(e.id, EntryId::Extra(_)))
    }

    /// Catalog surfaces keyed by case id.
    pub fn surfaces(&self) -> Result<Vec<(u32, SymbolicSurface)>> {
        self.cases()
            .map(|e| match e.id {
                EntryId::Case(i) => Ok((i, e.surface()?)),
                EntryId::Extra(_) => unreachable!(),
            })
            .collect()
    }
}

/// The shipped table, checked to hold all catalog cases.
pub fn load_table() -> Result<FormulaTable> {
    let t = FormulaTable::parse(APPENDIX)?;
    let n = t.cases().count();
    if n != CASE_COUNT as usize {
        return Err(Error::Internal(format!("table holds {n} cases, expected {CASE_COUNT}")));
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCheck {
    pub id: EntryId,
    pub n: i64,
    pub lefschetz: u64,
    pub betti2: i64,
    pub computed: i64,
    pub formula: i64,
    /// Value of the corrected formula, for entries with errata.
    pub corrected: Option<i64>,
}

impl CaseCheck {
    pub fn matches(&self) -> bool {
        self.computed == self.formula
    }

    pub fn matches_corrected(&self) -> bool {
        self.computed == self.corrected.unwrap_or(self.formula)
    }
}

pub fn verify_entry(entry: &TableEntry, n: i64) -> Result<CaseCheck> {
    let r = entry.compute(n)?;
    Ok(CaseCheck {
        id: entry.id,
        n,
        lefschetz: r.lefschetz,
        betti2: r.betti2,
        computed: r.picard,
        formula: entry.formula.evaluate(n),
        corrected: (!entry.errata.is_empty()).then(|| entry.corrected_formula().evaluate(n)),
    })
}

pub fn verify_case(table: &FormulaTable, id: u32, n: i64) -> Result<CaseCheck> {
    if n < MIN_DEGREE {
        return Err(Error::Precondition(format!("degree {n} < {MIN_DEGREE}")));
    }
    verify_entry(table.case(id)?, n)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CaseCheck>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CaseCheck> {
        self.checks.iter().filter(|c| !c.matches())
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().next().is_none()
    }
}

/// Checks every `(case, n)` pair in parallel; the report keeps input order.
pub fn verify_pairs(table: &FormulaTable, pairs: &[(u32, i64)]) -> Result<VerificationReport> {
    let start = Instant::now();
    let checks = pairs
        .par_iter()
        .map(|&(id, n)| verify_case(table, id, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport { checks, elapsed: start.elapsed() })
}

/// All cases at every degree in `n_from..=n_to`.
pub fn verify_all(table: &FormulaTable, n_from: i64, n_to: i64) -> Result<VerificationReport> {
    let pairs: Vec<(u32, i64)> =
        (1..=CASE_COUNT).flat_map(|id| (n_from..=n_to).map(move |n| (id, n))).collect();
    verify_pairs(table, &pairs)
}

/// A residue of a delta term that the coverage plan cannot reach.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UntestedResidue {
    pub id: u32,
    pub term: usize,
    pub residue: u32,
    pub modulus: u32,
    pub first_trigger: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveragePlan {
    /// Degrees outside the window needed to trigger every reachable residue.
    pub extra: Vec<(u32, i64)>,
    pub untested: Vec<UntestedResidue>,
}

/// For each residue of each delta term, its first trigger `n >= 6`; those in
/// `window` are covered by the window run, those up to `max_n` are added to
/// the plan, the rest are reported untested.
pub fn coverage_plan(table: &FormulaTable, window: (i64, i64), max_n: i64) -> Result<CoveragePlan> {
    let mut extra = std::collections::BTreeSet::new();
    let mut untested = Vec::new();
    for e in table.cases() {
        let EntryId::Case(id) = e.id else { unreachable!() };
        for (ti, t) in e.formula.terms.iter().enumerate() {
            for &r in t.residues() {
                let n = t.first_trigger(r, MIN_DEGREE);
                if (window.0..=window.1).contains(&n) {
                    continue;
                }
                if n <= max_n {
                    extra.insert((id, n));
                } else {
                    untested.push(UntestedResidue {
                        id,
                        term: ti,
                        residue: r,
                        modulus: t.modulus(),
                        first_trigger: n,
                    });
                }
            }
        }
    }
    Ok(CoveragePlan { extra: extra.into_iter().collect(), untested })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalHit {
    pub id: EntryId,
    pub n: i64,
    pub picard: i64,
    pub hodge11: i64,
}

/// Every entry and degree in `n_from..=n_to` whose directly computed Picard
/// number equals `h^{1,1}`. Degrees where an entry's exponent matrix is
/// singular are skipped.
pub fn find_maximal(table: &FormulaTable, n_from: i64, n_to: i64) -> Result<Vec<MaximalHit>> {
    if n_from < 5 {
        return Err(Error::Precondition(format!("search must start at degree >= 5, got {n_from}")));
    }
    let jobs: Vec<(&TableEntry, i64)> = table
        .entries
        .iter()
        .flat_map(|e| (n_from..=n_to).filter(|&n| e.admits(n)).map(move |n| (e, n)))
        .collect();
    let found = jobs
        .par_iter()
        .map(|&(e, n)| match e.compute(n) {
            Ok(r) => Ok((r.picard == r.hodge11).then_some(MaximalHit {
                id: e.id,
                n,
                picard: r.picard,
                hodge11: r.hodge11,
            })),
            Err(Error::SingularMatrix) => Ok(None),
            Err(err) => Err(err),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut hits: Vec<MaximalHit> = found.into_iter().flatten().collect();
    hits.sort_by_key(|h| (h.n, h.id));
    debug_assert!(hits.iter().all(|h| h.hodge11 == hodge11(h.n)));
    Ok(hits)
}

type Q = Ratio<i128>;

/// Integer polynomial of degree at most `degree` through all points, if any.
fn fit_polynomial(points: &[(i64, i64)], degree: usize) -> Option<IntPoly> {
    let k = degree + 1;
    if points.len() < k {
        return None;
    }
    let mut m: Vec<Vec<Q>> = points[..k]
        .iter()
        .map(|&(x, y)| {
            let mut row: Vec<Q> = (0..k).map(|j| Q::from_integer((x as i128).pow(j as u32))).collect();
            row.push(Q::from_integer(y as i128));
            row
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=k {
                    let d = m[col][c] * f;
                    m[r][c] -= d;
                }
            }
        }
    }
    let mut coeffs = Vec::with_capacity(k);
    for row in &m {
        let c = row[k];
        if !c.denom().is_one() {
            return None;
        }
        coeffs.push(i64::try_from(*c.numer()).ok()?);
    }
    let p = IntPoly::new(coeffs);
    points.iter().all(|&(x, y)| p.eval(x) == y as i128).then_some(p)
}

fn divisors(p: u32) -> Vec<u32> {
    (2..=p).filter(|m| p % m == 0).collect()
}

fn build_from_classes(period: u32, fits: &[IntPoly]) -> Option<QuasiPolynomial> {
    let mut tally: Vec<(&IntPoly, usize)> = Vec::new();
    for f in fits {
        match tally.iter_mut().find(|(g, _)| *g == f) {
            Some((_, c)) => *c += 1,
            None => tally.push((f, 1)),
        }
    }
    let mut best = 0;
    for i in 1..tally.len() {
        if tally[i].1 > tally[best].1 {
            best = i;
        }
    }
    let base = tally[best].0.clone();
    let mut rem: Vec<(i64, i64)> = Vec::with_capacity(fits.len());
    for f in fits {
        let d = f - &base;
        if d.degree().unwrap_or(0) > 1 {
            return None;
        }
        rem.push((d.coeff(1), d.coeff(0)));
    }
    let mut raw: Vec<(u32, u32, (i64, i64))> = Vec::new();
    for m in divisors(period) {
        for s in 0..m {
            let members: Vec<usize> = (s..period).step_by(m as usize).map(|r| r as usize).collect();
            let mut counts: BTreeMap<(i64, i64), usize> = BTreeMap::new();
            for &r in &members {
                if rem[r] != (0, 0) {
                    *counts.entry(rem[r]).or_default() += 1;
                }
            }
            if let Some((&v, _)) = counts.iter().find(|(_, &c)| 2 * c > members.len()) {
                raw.push((m, s, v));
                for &r in &members {
                    rem[r] = (rem[r].0 - v.0, rem[r].1 - v.1);
                }
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == (0, 0)));
    let mut grouped: BTreeMap<(u32, (i64, i64)), Vec<i64>> = BTreeMap::new();
    for (m, s, v) in raw {
        grouped.entry((m, v)).or_default().push(s as i64);
    }
    let mut terms: Vec<DeltaTerm> = grouped
        .into_iter()
        .map(|((m, (c1, c0)), res)| DeltaTerm::new(c1, c0, &res, m).expect("valid term"))
        .collect();
    terms.sort_by_key(|t| (t.modulus(), t.residues()[0]));
    Some(QuasiPolynomial { base, terms })
}

/// Recovers a quasi-polynomial from samples `(n, value)`.
///
/// Tries periods `P = 1, 2, ...` up to `period_bound`. A period fits when
/// every residue class mod `P` has at least `max_degree + 2` samples lying on
/// one integer polynomial of degree at most `max_degree`. The most common
/// class polynomial becomes the base; the deviations are split into delta
/// terms, coarsest modulus first, taking a correction for a residue class
/// mod `m` whenever a strict majority of its subclasses share it.
pub fn discover_formula(samples: &[(i64, i64)], period_bound: u32, max_degree: usize) -> Result<QuasiPolynomial> {
    let need = max_degree + 2;
    if samples.len() < need {
        return Err(Error::Precondition(format!(
            "{} samples cannot determine a polynomial of degree {max_degree}",
            samples.len()
        )));
    }
    let mut failing = Vec::new();
    let mut tried = 0;
    for p in 1..=period_bound.max(1) {
        let mut classes: Vec<Vec<(i64, i64)>> = vec![Vec::new(); p as usize];
        for &(n, v) in samples {
            classes[n.rem_euclid(p as i64) as usize].push((n, v));
        }
        if classes.iter().any(|c| c.len() < need) {
            break;
        }
        tried = p;
        let fits: Vec<Option<IntPoly>> = classes.iter().map(|c| fit_polynomial(c, max_degree)).collect();
        failing = (0..p).filter(|&r| fits[r as usize].is_none()).collect();
        if !failing.is_empty() {
            continue;
        }
        let fits: Vec<IntPoly> = fits.into_iter().map(Option::unwrap).collect();
        if let Some(q) = build_from_classes(p, &fits) {
            debug_assert!(samples.iter().all(|&(n, v)| q.evaluate(n) == v));
            return Ok(q);
        }
        failing = (0..p).collect();
    }
    Err(Error::NoPeriod { bound: tried, classes: failing })
}

/// Samples the directly computed Picard number of an entry on `n_from..=n_to`
/// and recovers a formula from them.
pub fn discover_for_entry(entry: &TableEntry, n_from: i64, n_to: i64, period_bound: u32) -> Result<QuasiPolynomial> {
    let samples = (n_from..=n_to)
        .into_par_iter()
        .map(|n| entry.compute(n).map(|r| (n, r.picard)))
        .collect::<Result<Vec<_>>>()?;
    discover_formula(&samples, period_bound, 2)
}
