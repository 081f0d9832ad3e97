//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use super::cache::{CacheKind, TableCache, CACHE_DIR_ENV};
use super::checks::{report_all, CheckResult};
use super::output::{render, CsvTable, Document, Format, WeightMap};
use super::{theorem_37_report, theorem_a_report, theorem_c_report, TheoremCReportRow};
use crate::charring::SymCharacter;
use crate::error::Error;
use crate::gzeta::{theorem_b_closed_form, theorem_b_predicate, GZetaProfile};
use crate::liechar::{
    char_lie_power, corollary_36_bound, lie_report_from, lie_tilting_decomp, stohr_pairs,
    stohr_tilting_decomp, LieDecompReport,
};
use crate::modarith::PrimeChar;
use crate::tiltchar::{tensor_power_decomp, Basis, Decomposition};

#[derive(Debug, Parser)]
#[command(
    name = "lietilt",
    version,
    about = "Tilting decompositions of tensor and Lie powers of the natural GL(2) module"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Field characteristic.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Single degree.
    #[arg(long, global = true, conflicts_with_all = ["r_min", "r_max"])]
    r: Option<u32>,
    #[arg(long, global = true)]
    r_min: Option<u32>,
    #[arg(long, global = true)]
    r_max: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tilting decomposition of E^{⊗r}.
    DecomposeTensor,
    /// Tilting decomposition of L^r(E) with a tilting verdict.
    DecomposeLie,
    /// Characteristic 2 summands D_{s,t} of L^r(E) with 2s + 3t = r.
    Stohr,
    /// Weight spaces and dimension of Gζ (requires p | r).
    Gzeta,
    /// Which T(λ) are summands of L^r(E) in characteristic 2 (r > 6).
    TheoremA,
    /// Whether T(r-1,1) is a summand of L^r(E).
    TheoremB,
    /// Odd characteristic, r = p^m or 2p^m: claimed summands with character consistency.
    TheoremC {
        /// Refused: these rows are necessary-condition checks, not certificates.
        #[arg(long)]
        certify: bool,
    },
    /// Tilting verdict for L^r(E) in characteristic 2 (r > 6).
    #[command(name = "theorem-37")]
    Theorem37,
    /// Run every reproduction check.
    ReportAll,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit status.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let result = run(&cli, stderr).and_then(|(bytes, ok)| {
        match &cli.common.out {
            None => stdout
                .write_all(&bytes)
                .map_err(|e| Failure::Usage(e.to_string()))?,
            Some(path) => std::fs::write(path, &bytes)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        }
        Ok(ok)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(stderr, "verification failure: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

impl Common {
    fn prime(&self) -> Result<PrimeChar, Failure> {
        let p = self
            .p
            .ok_or_else(|| Failure::Usage("--p is required".into()))?;
        Ok(PrimeChar::new(p)?)
    }

    fn prime_two(&self) -> Result<PrimeChar, Failure> {
        match self.p {
            None | Some(2) => Ok(PrimeChar::TWO),
            Some(p) => Err(Failure::Usage(format!(
                "this subcommand is characteristic 2 only (got --p {p})"
            ))),
        }
    }

    fn degrees(
        &self,
        default: Option<RangeInclusive<u32>>,
    ) -> Result<RangeInclusive<u32>, Failure> {
        if let Some(r) = self.r {
            return Ok(r..=r);
        }
        match (self.r_min, self.r_max, default) {
            (Some(a), Some(b), _) if a <= b => Ok(a..=b),
            (Some(a), Some(b), _) => {
                Err(Failure::Usage(format!("--r-min {a} exceeds --r-max {b}")))
            }
            (None, None, Some(d)) => Ok(d),
            (None, None, None) => Err(Failure::Usage("--r or --r-min/--r-max is required".into())),
            _ => Err(Failure::Usage(
                "--r-min and --r-max must be given together".into(),
            )),
        }
    }

    fn cache(&self) -> Option<TableCache> {
        if self.no_cache {
            return None;
        }
        self.cache_dir
            .clone()
            .or_else(TableCache::default_dir)
            .map(TableCache::new)
    }
}

fn run(cli: &Cli, stderr: &mut dyn Write) -> Result<(Vec<u8>, bool), Failure> {
    let c = &cli.common;
    let mut buf = Vec::new();
    let (docs, ok) = match &cli.command {
        Command::DecomposeTensor => {
            let p = c.prime()?;
            let decs = cached_sweep(c, CacheKind::TensorPower, p, stderr, |r| {
                tensor_power_decomp(r, p)
            })?;
            (decs.iter().map(tensor_doc).collect(), true)
        }
        Command::DecomposeLie => {
            let p = c.prime()?;
            let decs = cached_sweep(c, CacheKind::LiePower, p, stderr, |r| {
                Ok(lie_tilting_decomp(r, p)?.decomposition)
            })?;
            let mut docs = Vec::new();
            for d in decs {
                let rep = lie_report_from(char_lie_power(d.degree())?, d)?;
                docs.push(lie_doc("lie-power", &rep, LIE_PROVENANCE));
            }
            (docs, true)
        }
        Command::Stohr => {
            c.prime_two()?;
            let docs = super::sweep(c.degrees(None)?, stohr_doc)?;
            (docs.into_iter().map(|(_, d)| d).collect(), true)
        }
        Command::Gzeta => {
            let p = c.prime()?;
            let docs = super::sweep(c.degrees(None)?, |r| gzeta_doc(r as u64, p))?;
            (docs.into_iter().map(|(_, d)| d).collect(), true)
        }
        Command::TheoremA => {
            c.prime_two()?;
            let docs = super::sweep(c.degrees(None)?, theorem_a_doc)?;
            let ok = docs.iter().all(|(_, (_, certified))| *certified);
            (docs.into_iter().map(|(_, (d, _))| d).collect(), ok)
        }
        Command::TheoremB => {
            let p = c.prime()?;
            let docs = super::sweep(c.degrees(None)?, |r| theorem_b_doc(r as u64, p))?;
            let ok = docs.iter().all(|(_, (_, agrees))| *agrees);
            (docs.into_iter().map(|(_, (d, _))| d).collect(), ok)
        }
        Command::TheoremC { certify } => {
            if *certify {
                return Err(Failure::Usage(
                    "theorem C rows are character-consistency checks only and cannot be reported as certified"
                        .into(),
                ));
            }
            let p = c.prime()?;
            let docs = super::sweep(c.degrees(None)?, |r| {
                Ok(theorem_c_doc(r, p, &theorem_c_report(r, p)?))
            })?;
            let ok = docs.iter().all(|(_, (_, consistent))| *consistent);
            (docs.into_iter().map(|(_, (d, _))| d).collect(), ok)
        }
        Command::Theorem37 => {
            c.prime_two()?;
            let reps = super::sweep(c.degrees(None)?, theorem_37_report)?;
            let docs = reps
                .iter()
                .map(|(_, rep)| lie_doc("theorem-37", rep, THEOREM_37_PROVENANCE))
                .collect();
            (docs, true)
        }
        Command::ReportAll => {
            let range = c.degrees(Some(7..=24))?;
            if *range.start() <= 6 {
                return Err(Failure::Usage("report-all needs degrees above 6".into()));
            }
            let results = report_all(range);
            let ok = results.iter().all(|r| r.passed);
            render_checks(&results, ok, c.format, &mut buf)?;
            return Ok((buf, ok));
        }
    };
    render(&docs, c.format, &mut buf)?;
    Ok((buf, ok))
}

const TENSOR_PROVENANCE: &str = "tilting decomposition of E^{⊗r}; coefficients are d_λ = dim D^λ";
const LIE_PROVENANCE: &str =
    "L^r(E) in the tilting basis; a negative coefficient certifies non-tilting";
const THEOREM_37_PROVENANCE: &str = "L^r(E), p = 2: tilting exactly for odd r > 6";

/// Runs `compute` over the requested degrees, consulting and refreshing the
/// table cache. Cached entries failing the dimension check are recomputed.
fn cached_sweep(
    c: &Common,
    kind: CacheKind,
    p: PrimeChar,
    stderr: &mut dyn Write,
    compute: impl Fn(u32) -> crate::Result<Decomposition> + Sync + Send,
) -> Result<Vec<Decomposition>, Failure> {
    let range = c.degrees(None)?;
    let cache = c.cache();
    let mut table = cache.as_ref().map(|cache| cache.load(kind, p));
    let hits: Vec<Option<Decomposition>> = range
        .clone()
        .map(|r| {
            let entries = table.as_ref()?.tables.get(&r)?.clone();
            let dec = Decomposition::from_parts(Basis::Tilting, r, p, entries);
            let want = match kind {
                CacheKind::TensorPower => 1i128.checked_shl(r)?,
                CacheKind::LiePower => char_lie_power(r).ok()?.dimension(),
            };
            (dec.weighted_dimension() == want).then_some(dec)
        })
        .collect();
    let start = *range.start();
    let fresh = super::sweep(range, |r| match &hits[(r - start) as usize] {
        Some(_) => Ok(None),
        None => compute(r).map(Some),
    })?;
    let mut out = Vec::new();
    let mut dirty = false;
    for ((r, computed), hit) in fresh.into_iter().zip(hits) {
        match (computed, hit) {
            (Some(dec), _) => {
                if let Some(t) = table.as_mut() {
                    t.tables.insert(r, dec.entries().clone());
                    dirty = true;
                }
                out.push(dec);
            }
            (None, Some(dec)) => out.push(dec),
            (None, None) => unreachable!("every degree is either cached or computed"),
        }
    }
    if let (Some(cache), Some(table), true) = (cache, table, dirty) {
        if let Err(e) = cache.store(&table) {
            let _ = writeln!(stderr, "warning: {e}");
        }
    }
    Ok(out)
}

fn tensor_doc(d: &Decomposition) -> Document {
    let mut doc = Document::new(
        "tensor-power",
        d.degree() as u64,
        d.prime().get(),
        TENSOR_PROVENANCE,
    );
    doc.basis = Some(Basis::Tilting);
    doc.entries = WeightMap::from_decomposition(d);
    doc
}

fn lie_doc(kind: &'static str, rep: &LieDecompReport, provenance: &'static str) -> Document {
    let mut doc = Document::new(kind, rep.r as u64, rep.p.get(), provenance).with_extra(
        "dim",
        rep.character
            .dimension()
            .to_string()
            .parse::<Value>()
            .unwrap_or(Value::Null),
    );
    doc.basis = Some(Basis::Tilting);
    doc.entries = WeightMap::from_decomposition(&rep.decomposition);
    doc.verdict = Some(rep.verdict.name().to_string());
    doc
}

fn stohr_doc(r: u32) -> crate::Result<Document> {
    let mut total = SymCharacter::zero();
    let mut summands = Vec::new();
    let mut combined = std::collections::BTreeMap::<u32, i128>::new();
    for x in stohr_pairs(r)? {
        let dec = stohr_tilting_decomp(&x)?;
        total.add_scaled(&x.character, x.mult as i128)?;
        for (m, c) in dec.iter_desc() {
            *combined.entry(m).or_insert(0) += x.mult as i128 * c;
        }
        summands.push(json!({
            "s": x.s,
            "t": x.t,
            "mult": x.mult,
            "entries": WeightMap::from_decomposition(&dec),
        }));
    }
    let mut doc = Document::new(
        "stohr",
        r as u64,
        2,
        "summands m_{s,t} D_{s,t} of L^r(E) with 2s + 3t = r, p = 2",
    )
    .with_extra(
        "dim",
        total
            .dimension()
            .to_string()
            .parse::<Value>()
            .unwrap_or(Value::Null),
    )
    .with_extra("summands", Value::Array(summands));
    doc.basis = Some(Basis::Tilting);
    doc.entries = WeightMap(
        combined
            .into_iter()
            .rev()
            .map(|(m, c)| (m as i64, c))
            .collect(),
    );
    Ok(doc)
}

fn gzeta_doc(r: u64, p: PrimeChar) -> crate::Result<Document> {
    let prof = GZetaProfile::new(r, p)?;
    let mut doc = Document::new(
        "gzeta",
        r,
        p.get(),
        "weight spaces of Gζ from the expansion of (y)(ad(x+ty))^{r-1}",
    )
    .with_extra("coeffs", prof.coeffs.clone())
    .with_extra("dim", prof.dim)
    .with_extra("is_p_power", prof.is_p_power());
    doc.entries = WeightMap(
        (1..=r)
            .filter(|&v| prof.is_nonzero(v))
            .map(|v| (r as i64 - 2 * v as i64, 1))
            .collect(),
    );
    Ok(doc)
}

fn theorem_a_doc(r: u32) -> crate::Result<(Document, bool)> {
    let rows = theorem_a_report(r)?;
    let certified = rows.iter().all(|x| x.certified);
    let mut json_rows = Vec::new();
    let mut table = CsvTable {
        header: vec!["lambda1", "lambda2", "expected", "evidence", "certified"],
        rows: Vec::new(),
    };
    let mut entries = Vec::new();
    for row in &rows {
        let l = row.lambda;
        let bound = corollary_36_bound(l, r)?;
        json_rows.push(json!({
            "lambda": [l.first(), l.second()],
            "expected": row.expected,
            "evidence": row.evidence.name(),
            "certified": row.certified,
            "lower_bound": bound.to_string().parse::<Value>().unwrap_or(Value::Null),
        }));
        table.rows.push(vec![
            l.first().to_string(),
            l.second().to_string(),
            row.expected.to_string(),
            row.evidence.name().to_string(),
            row.certified.to_string(),
        ]);
        entries.push((l.weight() as i64, (row.expected && row.certified) as i128));
    }
    let mut doc = Document::new(
        "theorem-a",
        r as u64,
        2,
        "T(λ) | L^r(E), p = 2: zero weight space, Gζ predicate, Stöhr summand",
    )
    .with_extra("rows", Value::Array(json_rows));
    doc.entries = WeightMap(entries);
    doc.verdict = Some(
        if certified {
            "certified"
        } else {
            "uncertified"
        }
        .to_string(),
    );
    doc.table = Some(table);
    Ok((doc, certified))
}

fn theorem_b_doc(r: u64, p: PrimeChar) -> crate::Result<(Document, bool)> {
    let predicate = theorem_b_predicate(r, p)?;
    let closed = theorem_b_closed_form(r, p);
    let gzeta = if p.divides(r) {
        Value::from(GZetaProfile::new(r, p)?.dim)
    } else {
        Value::Null
    };
    let mut doc = Document::new(
        "theorem-b",
        r,
        p.get(),
        "T(r-1,1) | L^r(E) iff r = p or r is not a power of p",
    )
    .with_extra("closed_form", closed)
    .with_extra("gzeta_dim", gzeta);
    doc.verdict = Some(if predicate { "summand" } else { "not-summand" }.to_string());
    if r >= 2 {
        doc.entries = WeightMap(vec![(r as i64 - 2, predicate as i128)]);
    }
    Ok((doc, predicate == closed))
}

fn theorem_c_doc(r: u32, p: PrimeChar, rows: &[TheoremCReportRow]) -> (Document, bool) {
    let consistent = rows.iter().all(|x| !x.claimed || x.char_consistent);
    let mut table = CsvTable {
        header: vec!["lambda1", "lambda2", "claimed", "char_consistent", "clause"],
        rows: Vec::new(),
    };
    let mut json_rows = Vec::new();
    for row in rows {
        let l = row.lambda;
        json_rows.push(json!({
            "clause": row.clause.name(),
            "lambda": [l.first(), l.second()],
            "claimed": row.claimed,
            "char_consistent": row.char_consistent,
            "theorem_b": row.theorem_b,
        }));
        table.rows.push(vec![
            l.first().to_string(),
            l.second().to_string(),
            row.claimed.to_string(),
            row.char_consistent.to_string(),
            row.clause.name().to_string(),
        ]);
    }
    let mut doc = Document::new("theorem-c", r as u64, p.get(), "claimed summands, odd p, r = p^m or 2p^m; character consistency is a necessary condition only")
        .with_extra("consistency_only", true)
        .with_extra("rows", Value::Array(json_rows));
    doc.entries = WeightMap(
        rows.iter()
            .map(|x| (x.lambda.weight() as i64, x.claimed as i128))
            .collect(),
    );
    doc.verdict = Some("consistency-only".to_string());
    doc.table = Some(table);
    (doc, consistent)
}

fn render_checks(
    results: &[CheckResult],
    ok: bool,
    format: Format,
    out: &mut dyn Write,
) -> crate::Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("output error: {e}"));
    match format {
        Format::Json => {
            let v = json!({ "kind": "report-all", "passed": ok, "checks": results });
            writeln!(out, "{v}").map_err(io)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["check", "passed", "detail"])
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            for r in results {
                w.write_record([r.name, if r.passed { "true" } else { "false" }, &r.detail])
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            }
            w.flush().map_err(io)
        }
        Format::Pretty => {
            for r in results {
                writeln!(
                    out,
                    "{} {:<24} {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                )
                .map_err(io)?;
            }
            writeln!(
                out,
                "{}",
                if ok {
                    "all checks passed"
                } else {
                    "some checks failed"
                }
            )
            .map_err(io)
        }
    }
}
