//! Command-line surface. `run` returns the process exit code so tests can drive it in-process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use wallach_core::arith::{parse_rational, BigRational};
use wallach_core::catalog::{get_case, CaseId, CatalogError};
use wallach_core::classifier::{report_table, TableRow};
use wallach_core::ricci::{build_einstein_system, derive_triples};

use crate::cache::{self, Cache};
use crate::format::{export_case, export_catalog, triples_json, SolveDoc};
use crate::pipeline::{run_case, solve_doc, solutions_table, PathChoice, RunError, RunOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "wallach", version, about = "Einstein metrics on generalized Wallach decompositions of exceptional groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the structure-coefficient triples of a case.
    Derive {
        case: String,
        #[arg(long)]
        json: bool,
    },
    /// Print the polynomial Einstein system of a case.
    System { case: String },
    /// Solve one case.
    Solve {
        case: String,
        #[command(flatten)]
        flags: SolveFlags,
    },
    /// Reproduce the summary table over all cases.
    Report {
        #[command(flatten)]
        flags: SolveFlags,
        /// Exit 4 when a computed count differs from the expected table.
        #[arg(long)]
        check: bool,
    },
    /// Write catalog data as JSON.
    Export {
        /// Case name, or `catalog` for every case.
        what: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SolveFlags {
    /// Run the exact elimination path.
    #[arg(long)]
    pub exact: bool,
    /// Run the multi-start numeric path.
    #[arg(long)]
    pub numeric: bool,
    /// Exact path only; exit 3 when it runs out of budget.
    #[arg(long)]
    pub exact_only: bool,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Width of reported root intervals, as `1e-12`, `1/1000` or `0.001`.
    #[arg(long)]
    pub eps: Option<String>,
    /// Reduction-step budget of the exact path.
    #[arg(long)]
    pub budget_steps: Option<u64>,
    /// Numeric starts.
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub json: bool,
    /// Directory for result files and the run manifest.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Ignore cached results.
    #[arg(long)]
    pub no_cache: bool,
    #[arg(long, short)]
    pub verbose: bool,
}

/// `1e-12`, `0.001`, `1/1000` and plain integers, all read exactly.
pub fn parse_exact_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Ok(q) = parse_rational(s) {
        return Some(q);
    }
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() || !(ip.bytes().chain(fp.bytes()).all(|c| c.is_ascii_digit())) {
        return None;
    }
    let digits = format!("{}{}{}", if neg { "-" } else { "" }, if ip.is_empty() { "0" } else { ip }, fp);
    let mut q = parse_rational(&digits).ok()?;
    let shift = exp - fp.len() as i32;
    let ten = parse_rational(&format!("1{}", "0".repeat(shift.unsigned_abs() as usize))).ok()?;
    if shift >= 0 {
        q *= ten;
    } else {
        q /= ten;
    }
    Some(q)
}

impl SolveFlags {
    pub fn options(&self) -> Result<RunOptions, String> {
        let choice = match (self.exact || self.exact_only, self.numeric) {
            (true, true) => PathChoice::Both,
            (true, false) => PathChoice::Exact,
            (false, true) => PathChoice::Numeric,
            (false, false) => PathChoice::Auto,
        };
        let mut o = RunOptions { choice, ..RunOptions::default() };
        if self.exact_only && self.numeric {
            return Err("--exact-only excludes --numeric".into());
        }
        o.exact_only = self.exact_only;
        o.cfg.seed = self.seed;
        if let Some(e) = &self.eps {
            let q = parse_exact_decimal(e).ok_or_else(|| format!("bad --eps value {e:?}"))?;
            if q <= BigRational::from_integer(0.into()) {
                return Err("--eps must be positive".into());
            }
            o.cfg.eps = q;
        }
        if let Some(b) = self.budget_steps {
            o.cfg.groebner.max_steps = b;
        }
        if let Some(s) = self.starts {
            o.cfg.starts = s;
        }
        o.jobs = self.jobs.max(1);
        o.verbose = self.verbose;
        Ok(o)
    }
}

/// Written next to the per-case results under `--out`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config: String,
    pub cases: Vec<ManifestEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ManifestEntry {
    pub case: String,
    pub seconds: f64,
    pub cached: bool,
    pub output: Option<String>,
}

struct Outputs<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! say {
    ($w:expr, $($t:tt)*) => { let _ = writeln!($w, $($t)*); };
}

fn computable(name: &str, err: &mut dyn Write) -> Result<CaseId, i32> {
    let id: CaseId = match name.parse() {
        Ok(id) => id,
        Err(e) => {
            say!(err, "error: {e}");
            return Err(EXIT_USAGE);
        }
    };
    match get_case(id) {
        Ok(_) => Ok(id),
        Err(e @ CatalogError::ReportedOnly(_)) | Err(e @ CatalogError::UnknownCase(_)) => {
            say!(err, "error: {e}");
            Err(EXIT_USAGE)
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut io = Outputs { out, err };
    match cli.command {
        Command::Derive { case, json } => cmd_derive(&case, json, &mut io),
        Command::System { case } => cmd_system(&case, &mut io),
        Command::Solve { case, flags } => cmd_solve(&case, &flags, &mut io),
        Command::Report { flags, check } => cmd_report(&flags, check, &mut io),
        Command::Export { what, out } => cmd_export(&what, out.as_deref(), &mut io),
    }
}

fn cmd_derive(name: &str, json: bool, io: &mut Outputs) -> i32 {
    let id = match computable(name, io.err) {
        Ok(id) => id,
        Err(c) => return c,
    };
    let case = get_case(id).expect("computable");
    let t = match derive_triples(&case) {
        Ok(t) => t,
        Err(e) => {
            say!(io.err, "error: {e:?}");
            return EXIT_MISMATCH;
        }
    };
    if json {
        let _ = write!(io.out, "{}", triples_json(&t));
    } else {
        for (k, v) in t.to_text_map() {
            say!(io.out, "{k}={v}");
        }
    }
    EXIT_OK
}

fn cmd_system(name: &str, io: &mut Outputs) -> i32 {
    let id = match computable(name, io.err) {
        Ok(id) => id,
        Err(c) => return c,
    };
    let case = get_case(id).expect("computable");
    let t = match derive_triples(&case) {
        Ok(t) => t,
        Err(e) => {
            say!(io.err, "error: {e:?}");
            return EXIT_MISMATCH;
        }
    };
    let sys = build_einstein_system(&case, &t);
    say!(io.out, "variables: {}", sys.vars.join(", "));
    for (k, p) in sys.polys.iter().enumerate() {
        say!(io.out, "g{} = {}", k + 1, p);
    }
    for (a, b) in &sys.identities {
        say!(io.out, "identity: r{a} = r{b}");
    }
    EXIT_OK
}

fn write_file(path: &Path, text: &str) -> std::io::Result<()> {
    if let Some(d) = path.parent() {
        if !d.as_os_str().is_empty() {
            fs::create_dir_all(d)?;
        }
    }
    fs::write(path, text)
}

fn doc_text(doc: &SolveDoc) -> String {
    serde_json::to_string_pretty(doc).expect("serializable") + "\n"
}

struct Solved {
    id: CaseId,
    doc: SolveDoc,
    table: Option<String>,
    seconds: f64,
    cached: bool,
}

/// Cached result for `opts`, or a fresh run stored back into the cache.
fn solve_one(id: CaseId, opts: &RunOptions, use_cache: bool) -> Result<Solved, RunError> {
    let t0 = Instant::now();
    let store = Cache::from_env();
    let key = cache::key(id, &opts.signature());
    if use_cache {
        if let Some(doc) = store.load(id, &key) {
            return Ok(Solved { id, doc, table: None, seconds: t0.elapsed().as_secs_f64(), cached: true });
        }
    }
    let run = run_case(id, opts)?;
    let doc = solve_doc(&run);
    // A read-only cache directory only costs a rerun next time.
    let _ = store.store(id, &key, &doc);
    Ok(Solved { id, doc, table: Some(solutions_table(&run)), seconds: t0.elapsed().as_secs_f64(), cached: false })
}

fn error_code(e: &RunError) -> i32 {
    match e {
        RunError::Budget(_) => EXIT_BUDGET,
        RunError::Catalog(_) => EXIT_USAGE,
        _ => EXIT_MISMATCH,
    }
}

fn write_outputs(dir: &Path, opts: &RunOptions, solved: &[Solved], io: &mut Outputs) -> bool {
    let mut cases = Vec::new();
    for s in solved {
        let path = dir.join(format!("{}.json", s.id.name()));
        if let Err(e) = write_file(&path, &doc_text(&s.doc)) {
            say!(io.err, "error: writing {}: {e}", path.display());
            return false;
        }
        cases.push(ManifestEntry {
            case: s.id.name().into(),
            seconds: s.seconds,
            cached: s.cached,
            output: Some(path.display().to_string()),
        });
    }
    let manifest = RunManifest {
        tool: "wallach".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: opts.signature(),
        cases,
    };
    let text = serde_json::to_string_pretty(&manifest).expect("serializable") + "\n";
    if let Err(e) = write_file(&dir.join("manifest.json"), &text) {
        say!(io.err, "error: writing manifest: {e}");
        return false;
    }
    true
}

fn table_from_doc(doc: &SolveDoc) -> String {
    let mut s = format!("{} (normalized by {})\n", doc.case, doc.normalization);
    for (k, sol) in doc.solutions.iter().enumerate() {
        let xs: Vec<&str> = sol.coords.iter().map(|c| c.exact.as_deref().unwrap_or(&c.decimal)).collect();
        s.push_str(&format!("{:>3}  {}  {}  {}\n", k + 1, xs.join("  "), sol.source, sol.verdict));
    }
    s.push_str(&format!("non-naturally reductive: {}\n", doc.non_naturally_reductive));
    s
}

fn cmd_solve(name: &str, flags: &SolveFlags, io: &mut Outputs) -> i32 {
    let id = match computable(name, io.err) {
        Ok(id) => id,
        Err(c) => return c,
    };
    let opts = match flags.options() {
        Ok(o) => o,
        Err(e) => {
            say!(io.err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let solved = match solve_one(id, &opts, !flags.no_cache) {
        Ok(s) => s,
        Err(e) => {
            say!(io.err, "error: {id}: {e}");
            return error_code(&e);
        }
    };
    if flags.json {
        let _ = write!(io.out, "{}", doc_text(&solved.doc));
    } else {
        let table = solved.table.clone().unwrap_or_else(|| table_from_doc(&solved.doc));
        let _ = write!(io.out, "{table}");
    }
    if let Some(dir) = &flags.out {
        if !write_outputs(dir, &opts, std::slice::from_ref(&solved), io) {
            return EXIT_MISMATCH;
        }
    }
    let bad: Vec<usize> = solved
        .doc
        .solutions
        .iter()
        .enumerate()
        // NaN residuals are flagged too
        .filter(|(_, s)| s.residual.is_nan() || s.residual > opts.cfg.residual_bound)
        .map(|(k, _)| k + 1)
        .collect();
    if !bad.is_empty() {
        say!(io.err, "error: residual bound {:e} violated by solutions {bad:?}", opts.cfg.residual_bound);
        return EXIT_MISMATCH;
    }
    EXIT_OK
}

#[derive(Serialize)]
struct RowDoc<'a> {
    case: &'a str,
    k: &'a str,
    p_plus_q: &'a str,
    non_naturally_reductive: usize,
    expected: usize,
    reported_only: bool,
}

pub fn render_table(rows: &[TableRow]) -> String {
    let mut s = format!("{:<7} {:<26} {:<8} {:>9}\n", "case", "K", "p+q", "N_non-nr");
    for r in rows {
        let mark = if r.reported_only { " (reported)" } else { "" };
        s.push_str(&format!("{:<7} {:<26} {:<8} {:>9}{mark}\n", r.case.name(), r.k_label, r.p_plus_q, r.count));
    }
    s
}

fn cmd_report(flags: &SolveFlags, check: bool, io: &mut Outputs) -> i32 {
    let opts = match flags.options() {
        Ok(o) => o,
        Err(e) => {
            say!(io.err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut inner = opts.clone();
    inner.jobs = 1;
    let work = || {
        CaseId::COMPUTABLE.par_iter().map(|&id| (id, solve_one(id, &inner, !flags.no_cache))).collect::<Vec<_>>()
    };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    let mut solved = Vec::new();
    let mut worst = EXIT_OK;
    for (id, r) in results {
        match r {
            Ok(s) => solved.push(s),
            Err(e) => {
                say!(io.err, "error: {id}: {e}");
                worst = worst.max(error_code(&e));
            }
        }
    }
    if worst != EXIT_OK {
        return worst;
    }
    let counts: Vec<(CaseId, usize)> = solved.iter().map(|s| (s.id, s.doc.non_naturally_reductive)).collect();
    let rows = match report_table(&counts) {
        Ok(r) => r,
        Err(e) => {
            say!(io.err, "error: {e}");
            return EXIT_MISMATCH;
        }
    };
    if flags.json {
        let docs: Vec<RowDoc> = rows
            .iter()
            .map(|r| RowDoc {
                case: r.case.name(),
                k: &r.k_label,
                p_plus_q: &r.p_plus_q,
                non_naturally_reductive: r.count,
                expected: r.case.table_count(),
                reported_only: r.reported_only,
            })
            .collect();
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&docs).expect("serializable"));
    } else {
        let _ = write!(io.out, "{}", render_table(&rows));
        for s in &solved {
            if let Some(f) = &s.doc.fallback {
                say!(io.out, "note: {}: {f}", s.id);
            }
        }
    }
    if let Some(dir) = &flags.out {
        if !write_outputs(dir, &opts, &solved, io) {
            return EXIT_MISMATCH;
        }
    }
    if check {
        let wrong: Vec<String> = rows
            .iter()
            .filter(|r| r.count != r.case.table_count())
            .map(|r| format!("{} got {} expected {}", r.case, r.count, r.case.table_count()))
            .collect();
        if !wrong.is_empty() {
            say!(io.err, "check failed: {}", wrong.join("; "));
            return EXIT_MISMATCH;
        }
        say!(io.err, "check passed");
    }
    EXIT_OK
}

fn cmd_export(what: &str, out: Option<&Path>, io: &mut Outputs) -> i32 {
    let text = if what.eq_ignore_ascii_case("catalog") {
        export_catalog()
    } else {
        let id = match computable(what, io.err) {
            Ok(id) => id,
            Err(c) => return c,
        };
        export_case(&get_case(id).expect("computable"))
    };
    match out {
        Some(p) => {
            if let Err(e) = write_file(p, &text) {
                say!(io.err, "error: writing {}: {e}", p.display());
                return EXIT_MISMATCH;
            }
        }
        None => {
            let _ = write!(io.out, "{text}");
        }
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = run(std::iter::once("wallach").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_exact_decimal("1e-12").unwrap(), parse_rational("1/1000000000000").unwrap());
        assert_eq!(parse_exact_decimal("0.25").unwrap(), parse_rational("1/4").unwrap());
        assert_eq!(parse_exact_decimal("2.5e1").unwrap(), parse_rational("25").unwrap());
        assert_eq!(parse_exact_decimal("3/7").unwrap(), parse_rational("3/7").unwrap());
        assert!(parse_exact_decimal("abc").is_none());
        assert!(parse_exact_decimal("1e").is_none());
    }

    #[test]
    fn derive_prints_fractions() {
        let (code, out, _) = call(&["derive", "E6-III"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l == "(3,4,5)=7/2"), "{out}");
    }

    #[test]
    fn reported_only_and_unknown_cases_are_usage_errors() {
        assert_eq!(call(&["derive", "F4-I"]).0, EXIT_USAGE);
        assert_eq!(call(&["derive", "G2"]).0, EXIT_USAGE);
        assert_eq!(call(&["solve", "E8-III"]).0, EXIT_USAGE);
        assert_eq!(call(&["bogus"]).0, EXIT_USAGE);
    }

    #[test]
    fn conflicting_flags_rejected() {
        assert_eq!(call(&["solve", "E6-III", "--exact-only", "--numeric"]).0, EXIT_USAGE);
        assert_eq!(call(&["solve", "E6-III", "--eps", "-1"]).0, EXIT_USAGE);
    }
}
