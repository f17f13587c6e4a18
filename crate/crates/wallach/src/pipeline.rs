//! Per-case orchestration: tiered exact/numeric solving, classification, and
//! assembly of result documents.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use wallach_core::arith::{fmt_sig, format_rational};
use wallach_core::catalog::{get_case, CaseId, CatalogError, WallachCase};
use wallach_core::classifier::{classify, default_tol, Classification, ClassifyError, Verdict};
use wallach_core::groebner::{GroebnerError, Progress};
use wallach_core::realroots::UniPoly;
use wallach_core::ricci::{build_einstein_system, derive_triples, EinsteinSystem, RicciError, TripleSet};
use wallach_core::solver::{
    finish_numeric, merge_dedupe, numeric_candidates, solve_exact, Candidate, ExactOutcome, SolutionRecord,
    SolveConfig, SolveError,
};

use crate::format::{discard_doc, normalization_text, solution_doc, ExactDoc, SolveDoc, SOLVE_FORMAT};

/// Cases whose exact path is expected to finish at desk scale.
pub const EXACT_CASES: [CaseId; 3] = [CaseId::E6III, CaseId::E8II, CaseId::E7I];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathChoice {
    /// Exact for the small cases, budgeted exact attempt then numeric for the rest.
    Auto,
    Exact,
    Numeric,
    Both,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub choice: PathChoice,
    /// Fail instead of falling back when the exact path runs out of budget.
    pub exact_only: bool,
    pub cfg: SolveConfig,
    /// Step budget for exact attempts on the heavy cases under `Auto`.
    pub attempt_steps: u64,
    pub jobs: usize,
    /// Progress lines on stderr.
    pub verbose: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            choice: PathChoice::Auto,
            exact_only: false,
            cfg: SolveConfig::default(),
            attempt_steps: 20_000,
            jobs: 1,
            verbose: false,
        }
    }
}

impl RunOptions {
    /// Text that determines the results; hashed into cache keys.
    pub fn signature(&self) -> String {
        let c = &self.cfg;
        format!(
            "choice={:?};exact_only={};attempt={};method={:?};steps={};primes={};sel={:?};tail={};starts={};seed={};box={},{};iter={};halv={};ntol={};rbound={};dtol={};eps={};bits={};rat={}",
            self.choice,
            self.exact_only,
            self.attempt_steps,
            c.groebner.method,
            c.groebner.max_steps,
            c.groebner.max_primes,
            c.groebner.selection,
            c.groebner.tail_reduce,
            c.starts,
            c.seed,
            c.box_lo,
            c.box_hi,
            c.max_iter,
            c.max_halvings,
            c.newton_tol,
            c.residual_bound,
            c.dedup_tol,
            format_rational(&c.eps),
            c.precision_bits,
            c.rational_bound
        )
    }
}

#[derive(Debug)]
pub enum RunError {
    Catalog(CatalogError),
    Ricci(RicciError),
    /// Exact path out of budget with fallback disabled.
    Budget(GroebnerError),
    Solve(SolveError),
    Classify(ClassifyError),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Catalog(e) => write!(f, "{e}"),
            RunError::Ricci(e) => write!(f, "{e:?}"),
            RunError::Budget(e) => write!(f, "{e}"),
            RunError::Solve(e) => write!(f, "{e}"),
            RunError::Classify(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

pub struct CaseRun {
    pub case: WallachCase,
    pub triples: TripleSet,
    pub system: EinsteinSystem,
    pub records: Vec<SolutionRecord>,
    pub classes: Vec<Classification>,
    pub exact: Option<ExactOutcome>,
    pub paths: Vec<&'static str>,
    pub fallback: Option<String>,
    pub elapsed: Duration,
}

impl CaseRun {
    pub fn non_nr(&self) -> usize {
        self.classes.iter().filter(|c| c.verdict == Verdict::NonNaturallyReductive).count()
    }
}

/// Numeric candidates over all starts, in parallel chunks merged in start order.
pub fn numeric_parallel(system: &EinsteinSystem, cfg: &SolveConfig, jobs: usize) -> Vec<Candidate> {
    const CHUNK: usize = 250;
    let ranges: Vec<std::ops::Range<usize>> =
        (0..cfg.starts).step_by(CHUNK).map(|a| a..(a + CHUNK).min(cfg.starts)).collect();
    let work = || ranges.par_iter().map(|r| numeric_candidates(system, cfg, r.clone())).collect::<Vec<_>>();
    let parts = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    parts.concat()
}

fn exact_attempt(
    case: &WallachCase,
    system: &EinsteinSystem,
    opts: &RunOptions,
    max_steps: u64,
) -> Result<ExactOutcome, SolveError> {
    let t0 = Instant::now();
    let mut last = Instant::now();
    let verbose = opts.verbose;
    let name = case.id.name();
    let mut progress = |p: &Progress| {
        if verbose && last.elapsed().as_secs_f64() >= 5.0 {
            last = Instant::now();
            eprintln!(
                "[{name}] {:.0}s pairs {} basis {} steps {} deg {} bits {}",
                t0.elapsed().as_secs_f64(),
                p.pairs_remaining,
                p.basis_len,
                p.steps,
                p.max_degree,
                p.max_coeff_bits
            );
        }
        true
    };
    let mut cfg = opts.cfg.clone();
    cfg.groebner.max_steps = max_steps;
    solve_exact(case, system, &cfg, &mut progress)
}

pub fn run_case(id: CaseId, opts: &RunOptions) -> Result<CaseRun, RunError> {
    let t0 = Instant::now();
    let case = get_case(id).map_err(RunError::Catalog)?;
    let triples = derive_triples(&case).map_err(RunError::Ricci)?;
    let system = build_einstein_system(&case, &triples);
    let mandatory = EXACT_CASES.contains(&id);
    let (want_exact, want_numeric) = match opts.choice {
        PathChoice::Auto => (true, false),
        PathChoice::Exact => (true, false),
        PathChoice::Numeric => (false, true),
        PathChoice::Both => (true, true),
    };
    let max_steps = match (opts.choice, mandatory) {
        (PathChoice::Auto, false) => opts.cfg.groebner.max_steps.min(opts.attempt_steps),
        _ => opts.cfg.groebner.max_steps,
    };
    let mut records = Vec::new();
    let mut paths = Vec::new();
    let mut fallback = None;
    let mut exact = None;
    let mut need_numeric = want_numeric;
    if want_exact {
        if opts.verbose {
            eprintln!("[{}] exact path", id.name());
        }
        match exact_attempt(&case, &system, opts, max_steps) {
            Ok(out) => {
                records.extend(out.records.iter().cloned());
                paths.push("exact");
                exact = Some(out);
            }
            Err(SolveError::Groebner(e @ GroebnerError::BudgetExceeded { .. })) => {
                if opts.exact_only {
                    return Err(RunError::Budget(e));
                }
                fallback = Some(format!("exact path stopped ({e}); numeric path used"));
                need_numeric = true;
            }
            Err(e) => return Err(RunError::Solve(e)),
        }
    }
    if need_numeric {
        if opts.verbose {
            eprintln!("[{}] numeric path, {} starts", id.name(), opts.cfg.starts);
        }
        let cands = numeric_parallel(&system, &opts.cfg, opts.jobs);
        records.extend(finish_numeric(&case, &system, &cands, &opts.cfg));
        paths.push("numeric");
    }
    let records = merge_dedupe(records, &case, opts.cfg.dedup_tol);
    let classes = records
        .iter()
        .map(|r| classify(&case, &triples, &r.point, default_tol(&r.point)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(RunError::Classify)?;
    Ok(CaseRun { case, triples, system, records, classes, exact, paths, fallback, elapsed: t0.elapsed() })
}

fn uni_const(p: &UniPoly) -> String {
    p.coeffs().first().map(format_rational).unwrap_or_else(|| "0".into())
}

pub fn solve_doc(run: &CaseRun) -> SolveDoc {
    let exact = run.exact.as_ref().map(|e| ExactDoc {
        eliminant_degree: e.eliminant.degree(),
        eliminant_leading: format_rational(&e.eliminant.leading()),
        eliminant_constant: uni_const(&e.eliminant),
        rational_roots: e.rational_roots.iter().map(format_rational).collect(),
        cofactor_degree: e.cofactor.degree(),
        positive_roots: e.positive_roots.iter().map(|r| r.describe()).collect(),
        basis_len: e.basis.elements.len(),
        steps: e.stats.steps,
        discarded: e.discarded.iter().map(discard_doc).collect(),
        branch_notes: e.branch_notes.clone(),
    });
    SolveDoc {
        format: SOLVE_FORMAT.into(),
        case: run.case.id.name().into(),
        normalization: normalization_text(&run.case),
        paths: run.paths.iter().map(|s| s.to_string()).collect(),
        fallback: run.fallback.clone(),
        exact,
        solutions: run.records.iter().zip(&run.classes).map(|(r, c)| solution_doc(&run.case, r, c)).collect(),
        non_naturally_reductive: run.non_nr(),
    }
}

/// Aligned plain-text table of the solutions of one case.
pub fn solutions_table(run: &CaseRun) -> String {
    let c = &run.case;
    let mut out = String::new();
    out.push_str(&format!("{} (normalized by {})\n", c.id, normalization_text(c)));
    let mut header = format!("{:>3}  ", "#");
    for i in c.indices() {
        header.push_str(&format!("{:>14}", c.coord_name(i)));
    }
    header.push_str(&format!("{:>14}  {:<8} {:<24} {}\n", "lambda", "source", "verdict", "residual"));
    out.push_str(&header);
    for (k, (r, cl)) in run.records.iter().zip(&run.classes).enumerate() {
        let mut line = format!("{:>3}  ", k + 1);
        for (v, f) in r.point.values.iter().zip(r.point.to_f64()) {
            let s = if r.point.exact && v.denom().bits() <= 20 { format_rational(v) } else { fmt_sig(f, 10) };
            line.push_str(&format!("{s:>14}"));
        }
        line.push_str(&format!(
            "{:>14}  {:<8} {:<24} {:.1e}\n",
            fmt_sig(cl.lambda, 10),
            r.source.as_str(),
            cl.verdict.as_str(),
            r.residual
        ));
        out.push_str(&line);
    }
    out.push_str(&format!("non-naturally reductive: {}\n", run.non_nr()));
    if let Some(f) = &run.fallback {
        out.push_str(&format!("note: {f}\n"));
    }
    out
}
