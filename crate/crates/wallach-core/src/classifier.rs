//! Natural-reductivity verdicts, Einstein constants, and the summary table.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{to_f64, BigRational};
use crate::catalog::{CaseId, WallachCase};
use crate::ricci::{ricci_components, ricci_components_f64, RicciError, TripleSet};
use crate::solver::{MetricPoint, SolutionRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NaturallyReductive,
    NonNaturallyReductive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NaturallyReductive => "naturally-reductive",
            Verdict::NonNaturallyReductive => "non-naturally-reductive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub pattern: Option<usize>,
    pub lambda: f64,
    /// Exact Einstein constant for rational points.
    pub lambda_exact: Option<BigRational>,
    /// Smallest relative gap over all patterns; 0 when a pattern matched.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ClassifyError {
    NotEinstein { spread: f64 },
    NonpositiveCoordinate(usize),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::NotEinstein { spread } => write!(f, "Ricci components differ by {spread:e}"),
            ClassifyError::NonpositiveCoordinate(i) => write!(f, "coordinate {i} is not positive"),
        }
    }
}

/// Components must agree within this relative spread.
pub const EINSTEIN_TOL: f64 = 1e-9;

/// Common value of the Ricci components.
pub fn einstein_constant(
    case: &WallachCase,
    triples: &TripleSet,
    point: &MetricPoint,
) -> Result<(f64, Option<BigRational>), ClassifyError> {
    if point.exact {
        let r = ricci_components(case, triples, &point.values).map_err(|e| match e {
            RicciError::NonpositiveCoordinate(i) => ClassifyError::NonpositiveCoordinate(i),
            _ => ClassifyError::NotEinstein { spread: f64::INFINITY },
        })?;
        if let Some(other) = r.iter().find(|v| **v != r[0]) {
            return Err(ClassifyError::NotEinstein { spread: to_f64(&(other - &r[0]).abs()) });
        }
        return Ok((to_f64(&r[0]), Some(r[0].clone())));
    }
    if let Some(i) = point.values.iter().position(|v| !v.is_positive()) {
        return Err(ClassifyError::NonpositiveCoordinate(i + case.first_index()));
    }
    let r = ricci_components_f64(case, triples, &point.to_f64());
    let hi = r.iter().cloned().fold(f64::MIN, f64::max);
    let lo = r.iter().cloned().fold(f64::MAX, f64::min);
    let spread = (hi - lo) / libm::fabs(hi).max(libm::fabs(lo));
    if !(spread <= EINSTEIN_TOL) {
        return Err(ClassifyError::NotEinstein { spread });
    }
    Ok((r[0], None))
}

fn rel_gap(a: f64, b: f64) -> f64 {
    let s = libm::fabs(a).max(libm::fabs(b));
    if s == 0.0 {
        0.0
    } else {
        libm::fabs(a - b) / s
    }
}

/// Largest relative violation of the pattern's equalities.
fn pattern_gap(case: &WallachCase, classes: &[Vec<usize>], x: &[f64]) -> f64 {
    let f = case.first_index();
    let mut g: f64 = 0.0;
    for c in classes {
        for w in c.windows(2) {
            g = g.max(rel_gap(x[w[0] - f], x[w[1] - f]));
        }
        for &i in c {
            g = g.max(rel_gap(x[c[0] - f], x[i - f]));
        }
    }
    g
}

fn pattern_exact(case: &WallachCase, classes: &[Vec<usize>], x: &[BigRational]) -> bool {
    let f = case.first_index();
    classes.iter().all(|c| c.iter().all(|&i| x[i - f] == x[c[0] - f]))
}

/// Pattern matching uses `|a - b| <= tol * max(a, b)`; exact points with `tol == 0` compare exactly.
pub fn classify(
    case: &WallachCase,
    triples: &TripleSet,
    point: &MetricPoint,
    tol: f64,
) -> Result<Classification, ClassifyError> {
    let (lambda, lambda_exact) = einstein_constant(case, triples, point)?;
    let x = point.to_f64();
    let mut margin = f64::INFINITY;
    let mut pattern = None;
    for (k, p) in case.nr_patterns.iter().enumerate() {
        let hit = if point.exact && tol == 0.0 {
            pattern_exact(case, &p.classes, &point.values)
        } else {
            pattern_gap(case, &p.classes, &x) <= tol
        };
        if hit {
            pattern = Some(k);
            margin = 0.0;
            break;
        }
        margin = margin.min(pattern_gap(case, &p.classes, &x));
    }
    let verdict = if pattern.is_some() { Verdict::NaturallyReductive } else { Verdict::NonNaturallyReductive };
    Ok(Classification { verdict, pattern, lambda, lambda_exact, margin })
}

/// Default pattern tolerance for a point.
pub fn default_tol(point: &MetricPoint) -> f64 {
    if point.exact {
        0.0
    } else {
        1e-6
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub case: CaseId,
    pub k_label: String,
    pub p_plus_q: String,
    pub count: usize,
    pub reported_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReportError {
    IncompleteRun(Vec<CaseId>),
}

impl fmt::Display for ReportError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportError::IncompleteRun(c) => {
                write!(f, "no results for")?;
                for id in c {
                    write!(f, " {id}")?;
                }
                Ok(())
            }
        }
    }
}

/// Number of non-naturally-reductive metrics among deduplicated records.
pub fn count_non_nr(case: &WallachCase, triples: &TripleSet, records: &[SolutionRecord]) -> usize {
    records
        .iter()
        .filter(|r| {
            classify(case, triples, &r.point, default_tol(&r.point))
                .is_ok_and(|c| c.verdict == Verdict::NonNaturallyReductive)
        })
        .count()
}

/// One row per table entry in table order; `counts` supplies the computed cases.
pub fn report_table(counts: &[(CaseId, usize)]) -> Result<Vec<TableRow>, ReportError> {
    let missing: Vec<CaseId> = CaseId::ALL
        .iter()
        .copied()
        .filter(|c| c.is_computable() && !counts.iter().any(|(k, _)| k == c))
        .collect();
    if !missing.is_empty() {
        return Err(ReportError::IncompleteRun(missing));
    }
    Ok(CaseId::ALL
        .iter()
        .map(|&c| {
            let count = if c.is_computable() {
                counts.iter().find(|(k, _)| *k == c).map(|x| x.1).unwrap_or_default()
            } else {
                c.table_count()
            };
            TableRow {
                case: c,
                k_label: c.k_label().into(),
                p_plus_q: c.p_plus_q().into(),
                count,
                reported_only: !c.is_computable(),
            }
        })
        .collect())
}

/// Exact rescaling leaves verdicts unchanged; used by property tests.
pub fn scale_point(point: &MetricPoint, c: &BigRational) -> MetricPoint {
    debug_assert!(!c.is_zero());
    point.scaled(c)
}
