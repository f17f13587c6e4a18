//! Exact (lex basis, eliminant, back-substitution) and numeric (multi-start
//! damped Newton) solution of Einstein systems, plus isometry-aware merging.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arith::{dyadic_round, from_f64, to_f64, BigInt, BigRational};
use crate::catalog::{CaseId, WallachCase};
use crate::groebner::{
    eliminant, groebner, saturate_nonvanishing, GroebnerBasis, GroebnerConfig, GroebnerError, Progress, Stats,
};
use crate::poly::{MultiPoly, MAX_VARS};
use crate::realroots::{extract_rational_roots, isolate_real_roots, refine_root, Domain, IsolatedRoot, UniPoly};
use crate::ricci::EinsteinSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Source {
    Exact,
    Numeric,
    Both,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Exact => "exact",
            Source::Numeric => "numeric",
            Source::Both => "both",
        }
    }

    fn join(self, o: Source) -> Source {
        if self == o {
            self
        } else {
            Source::Both
        }
    }
}

/// A metric in the normalized family: one value per case coordinate, in index order.
///
/// `values` are exact when `exact` is set, otherwise high-precision dyadic approximations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricPoint {
    pub values: Vec<BigRational>,
    pub exact: bool,
}

impl MetricPoint {
    pub fn exact(values: Vec<BigRational>) -> MetricPoint {
        MetricPoint { values, exact: true }
    }

    pub fn approx(values: Vec<BigRational>) -> MetricPoint {
        MetricPoint { values, exact: false }
    }

    pub fn from_f64(x: &[f64]) -> MetricPoint {
        MetricPoint::approx(x.iter().map(|&v| from_f64(v)).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(to_f64).collect()
    }

    pub fn is_positive(&self) -> bool {
        self.values.iter().all(|v| v.is_positive())
    }

    /// All coordinates multiplied by `c`.
    pub fn scaled(&self, c: &BigRational) -> MetricPoint {
        MetricPoint { values: self.values.iter().map(|v| v * c).collect(), exact: self.exact }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionRecord {
    pub case: CaseId,
    pub point: MetricPoint,
    pub source: Source,
    /// Upper bound on `max |g_i|` at `point`; exactly zero for rational solutions.
    pub residual: f64,
    /// Eliminant root the exact path started from.
    pub root: Option<IsolatedRoot>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DiscardReason {
    Nonpositive { var: String, value: f64 },
    NoRealValue { var: String },
    Residual(f64),
}

impl fmt::Display for DiscardReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscardReason::Nonpositive { var, value } => write!(f, "{var} = {value:.10} is not positive"),
            DiscardReason::NoRealValue { var } => write!(f, "no real value for {var}"),
            DiscardReason::Residual(r) => write!(f, "residual {r:e} above bound"),
        }
    }
}

/// A back-substitution branch that did not yield a positive solution.
#[derive(Clone, Debug, PartialEq)]
pub struct Discard {
    /// Approximate value of the eliminated variable at the branch root.
    pub root: f64,
    /// Coordinates fixed before the branch was rejected, as `(name, value)`.
    pub partial: Vec<(String, f64)>,
    pub reason: DiscardReason,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub groebner: GroebnerConfig,
    pub starts: usize,
    pub seed: u64,
    pub box_lo: f64,
    pub box_hi: f64,
    pub max_iter: usize,
    pub max_halvings: u32,
    pub newton_tol: f64,
    pub residual_bound: f64,
    pub dedup_tol: f64,
    /// Width target for reported eliminant roots.
    pub eps: BigRational,
    /// Working precision (bits) of approximate coordinates.
    pub precision_bits: u32,
    /// Largest denominator tried in rational-root and rational-point recognition.
    pub rational_bound: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            groebner: GroebnerConfig::default(),
            starts: 20_000,
            seed: 7,
            box_lo: 1e-2,
            box_hi: 10.0,
            max_iter: 80,
            max_halvings: 30,
            newton_tol: 1e-12,
            residual_bound: 1e-9,
            dedup_tol: 1e-6,
            eps: BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12)),
            precision_bits: 320,
            rational_bound: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveError {
    Groebner(GroebnerError),
    /// Back-substitution could not find a usable basis element.
    BackSubstitution(String),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Groebner(e) => write!(f, "{e}"),
            SolveError::BackSubstitution(s) => write!(f, "back-substitution failed: {s}"),
        }
    }
}

impl From<GroebnerError> for SolveError {
    fn from(e: GroebnerError) -> Self {
        SolveError::Groebner(e)
    }
}

/// Everything the exact path produces besides the solutions themselves.
#[derive(Clone, Debug)]
pub struct ExactOutcome {
    pub records: Vec<SolutionRecord>,
    pub discarded: Vec<Discard>,
    /// Primitive eliminant in the kept variable.
    pub eliminant: UniPoly,
    pub rational_roots: Vec<BigRational>,
    pub cofactor: UniPoly,
    /// Positive roots of the eliminant, refined to the configured width.
    pub positive_roots: Vec<IsolatedRoot>,
    /// Branch points where a coordinate had several admissible values.
    pub branch_notes: Vec<String>,
    /// Basis of the saturated ideal, including the auxiliary variable.
    pub basis: GroebnerBasis,
    pub stats: Stats,
}

#[derive(Clone, Debug)]
enum Val {
    Exact(BigRational),
    Approx(BigRational),
}

impl Val {
    fn value(&self) -> &BigRational {
        match self {
            Val::Exact(v) | Val::Approx(v) => v,
        }
    }

    fn is_exact(&self) -> bool {
        matches!(self, Val::Exact(_))
    }
}

/// Exact path: saturate, lex basis, eliminant, roots, back-substitution.
pub fn solve_exact(
    case: &WallachCase,
    system: &EinsteinSystem,
    cfg: &SolveConfig,
    progress: &mut dyn FnMut(&Progress) -> bool,
) -> Result<ExactOutcome, SolveError> {
    debug_assert_eq!(case.id, system.case);
    let ideal = saturate_nonvanishing(&system.polys, &system.vars);
    let basis = groebner(&ideal, &cfg.groebner, progress)?;
    let m = system.vars.len();
    let keep_sat = system.keep + 1;
    let elim = eliminant(&basis, keep_sat)?;
    let eliminant = UniPoly::from_multipoly(&elim, keep_sat).expect("univariate").primitive();
    // elements free of the auxiliary variable, moved back to the system variables
    let map: Vec<usize> = (0..=m).map(|i| i.saturating_sub(1)).collect();
    let elim_basis: Vec<MultiPoly> = basis
        .elements
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| g.remap(&system.vars, &map))
        .collect();

    let (rational_roots, cofactor) = extract_rational_roots(&eliminant, cfg.rational_bound, &[]);
    let mut starts: Vec<(Val, IsolatedRoot)> = Vec::new();
    let mut seen = rational_roots.clone();
    seen.dedup();
    for r in seen.iter().filter(|r| r.is_positive()) {
        let iso = IsolatedRoot { lo: r.clone(), hi: r.clone(), exact: Some(r.clone()), simple: true };
        starts.push((Val::Exact(r.clone()), iso));
    }
    let fine = BigRational::new(BigInt::one(), BigInt::one() << cfg.precision_bits);
    for iso in isolate_real_roots(&cofactor, Domain::Positive) {
        let shown = refine_root(&cofactor, &iso, &cfg.eps);
        match &shown.exact {
            Some(r) => starts.push((Val::Exact(r.clone()), shown)),
            None => {
                let deep = refine_root(&cofactor, &shown, &fine);
                let v = match &deep.exact {
                    Some(r) => Val::Exact(r.clone()),
                    None => Val::Approx(dyadic_round(&deep.midpoint(), cfg.precision_bits)),
                };
                starts.push((v, shown));
            }
        }
    }
    starts.sort_by(|a, b| a.0.value().cmp(b.0.value()));
    let positive_roots: Vec<IsolatedRoot> = starts.iter().map(|s| s.1.clone()).collect();

    let mut bs = BackSub {
        system,
        basis: &elim_basis,
        cfg,
        discarded: Vec::new(),
        notes: Vec::new(),
        found: Vec::new(),
        root: 0.0,
    };
    for (v, iso) in starts {
        bs.root = to_f64(v.value());
        let mut vals: Vec<Option<Val>> = vec![None; m];
        vals[system.keep] = Some(v);
        let before = bs.found.len();
        bs.descend(&mut vals, system.keep)?;
        for rec in bs.found[before..].iter_mut() {
            rec.root = Some(iso.clone());
        }
    }
    let mut records = Vec::new();
    let mut discarded = bs.discarded;
    for rec in bs.found {
        if rec.residual <= cfg.residual_bound {
            records.push(rec);
        } else {
            discarded.push(Discard {
                root: rec.root.as_ref().map_or(0.0, |r| r.approx()),
                partial: Vec::new(),
                reason: DiscardReason::Residual(rec.residual),
            });
        }
    }
    let stats = basis.stats.clone();
    Ok(ExactOutcome {
        records,
        discarded,
        eliminant,
        rational_roots,
        cofactor,
        positive_roots,
        branch_notes: bs.notes,
        basis,
        stats,
    })
}

struct BackSub<'a> {
    system: &'a EinsteinSystem,
    basis: &'a [MultiPoly],
    cfg: &'a SolveConfig,
    discarded: Vec<Discard>,
    notes: Vec<String>,
    found: Vec<SolutionRecord>,
    root: f64,
}

fn leading_var(g: &MultiPoly) -> Option<usize> {
    g.occurring_vars().into_iter().min()
}

impl BackSub<'_> {
    fn partial(&self, vals: &[Option<Val>]) -> Vec<(String, f64)> {
        vals.iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().map(|v| (self.system.vars[i].clone(), to_f64(v.value()))))
            .collect()
    }

    /// Values for variables `>= known` are set; solve for `known - 1` and recurse.
    fn descend(&mut self, vals: &mut Vec<Option<Val>>, known: usize) -> Result<(), SolveError> {
        if known == 0 {
            self.finish(vals);
            return Ok(());
        }
        let v = known - 1;
        let name = self.system.vars[v].clone();
        let all_exact = vals[known..].iter().all(|x| x.as_ref().is_some_and(Val::is_exact));
        let mut chosen: Option<UniPoly> = None;
        for g in self.basis.iter().filter(|g| leading_var(g) == Some(v)) {
            let mut s = g.clone();
            let mut scale = abs_poly(g);
            for (i, x) in vals.iter().enumerate().skip(known) {
                let x = x.as_ref().expect("set").value();
                s = s.substitute(i, x);
                scale = scale.substitute(i, &x.abs());
            }
            let u = UniPoly::from_multipoly(&s, v).expect("only v remains");
            let d = g.degree_in(v) as usize;
            if u.degree() != d || u.is_zero() {
                continue;
            }
            if !all_exact {
                // leading coefficient indistinguishable from zero at this precision
                let lc_scale = leading_scale(&scale, v, d);
                let bits = self.cfg.precision_bits / 2;
                if u.leading().abs() * BigRational::from_integer(BigInt::one() << bits) <= lc_scale {
                    continue;
                }
            }
            chosen = Some(u);
            break;
        }
        let u = chosen.ok_or_else(|| SolveError::BackSubstitution(format!("no basis element determines {name}")))?;
        let mut values: Vec<Val> = Vec::new();
        if u.degree() == 1 {
            let c = u.coeffs();
            let r = -&c[0] / &c[1];
            values.push(if all_exact { Val::Exact(r) } else { Val::Approx(dyadic_round(&r, self.cfg.precision_bits)) });
        } else {
            let fine = BigRational::new(BigInt::one(), BigInt::one() << self.cfg.precision_bits);
            let rest = if all_exact {
                let (rr, cof) = extract_rational_roots(&u, self.cfg.rational_bound, &[]);
                let mut rr = rr;
                rr.dedup();
                values.extend(rr.into_iter().map(Val::Exact));
                cof
            } else {
                u.clone()
            };
            for iso in isolate_real_roots(&rest, Domain::AllReals) {
                let r = refine_root(&rest, &iso, &fine);
                values.push(match (&r.exact, all_exact) {
                    (Some(e), true) => Val::Exact(e.clone()),
                    (Some(e), false) => Val::Approx(e.clone()),
                    (None, _) => Val::Approx(dyadic_round(&r.midpoint(), self.cfg.precision_bits)),
                });
            }
            values.sort_by(|a, b| a.value().cmp(b.value()));
            if values.iter().filter(|x| x.value().is_positive()).count() > 1 {
                self.notes.push(format!(
                    "root {:.10}: {} admissible values for {name} (degree {})",
                    self.root,
                    values.iter().filter(|x| x.value().is_positive()).count(),
                    u.degree()
                ));
            }
        }
        if values.is_empty() {
            let partial = self.partial(vals);
            self.discarded.push(Discard {
                root: self.root,
                partial,
                reason: DiscardReason::NoRealValue { var: name },
            });
            return Ok(());
        }
        for x in values {
            if !x.value().is_positive() {
                let partial = self.partial(vals);
                self.discarded.push(Discard {
                    root: self.root,
                    partial,
                    reason: DiscardReason::Nonpositive { var: name.clone(), value: to_f64(x.value()) },
                });
                continue;
            }
            vals[v] = Some(x);
            self.descend(vals, v)?;
            vals[v] = None;
        }
        Ok(())
    }

    fn finish(&mut self, vals: &[Option<Val>]) {
        let free: Vec<BigRational> = vals.iter().map(|v| v.as_ref().expect("complete").value().clone()).collect();
        let exact = vals.iter().all(|v| v.as_ref().is_some_and(Val::is_exact));
        let residual = residual_bound(self.system, &free);
        let full = self.system.full_point(&free);
        let point = if exact { MetricPoint::exact(full) } else { MetricPoint::approx(full) };
        self.found.push(SolutionRecord { case: self.system.case, point, source: Source::Exact, residual, root: None });
    }
}

fn abs_poly(p: &MultiPoly) -> MultiPoly {
    MultiPoly::from_terms(p.vars(), p.terms().map(|(m, c)| (*m, c.abs())))
}

/// Sum of absolute leading-coefficient terms, the yardstick for "numerically zero".
fn leading_scale(abs_sub: &MultiPoly, v: usize, d: usize) -> BigRational {
    abs_sub.terms().filter(|(m, _)| m.exp(v) as usize == d).map(|(_, c)| c.clone()).fold(BigRational::zero(), |a, b| a + b)
}

/// `max |g_i|` at a point, rounded up to an `f64`.
pub fn residual_bound(system: &EinsteinSystem, free: &[BigRational]) -> f64 {
    let r = system.residual_exact(free);
    if r.is_zero() {
        return 0.0;
    }
    let f = to_f64(&r);
    // next float up so that the bound is never below the true value
    if from_f64(f) < r {
        f64::from_bits(f.to_bits() + 1)
    } else {
        f
    }
}

struct Compiled {
    terms: Vec<(f64, [u16; MAX_VARS])>,
}

impl Compiled {
    fn new(p: &MultiPoly) -> Compiled {
        Compiled { terms: p.terms().map(|(m, c)| (to_f64(c), *m.exps())).collect() }
    }

    /// Value and sum of absolute term values.
    fn eval(&self, x: &[f64]) -> (f64, f64) {
        let mut v = 0.0;
        let mut s = 0.0;
        for (c, e) in &self.terms {
            let mut t = *c;
            for (i, &k) in e.iter().enumerate().take(x.len()) {
                if k > 0 {
                    t *= powi(x[i], k as u32);
                }
            }
            v += t;
            s += libm::fabs(t);
        }
        (v, s)
    }
}

fn powi(x: f64, k: u32) -> f64 {
    let mut r = 1.0;
    for _ in 0..k {
        r *= x;
    }
    r
}

/// Square system in `f64` form with its Jacobian.
struct NumSystem {
    polys: Vec<Compiled>,
    jac: Vec<Vec<Compiled>>,
    scale: Vec<f64>,
}

impl NumSystem {
    fn new(sys: &EinsteinSystem) -> NumSystem {
        let m = sys.vars.len();
        let polys: Vec<Compiled> = sys.polys.iter().map(Compiled::new).collect();
        let jac = sys.polys.iter().map(|g| (0..m).map(|j| Compiled::new(&g.derivative(j))).collect()).collect();
        let scale = sys
            .polys
            .iter()
            .map(|g| g.terms().map(|(_, c)| libm::fabs(to_f64(c))).fold(0.0, f64::max))
            .collect();
        NumSystem { polys, jac, scale }
    }

    /// Scaled residual vector and max relative residual.
    fn residual(&self, x: &[f64]) -> (Vec<f64>, f64) {
        let mut f = Vec::with_capacity(self.polys.len());
        let mut rel: f64 = 0.0;
        for (p, s) in self.polys.iter().zip(&self.scale) {
            let (v, a) = p.eval(x);
            f.push(v / s);
            rel = rel.max(if a > 0.0 { libm::fabs(v) / a } else { 0.0 });
        }
        (f, rel)
    }

    /// Jacobian with respect to `log x`.
    fn jacobian_log(&self, x: &[f64]) -> Vec<Vec<f64>> {
        self.jac
            .iter()
            .zip(&self.scale)
            .map(|(row, s)| row.iter().enumerate().map(|(j, d)| d.eval(x).0 * x[j] / s).collect())
            .collect()
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum()
}

/// Dense solve with partial pivoting; `None` when singular.
fn solve_f64(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| libm::fabs(a[i][col]).partial_cmp(&libm::fabs(a[j][col])).unwrap_or(Ordering::Equal))?;
        if !(libm::fabs(a[piv][col]) > 1e-300) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn solve_rat(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// A converged Newton run.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub start: usize,
    /// System variables.
    pub x: Vec<f64>,
    pub rel_residual: f64,
}

/// Log-uniform start `index` of the configured stream; independent of how starts are chunked.
pub fn start_point(cfg: &SolveConfig, m: usize, index: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let (a, b) = (libm::log(cfg.box_lo), libm::log(cfg.box_hi));
    (0..m)
        .map(|_| {
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            libm::exp(a + u * (b - a))
        })
        .collect()
}

/// Runs damped Newton from starts `range` and keeps the converged points.
pub fn numeric_candidates(system: &EinsteinSystem, cfg: &SolveConfig, range: core::ops::Range<usize>) -> Vec<Candidate> {
    let ns = NumSystem::new(system);
    let m = system.vars.len();
    let mut out = Vec::new();
    for idx in range {
        let x0 = start_point(cfg, m, idx);
        if let Some((x, rel)) = newton_log(&ns, cfg, x0) {
            out.push(Candidate { start: idx, x, rel_residual: rel });
        }
    }
    out
}

fn newton_log(ns: &NumSystem, cfg: &SolveConfig, x0: Vec<f64>) -> Option<(Vec<f64>, f64)> {
    let mut y: Vec<f64> = x0.iter().map(|v| libm::log(*v)).collect();
    let mut x = x0;
    let (mut f, mut rel) = ns.residual(&x);
    let mut phi = norm2(&f);
    let limit = 12.0;
    for _ in 0..cfg.max_iter {
        let j = ns.jacobian_log(&x);
        let Some(mut d) = solve_f64(j, f.iter().map(|v| -v).collect()) else {
            break;
        };
        // cap a single step at a factor e^2 per coordinate
        let big = d.iter().map(|v| libm::fabs(*v)).fold(0.0, f64::max);
        if big > 2.0 {
            for v in d.iter_mut() {
                *v *= 2.0 / big;
            }
        }
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=cfg.max_halvings {
            let yn: Vec<f64> = y.iter().zip(&d).map(|(a, b)| a + t * b).collect();
            let xn: Vec<f64> = yn.iter().map(|v| libm::exp(*v)).collect();
            let (fn_, reln) = ns.residual(&xn);
            let phin = norm2(&fn_);
            if phin.is_finite() && (phin < phi || phin == 0.0) {
                accepted = Some((yn, xn, fn_, reln, phin));
                break;
            }
            t *= 0.5;
        }
        let Some((yn, xn, fn_, reln, phin)) = accepted else {
            break;
        };
        let step = d.iter().map(|v| libm::fabs(t * v)).fold(0.0, f64::max);
        y = yn;
        x = xn;
        f = fn_;
        rel = reln;
        phi = phin;
        if y.iter().any(|v| libm::fabs(*v) > limit) {
            return None;
        }
        if step < cfg.newton_tol && rel < cfg.newton_tol {
            return Some((x, rel));
        }
    }
    // stalled at the floating-point floor
    (rel <= cfg.residual_bound && y.iter().all(|v| libm::fabs(*v) <= limit)).then_some((x, rel))
}

fn rel_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| {
            let s = libm::fabs(*p).max(libm::fabs(*q));
            if s == 0.0 {
                0.0
            } else {
                libm::fabs(p - q) / s
            }
        })
        .fold(0.0, f64::max)
}

/// Best rational approximation with denominator at most `max_den` (continued fractions).
pub fn best_rational(x: &BigRational, max_den: u64) -> BigRational {
    let max_den = BigInt::from(max_den);
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    loop {
        let a = r.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = &r - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
    }
    if q1.is_zero() {
        return x.floor();
    }
    BigRational::new(p1, q1)
}

/// Exact-rational Newton from an `f64` point, with dyadic rounding; `None` if it fails to settle.
pub fn polish(system: &EinsteinSystem, x: &[f64], bits: u32) -> Option<Vec<BigRational>> {
    let m = system.vars.len();
    let jac: Vec<Vec<MultiPoly>> = system.polys.iter().map(|g| (0..m).map(|j| g.derivative(j)).collect()).collect();
    let mut cur: Vec<BigRational> = x.iter().map(|&v| from_f64(v)).collect();
    let tiny = BigRational::new(BigInt::one(), BigInt::one() << (bits - 16));
    for _ in 0..12 {
        let f: Vec<BigRational> = system.polys.iter().map(|g| -g.evaluate(&cur).expect("point")).collect();
        if f.iter().all(|v| v.is_zero()) {
            return Some(cur);
        }
        let a: Vec<Vec<BigRational>> =
            jac.iter().map(|row| row.iter().map(|d| d.evaluate(&cur).expect("point")).collect()).collect();
        let d = solve_rat(a, f)?;
        let step = d.iter().map(|v| v.abs()).max().unwrap_or_else(BigRational::zero);
        cur = cur.iter().zip(&d).map(|(c, s)| dyadic_round(&(c + s), bits)).collect();
        if step < tiny {
            return Some(cur);
        }
    }
    None
}

/// Replaces coordinates by nearby small-denominator rationals when that makes the system vanish exactly.
fn recognize_rational(system: &EinsteinSystem, x: &[BigRational], cfg: &SolveConfig) -> Option<Vec<BigRational>> {
    let close = BigRational::new(BigInt::one(), BigInt::one() << (cfg.precision_bits / 3));
    let cand: Vec<BigRational> = x.iter().map(|v| best_rational(v, cfg.rational_bound)).collect();
    if cand.iter().zip(x).any(|(c, v)| (c - v).abs() > close) {
        return None;
    }
    system.residual_exact(&cand).is_zero().then_some(cand)
}

/// Clusters raw candidates, polishes one representative per cluster and
/// deduplicates the resulting records under the case isometries.
pub fn finish_numeric(
    case: &WallachCase,
    system: &EinsteinSystem,
    candidates: &[Candidate],
    cfg: &SolveConfig,
) -> Vec<SolutionRecord> {
    let mut reps: Vec<&Candidate> = Vec::new();
    for c in candidates {
        if !reps.iter().any(|r| rel_dist(&r.x, &c.x) <= cfg.dedup_tol) {
            reps.push(c);
        }
    }
    let mut records = Vec::new();
    for c in reps {
        let Some(p) = polish(system, &c.x, cfg.precision_bits) else {
            continue;
        };
        if p.iter().any(|v| !v.is_positive()) {
            continue;
        }
        let (free, exact) = match recognize_rational(system, &p, cfg) {
            Some(q) => (q, true),
            None => (p, false),
        };
        let residual = residual_bound(system, &free);
        if residual > cfg.residual_bound {
            continue;
        }
        let full = system.full_point(&free);
        let point = if exact { MetricPoint::exact(full) } else { MetricPoint::approx(full) };
        records.push(SolutionRecord { case: case.id, point, source: Source::Numeric, residual, root: None });
    }
    merge_dedupe(records, case, cfg.dedup_tol)
}

/// Sequential numeric path over all configured starts.
pub fn solve_numeric(case: &WallachCase, system: &EinsteinSystem, cfg: &SolveConfig) -> Vec<SolutionRecord> {
    let cands = numeric_candidates(system, cfg, 0..cfg.starts);
    finish_numeric(case, system, &cands, cfg)
}

/// Lexicographic comparison treating relatively close entries as equal.
fn lex_cmp_tol(a: &[f64], b: &[f64], tol: f64) -> Ordering {
    for (p, q) in a.iter().zip(b) {
        if rel_dist(&[*p], &[*q]) <= tol {
            continue;
        }
        return p.partial_cmp(q).unwrap_or(Ordering::Equal);
    }
    Ordering::Equal
}

/// Orbit member that lies in the normalized family and is lexicographically smallest.
pub fn canonical_point(case: &WallachCase, point: &MetricPoint) -> MetricPoint {
    let f = case.first_index();
    let norm = &case.normalization;
    let mut best: Option<(Vec<f64>, MetricPoint)> = None;
    for perm in &case.isometry_perms {
        let vals = case.permute(perm, &point.values);
        let cand = match norm.pins.first() {
            Some((i, v)) => {
                let c = v / &vals[i - f];
                let scaled = MetricPoint { values: vals.iter().map(|x| x * &c).collect(), exact: point.exact };
                if scaled.exact {
                    scaled
                } else {
                    MetricPoint::approx(scaled.values.iter().map(|x| dyadic_round(x, 400)).collect())
                }
            }
            None => MetricPoint { values: vals, exact: point.exact },
        };
        let fl = cand.to_f64();
        let tol = 1e-9;
        let in_family = norm.pins.iter().all(|(i, v)| rel_dist(&[fl[i - f]], &[to_f64(v)]) <= tol)
            && norm.merges.iter().all(|(a, b)| rel_dist(&[fl[a - f]], &[fl[b - f]]) <= tol);
        if !in_family {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bf, _)) => lex_cmp_tol(&fl, bf, tol) == Ordering::Less,
        };
        if better {
            best = Some((fl, cand));
        }
    }
    best.map(|b| b.1).unwrap_or_else(|| point.clone())
}

/// Canonicalizes under the isometry group, clusters within `tol`, and joins sources.
pub fn merge_dedupe(records: Vec<SolutionRecord>, case: &WallachCase, tol: f64) -> Vec<SolutionRecord> {
    let mut out: Vec<(Vec<f64>, SolutionRecord)> = Vec::new();
    for mut r in records {
        r.point = canonical_point(case, &r.point);
        let fl = r.point.to_f64();
        match out.iter_mut().find(|(g, _)| rel_dist(g, &fl) <= tol) {
            Some((g, kept)) => {
                kept.source = kept.source.join(r.source);
                let take = (r.point.exact && !kept.point.exact)
                    || (r.point.exact == kept.point.exact && r.residual < kept.residual);
                if take {
                    *g = fl;
                    kept.point = r.point;
                    kept.residual = r.residual;
                }
                if kept.root.is_none() {
                    kept.root = r.root;
                }
            }
            None => out.push((fl, r)),
        }
    }
    out.sort_by(|a, b| lex_cmp_tol(&a.0, &b.0, 0.0));
    out.into_iter().map(|p| p.1).collect()
}
