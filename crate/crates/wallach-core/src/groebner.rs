//! Buchberger's algorithm over the rationals with Gebauer–Möller pair
//! management, sugar-ordered pair selection and fraction-free reduction.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{BigInt, BigRational};
use crate::poly::{Monomial, MonomialOrder, MultiPoly, PolyError, Vars, MAX_VARS};

/// Generators over an ambient variable list under a fixed term order.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    pub generators: Vec<MultiPoly>,
    pub vars: Vars,
    pub order: MonomialOrder,
}

/// Reduced basis: primitive integer elements with positive leading
/// coefficient, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    pub elements: Vec<MultiPoly>,
    pub order: MonomialOrder,
    pub stats: Stats,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub steps: u64,
    pub pairs_processed: u64,
    pub zero_reductions: u64,
    pub max_degree: u32,
    pub max_coeff_bits: u64,
}

/// Snapshot handed to the progress hook.
#[derive(Clone, Debug, Default)]
pub struct Progress {
    pub pairs_remaining: usize,
    pub basis_len: usize,
    pub steps: u64,
    pub max_degree: u32,
    pub max_coeff_bits: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// Smallest lcm under the term order.
    Normal,
    /// Smallest sugar degree, ties broken by the lcm.
    Sugar,
}

/// Coefficient strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Fraction-free Buchberger over the integers.
    Rational,
    /// Images modulo primes, lifted and verified over the rationals.
    Modular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    pub method: Method,
    /// Reduction-step budget of one Buchberger run (one prime image for [`Method::Modular`]).
    pub max_steps: u64,
    /// Prime images tried before [`Method::Modular`] gives up.
    pub max_primes: usize,
    pub selection: Selection,
    /// Reduce tails of new elements during the main loop, not only at the end.
    pub tail_reduce: bool,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            method: Method::Modular,
            max_steps: 10_000_000,
            max_primes: 4096,
            selection: Selection::Normal,
            tail_reduce: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroebnerError {
    /// Step budget or external cancellation hit; carries the state at that moment.
    BudgetExceeded { steps: u64, pairs_remaining: usize, basis_len: usize },
    EmptyIdeal,
    NoUnivariateElement(String),
    Poly(PolyError),
}

impl fmt::Display for GroebnerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroebnerError::BudgetExceeded { steps, pairs_remaining, basis_len } => write!(
                f,
                "budget exceeded after {steps} reduction steps ({pairs_remaining} pairs pending, {basis_len} basis elements)"
            ),
            GroebnerError::EmptyIdeal => write!(f, "ideal has no nonzero generators"),
            GroebnerError::NoUnivariateElement(v) => write!(f, "basis has no element in {v} alone"),
            GroebnerError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl From<PolyError> for GroebnerError {
    fn from(e: PolyError) -> Self {
        GroebnerError::Poly(e)
    }
}

type Term = (Monomial, BigInt);

/// What pair management needs from a basis element.
pub(crate) trait Lead {
    fn lm(&self) -> &Monomial;
    fn degree(&self) -> u32;
}

impl Lead for IntPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }
}

/// Integer polynomial with terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly {
    terms: Vec<Term>,
}

impl IntPoly {
    fn from_multipoly(p: &MultiPoly, ord: MonomialOrder) -> IntPoly {
        let (_, prim) = p.content_primitive().expect("nonzero");
        let mut terms: Vec<Term> = prim.terms().map(|(m, c)| (*m, c.numer().clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut q = IntPoly { terms };
        q.normalize_sign();
        q
    }

    fn to_multipoly(&self, vars: &Vars) -> MultiPoly {
        MultiPoly::from_terms(vars, self.terms.iter().map(|(m, c)| (*m, BigRational::from_integer(c.clone()))))
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn make_primitive(&mut self) {
        let g = content_of(&self.terms);
        if !g.is_one() && !g.is_zero() {
            for t in &mut self.terms {
                t.1 /= &g;
            }
        }
        self.normalize_sign();
    }

    fn normalize_sign(&mut self) {
        if self.terms.first().is_some_and(|t| t.1.is_negative()) {
            for t in &mut self.terms {
                t.1 = -core::mem::take(&mut t.1);
            }
        }
    }

    fn max_bits(&self) -> u64 {
        self.terms.iter().map(|t| t.1.bits()).max().unwrap_or(0)
    }
}

fn content_of(terms: &[Term]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a*p - b*t*q`, all sorted by decreasing monomial.
fn combine(ord: MonomialOrder, p: &[Term], a: &BigInt, q: &[Term], t: &Monomial, b: &BigInt) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let a_one = a.is_one();
    let (mut i, mut j) = (0, 0);
    let mut qm = if j < q.len() { Some(t.mul(&q[j].0)) } else { None };
    while i < p.len() || qm.is_some() {
        let ordering = match (i < p.len(), &qm) {
            (true, Some(m)) => ord.cmp(&p[i].0, m),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match ordering {
            Ordering::Greater => {
                let c = if a_one { p[i].1.clone() } else { &p[i].1 * a };
                out.push((p[i].0, c));
                i += 1;
            }
            Ordering::Less => {
                let m = qm.unwrap();
                out.push((m, -(&q[j].1 * b)));
                j += 1;
                qm = if j < q.len() { Some(t.mul(&q[j].0)) } else { None };
            }
            Ordering::Equal => {
                let m = qm.unwrap();
                let c = if a_one { p[i].1.clone() } else { &p[i].1 * a } - &q[j].1 * b;
                if !c.is_zero() {
                    out.push((m, c));
                }
                i += 1;
                j += 1;
                qm = if j < q.len() { Some(t.mul(&q[j].0)) } else { None };
            }
        }
    }
    out
}

pub(crate) struct Reducer<'a, P> {
    pub(crate) ord: MonomialOrder,
    pub(crate) polys: &'a [P],
    pub(crate) active: &'a [usize],
}

impl<P: Lead> Reducer<'_, P> {
    pub(crate) fn find(&self, m: &Monomial) -> Option<&P> {
        let mut best: Option<&P> = None;
        for &k in self.active {
            let g = &self.polys[k];
            // smallest leading monomial first: in lex this favours elements in fewer variables
            if g.lm().divides(m) && best.is_none_or(|b| self.ord.cmp(g.lm(), b.lm()) == Ordering::Less) {
                best = Some(g);
            }
        }
        best
    }
}

/// Outcome of a fraction-free reduction: `multiplier * p - sum(...) = remainder`.
struct Reduced {
    remainder: Vec<Term>,
    multiplier: BigInt,
    sugar: u32,
}

/// Fraction-free reduction of `p`. With `full` every term is reduced, otherwise
/// only the head. Content is stripped along the way unless the exact multiplier
/// is requested.
#[allow(clippy::too_many_arguments)]
fn reduce_int(
    ord: MonomialOrder,
    p: Vec<Term>,
    mut sugar: u32,
    red: &Reducer<'_, IntPoly>,
    full: bool,
    track_multiplier: bool,
    steps: &mut u64,
    max_steps: u64,
) -> Result<Reduced, u64> {
    let mut done: Vec<Term> = Vec::new();
    let mut rest = p;
    let mut multiplier = BigInt::one();
    let mut since_strip = 0u32;
    while !rest.is_empty() {
        let head = rest[0].0;
        let g = match red.find(&head) {
            Some(g) => g,
            None => {
                if !full {
                    done.append(&mut rest);
                    break;
                }
                // move the maximal run of irreducible terms in one go
                let mut k = 1;
                while k < rest.len() && red.find(&rest[k].0).is_none() {
                    k += 1;
                }
                done.extend(rest.drain(..k));
                continue;
            }
        };
        *steps += 1;
        if *steps > max_steps {
            return Err(*steps);
        }
        let t = g.lm().quotient_of(&head).expect("divides");
        sugar = sugar.max(t.degree() + g.degree());
        let c = &rest[0].1;
        let d = c.gcd(g.lc());
        let a = g.lc() / &d;
        let b = c / &d;
        let (a, b) = if a.is_negative() { (-a, -b) } else { (a, b) };
        rest = combine(ord, &rest[1..], &a, &g.terms[1..], &t, &b);
        if !a.is_one() {
            for term in &mut done {
                term.1 *= &a;
            }
            if track_multiplier {
                multiplier *= &a;
            }
        }
        since_strip += 1;
        if !track_multiplier && since_strip >= 1 {
            since_strip = 0;
            let mut gc = content_of(&done);
            if !gc.is_one() {
                for (_, c) in &rest {
                    gc = gc.gcd(c);
                    if gc.is_one() {
                        break;
                    }
                }
            }
            if !gc.is_one() && !gc.is_zero() {
                for term in done.iter_mut().chain(rest.iter_mut()) {
                    term.1 /= &gc;
                }
            }
        }
    }
    Ok(Reduced { remainder: done, multiplier, sugar })
}

pub(crate) struct Pair {
    pub(crate) i: usize,
    pub(crate) j: usize,
    pub(crate) lcm: Monomial,
    sugar: u32,
}

pub(crate) struct Engine<P> {
    pub(crate) ord: MonomialOrder,
    pub(crate) polys: Vec<P>,
    sugars: Vec<u32>,
    pub(crate) active: Vec<usize>,
    pub(crate) pairs: Vec<Pair>,
}

impl<P: Lead> Engine<P> {
    pub(crate) fn new(ord: MonomialOrder) -> Self {
        Engine { ord, polys: Vec::new(), sugars: Vec::new(), active: Vec::new(), pairs: Vec::new() }
    }

    /// Adds a new element and updates the pair set.
    pub(crate) fn push(&mut self, p: P, sugar: u32) {
        self.polys.push(p);
        self.sugars.push(sugar);
        self.update(self.polys.len() - 1);
    }

    pub(crate) fn pair_sugar_of(p: &Pair) -> u32 {
        p.sugar
    }

    /// Active elements with redundant leading monomials dropped, sorted by increasing LM.
    pub(crate) fn minimal(&self) -> Vec<usize> {
        let mut active: Vec<usize> = Vec::new();
        for (k, &a) in self.active.iter().enumerate() {
            let la = self.polys[a].lm();
            let redundant = self.active.iter().enumerate().any(|(j, &b)| {
                let lb = self.polys[b].lm();
                j != k && lb.divides(la) && (lb != la || j < k)
            });
            if !redundant {
                active.push(a);
            }
        }
        active.sort_by(|&a, &b| self.ord.cmp(self.polys[a].lm(), self.polys[b].lm()));
        active
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugars[i] - self.polys[i].lm().degree();
        let sj = self.sugars[j] - self.polys[j].lm().degree();
        si.max(sj) + lcm.degree()
    }

    /// Gebauer–Möller update after adding element `h`.
    fn update(&mut self, h: usize) {
        let lh = *self.polys[h].lm();
        let cands: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, lh.lcm(self.polys[g].lm()))).collect();
        let mut keep = vec![true; cands.len()];
        for (a, (g1, l1)) in cands.iter().enumerate() {
            if lh.coprime(self.polys[*g1].lm()) {
                continue;
            }
            for (b, (_, l2)) in cands.iter().enumerate() {
                if a == b || !keep[b] {
                    continue;
                }
                if l2.divides(l1) && (l2 != l1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // chain criterion on existing pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && lh.lcm(polys[p.i].lm()) != p.lcm
                && lh.lcm(polys[p.j].lm()) != p.lcm)
        });
        for (a, (g, l)) in cands.iter().enumerate() {
            if keep[a] && !lh.coprime(self.polys[*g].lm()) {
                let sugar = self.pair_sugar(*g, h, l);
                self.pairs.push(Pair { i: *g, j: h, lcm: *l, sugar });
            }
        }
        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(polys[g].lm()));
        self.active.push(h);
    }

    pub(crate) fn pop_pair(&mut self, sel: Selection) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let key = |p: &Pair| (p.sugar, p.lcm);
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let less = match sel {
                Selection::Normal => ord.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))) == Ordering::Less,
                Selection::Sugar => {
                    let (sa, la) = key(a);
                    let (sb, lb) = key(b);
                    sa.cmp(&sb).then(ord.cmp(&la, &lb)).then((a.i, a.j).cmp(&(b.i, b.j))) == Ordering::Less
                }
            };
            if less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

impl Engine<IntPoly> {
    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let tf = f.lm().quotient_of(&p.lcm).unwrap();
        let tg = g.lm().quotient_of(&p.lcm).unwrap();
        let d = f.lc().gcd(g.lc());
        let a = g.lc() / &d;
        let b = f.lc() / &d;
        // a*tf*f - b*tg*g, heads cancel
        let ftail: Vec<Term> = f.terms[1..].iter().map(|(m, c)| (tf.mul(m), c.clone())).collect();
        combine(self.ord, &ftail, &a, &g.terms[1..], &tg, &b)
    }
}

/// Buchberger's algorithm. `progress` is polled between pairs; returning
/// `false` aborts with [`GroebnerError::BudgetExceeded`].
pub fn buchberger(
    ideal: &Ideal,
    cfg: &GroebnerConfig,
    progress: &mut dyn FnMut(&Progress) -> bool,
) -> Result<GroebnerBasis, GroebnerError> {
    let ord = ideal.order;
    let mut eng: Engine<IntPoly> = Engine::new(ord);
    let mut stats = Stats::default();
    let budget_err = |steps: u64, eng: &Engine<IntPoly>| GroebnerError::BudgetExceeded {
        steps,
        pairs_remaining: eng.pairs.len(),
        basis_len: eng.active.len(),
    };
    for g in &ideal.generators {
        if g.vars() != &ideal.vars {
            return Err(GroebnerError::Poly(PolyError::VariableMismatch));
        }
        if g.is_zero() {
            continue;
        }
        let p = IntPoly::from_multipoly(g, ord);
        let deg = p.degree();
        eng.push(p, deg);
    }
    if eng.polys.is_empty() {
        return Err(GroebnerError::EmptyIdeal);
    }
    while let Some(pair) = eng.pop_pair(cfg.selection) {
        let snapshot = Progress {
            pairs_remaining: eng.pairs.len() + 1,
            basis_len: eng.active.len(),
            steps: stats.steps,
            max_degree: stats.max_degree,
            max_coeff_bits: stats.max_coeff_bits,
        };
        if !progress(&snapshot) {
            return Err(budget_err(stats.steps, &eng));
        }
        stats.pairs_processed += 1;
        let s = eng.spoly(&pair);
        let red = Reducer { ord, polys: &eng.polys, active: &eng.active };
        let r = reduce_int(ord, s, pair.sugar, &red, cfg.tail_reduce, false, &mut stats.steps, cfg.max_steps)
            .map_err(|st| budget_err(st, &eng))?;
        if r.remainder.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        let mut h = IntPoly { terms: r.remainder };
        h.make_primitive();
        stats.max_degree = stats.max_degree.max(h.degree());
        stats.max_coeff_bits = stats.max_coeff_bits.max(h.max_bits());
        eng.push(h, r.sugar);
    }
    // interreduce the minimal basis
    let active = eng.minimal();
    let mut reduced: Vec<IntPoly> = Vec::with_capacity(active.len());
    for (k, &idx) in active.iter().enumerate() {
        let others: Vec<usize> = active.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &i)| i).collect();
        let red = Reducer { ord, polys: &eng.polys, active: &others };
        let p = &eng.polys[idx];
        let head = p.terms[0].clone();
        let tail = p.terms[1..].to_vec();
        let r = reduce_int(ord, tail, 0, &red, true, true, &mut stats.steps, u64::MAX).expect("unbounded");
        let mut terms = Vec::with_capacity(r.remainder.len() + 1);
        terms.push((head.0, head.1 * &r.multiplier));
        terms.extend(r.remainder);
        let mut q = IntPoly { terms };
        q.make_primitive();
        reduced.push(q);
    }
    for q in &reduced {
        stats.max_coeff_bits = stats.max_coeff_bits.max(q.max_bits());
    }
    let elements = reduced.iter().map(|q| q.to_multipoly(&ideal.vars)).collect();
    Ok(GroebnerBasis { elements, order: ord, stats })
}

/// Reduced Gröbner basis with the configured method.
pub fn groebner(
    ideal: &Ideal,
    cfg: &GroebnerConfig,
    progress: &mut dyn FnMut(&Progress) -> bool,
) -> Result<GroebnerBasis, GroebnerError> {
    match cfg.method {
        Method::Rational => buchberger(ideal, cfg, progress),
        Method::Modular => crate::modular::groebner_modular(ideal, cfg, progress),
    }
}

/// Multivariate division remainder of `p` by `basis` (exact, over the rationals).
pub fn reduce(p: &MultiPoly, basis: &[MultiPoly], ord: MonomialOrder) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let polys: Vec<IntPoly> = basis.iter().filter(|b| !b.is_zero()).map(|b| IntPoly::from_multipoly(b, ord)).collect();
    let active: Vec<usize> = (0..polys.len()).collect();
    let red = Reducer { ord, polys: &polys, active: &active };
    let (content, prim) = p.content_primitive().expect("nonzero");
    let start = IntPoly::from_multipoly(&prim, ord);
    let mut steps = 0;
    let r = reduce_int(ord, start.terms, 0, &red, true, true, &mut steps, u64::MAX).expect("unbounded");
    let scale = content / BigRational::from_integer(r.multiplier);
    IntPoly { terms: r.remainder }.to_multipoly(p.vars()).scale(&scale)
}

/// Whether `p` has normal form zero modulo `basis`. Only heads are reduced,
/// which is all a zero test needs.
pub fn reduces_to_zero(p: &MultiPoly, basis: &[MultiPoly], ord: MonomialOrder) -> bool {
    if p.is_zero() {
        return true;
    }
    let polys: Vec<IntPoly> = basis.iter().filter(|b| !b.is_zero()).map(|b| IntPoly::from_multipoly(b, ord)).collect();
    let active: Vec<usize> = (0..polys.len()).collect();
    let red = Reducer { ord, polys: &polys, active: &active };
    let start = IntPoly::from_multipoly(p, ord);
    let mut steps = 0;
    let r = reduce_int(ord, start.terms, 0, &red, false, true, &mut steps, u64::MAX).expect("unbounded");
    r.remainder.is_empty()
}

/// S-polynomial `lcm/LT(a) * a - lcm/LT(b) * b`.
pub fn s_polynomial(a: &MultiPoly, b: &MultiPoly, ord: MonomialOrder) -> Result<MultiPoly, PolyError> {
    let (ma, ca) = a.leading_term(ord)?;
    let (mb, cb) = b.leading_term(ord)?;
    let l = ma.lcm(&mb);
    let ta = ma.quotient_of(&l).unwrap();
    let tb = mb.quotient_of(&l).unwrap();
    let left = a.mul_monomial(&ta).scale(&ca.recip());
    let right = b.mul_monomial(&tb).scale(&cb.recip());
    left.checked_sub(&right)
}

/// Adjoins `z * prod(vars) - 1` with a fresh variable `z` placed first (highest in lex).
pub fn saturate_nonvanishing(system: &[MultiPoly], vars: &Vars) -> Ideal {
    let mut names: Vec<String> = Vec::with_capacity(vars.len() + 1);
    let mut zname = String::from("z");
    while vars.contains(&zname) {
        zname.push('_');
    }
    names.push(zname);
    names.extend(vars.iter().cloned());
    assert!(names.len() <= MAX_VARS, "too many variables");
    let new_vars: Vars = names.into();
    let map: Vec<usize> = (1..=vars.len()).collect();
    let mut e = [0u32; MAX_VARS];
    for slot in e.iter_mut().take(vars.len() + 1) {
        *slot = 1;
    }
    let aux = MultiPoly::from_terms(
        &new_vars,
        [
            (Monomial::from_exps(&e[..vars.len() + 1]).unwrap(), BigRational::one()),
            (Monomial::ONE, -BigRational::one()),
        ],
    );
    let mut generators = vec![aux];
    generators.extend(system.iter().map(|p| p.remap(&new_vars, &map)));
    Ideal { generators, vars: new_vars, order: MonomialOrder::Lex }
}

/// The basis element involving only variable `keep`.
pub fn eliminant(basis: &GroebnerBasis, keep: usize) -> Result<MultiPoly, GroebnerError> {
    basis
        .elements
        .iter()
        .find(|g| !g.is_zero() && g.is_univariate_in(keep) && g.degree_in(keep) > 0)
        .cloned()
        .ok_or_else(|| {
            let name = basis.elements.first().map(|g| g.vars()[keep].clone()).unwrap_or_default();
            GroebnerError::NoUnivariateElement(name)
        })
}

/// Post-hoc Buchberger criterion: every S-polynomial reduces to zero. Pairs
/// with coprime leading monomials are skipped (their S-polynomials always do).
pub fn is_groebner(basis: &[MultiPoly], ord: MonomialOrder) -> bool {
    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading_term(ord).expect("nonzero").0).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if lms[i].coprime(&lms[j]) {
                continue;
            }
            let s = s_polynomial(&basis[i], &basis[j], ord).expect("nonzero");
            if !reduces_to_zero(&s, basis, ord) {
                return false;
            }
        }
    }
    true
}

/// No leading monomial divides a term of another element.
pub fn is_reduced(basis: &[MultiPoly], ord: MonomialOrder) -> bool {
    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading_term(ord).unwrap().0).collect();
    for (i, g) in basis.iter().enumerate() {
        for (j, l) in lms.iter().enumerate() {
            if i != j && g.terms().any(|(m, _)| l.divides(m)) {
                return false;
            }
        }
    }
    true
}

pub fn no_progress(_: &Progress) -> bool {
    true
}

impl GroebnerBasis {
    pub fn to_text(&self) -> Vec<String> {
        self.elements.iter().map(|g| g.to_string()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::poly::vars;

    fn p(v: &Vars, s: &str) -> MultiPoly {
        MultiPoly::parse(v, s).unwrap()
    }

    fn gb(v: &Vars, gens: &[&str]) -> GroebnerBasis {
        let ideal = Ideal { generators: gens.iter().map(|s| p(v, s)).collect(), vars: v.clone(), order: MonomialOrder::Lex };
        buchberger(&ideal, &GroebnerConfig::default(), &mut no_progress).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let v = vars(&["x", "y"]);
        assert!(reduce(&p(&v, "x^2"), &[p(&v, "x")], MonomialOrder::Lex).is_zero());
        assert_eq!(reduce(&p(&v, "x^2 + y"), &[p(&v, "x - y")], MonomialOrder::Lex), p(&v, "y^2 + y"));
        assert_eq!(reduce(&p(&v, "3*x^2 + y"), &[p(&v, "2*x - y")], MonomialOrder::Lex), p(&v, "3/4*y^2 + y"));
        assert!(reduces_to_zero(&p(&v, "6*x^2 - 3*y^2"), &[p(&v, "2*x - y"), p(&v, "y^2")], MonomialOrder::Lex));
        assert!(!reduces_to_zero(&p(&v, "x^2 + y"), &[p(&v, "x - y")], MonomialOrder::Lex));
        // not a basis: the S-polynomial of the two leaves y^2 - 1
        assert!(!is_groebner(&[p(&v, "x*y - 1"), p(&v, "x - y")], MonomialOrder::Lex));
    }

    #[test]
    fn s_polynomial_examples() {
        let v = vars(&["x", "y"]);
        let o = MonomialOrder::Lex;
        assert_eq!(s_polynomial(&p(&v, "x^2 - 1"), &p(&v, "x - 1"), o).unwrap(), p(&v, "x - 1"));
        let q = p(&v, "x*y + 3");
        assert!(s_polynomial(&q, &q, o).unwrap().is_zero());
        let s = s_polynomial(&p(&v, "x"), &p(&v, "y"), o).unwrap();
        assert!(reduce(&s, &[p(&v, "x"), p(&v, "y")], o).is_zero());
        assert_eq!(s_polynomial(&MultiPoly::zero(&v), &q, o), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn circle_line() {
        let v = vars(&["x", "y"]);
        let b = gb(&v, &["x^2 + y^2 - 1", "x - y"]);
        assert_eq!(b.elements, vec![p(&v, "2*y^2 - 1"), p(&v, "x - y")]);
        assert!(is_groebner(&b.elements, MonomialOrder::Lex));
        assert!(is_reduced(&b.elements, MonomialOrder::Lex));
    }

    #[test]
    fn single_generator() {
        let v = vars(&["x"]);
        let b = gb(&v, &["x - 1"]);
        assert_eq!(b.elements, vec![p(&v, "x - 1")]);
        assert_eq!(eliminant(&b, 0).unwrap(), p(&v, "x - 1"));
    }

    #[test]
    fn cyclic3() {
        let v = vars(&["x", "y", "z"]);
        let gens = ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"];
        let b = gb(&v, &gens);
        assert!(is_groebner(&b.elements, MonomialOrder::Lex));
        assert!(is_reduced(&b.elements, MonomialOrder::Lex));
        assert_eq!(eliminant(&b, 2).unwrap(), p(&v, "z^3 - 1"));
        for g in gens {
            assert!(reduce(&p(&v, g), &b.elements, MonomialOrder::Lex).is_zero());
        }
        let sugar = GroebnerConfig { selection: Selection::Sugar, tail_reduce: false, ..Default::default() };
        let ideal = Ideal { generators: gens.iter().map(|s| p(&v, s)).collect(), vars: v.clone(), order: MonomialOrder::Lex };
        let b2 = buchberger(&ideal, &sugar, &mut no_progress).unwrap();
        assert_eq!(b.elements, b2.elements);
    }

    #[test]
    fn grevlex_basis() {
        let v = vars(&["x", "y", "z"]);
        let gens = ["x^2 + y*z - 2", "y^2 + x*z - 3", "x*y + z^2 - 5"];
        let ideal = Ideal { generators: gens.iter().map(|s| p(&v, s)).collect(), vars: v.clone(), order: MonomialOrder::GrevLex };
        let b = buchberger(&ideal, &GroebnerConfig::default(), &mut no_progress).unwrap();
        assert!(is_groebner(&b.elements, MonomialOrder::GrevLex));
        assert!(is_reduced(&b.elements, MonomialOrder::GrevLex));
    }

    #[test]
    fn budget_and_cancel() {
        let v = vars(&["x", "y", "z"]);
        let gens = ["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"];
        let ideal = Ideal { generators: gens.iter().map(|s| p(&v, s)).collect(), vars: v.clone(), order: MonomialOrder::Lex };
        let tiny = GroebnerConfig { max_steps: 0, ..Default::default() };
        assert!(matches!(buchberger(&ideal, &tiny, &mut no_progress), Err(GroebnerError::BudgetExceeded { .. })));
        let mut calls = 0;
        let mut stop = |_: &Progress| {
            calls += 1;
            calls < 2
        };
        assert!(matches!(buchberger(&ideal, &GroebnerConfig::default(), &mut stop), Err(GroebnerError::BudgetExceeded { .. })));
    }

    #[test]
    fn saturation_shape() {
        let v = vars(&["x1", "x2", "x3", "x4"]);
        let sys = vec![p(&v, "x1 - x2"), p(&v, "x3*x4 - 1"), p(&v, "x1 + x4"), p(&v, "x2 - 2")];
        let ideal = saturate_nonvanishing(&sys, &v);
        assert_eq!(ideal.generators.len(), 5);
        assert_eq!(&*ideal.vars[0], "z");
        assert_eq!(ideal.generators[0].to_string(), "z*x1*x2*x3*x4 - 1");
        let one = vars(&["x"]);
        let empty = saturate_nonvanishing(&[], &one);
        assert_eq!(empty.generators.len(), 1);
        assert_eq!(empty.generators[0].to_string(), "z*x - 1");
    }

    #[test]
    fn saturation_removes_axis_solutions() {
        // x*(x-1) = 0 has the root 0, which saturation discards
        let v = vars(&["x"]);
        let ideal = saturate_nonvanishing(&[p(&v, "x^2 - x")], &v);
        let b = buchberger(&ideal, &GroebnerConfig::default(), &mut no_progress).unwrap();
        let e = eliminant(&b, 1).unwrap();
        assert_eq!(e.to_string(), "x - 1");
        assert!(e.evaluate(&[int(0), int(1)]).unwrap().is_zero());
    }
}
