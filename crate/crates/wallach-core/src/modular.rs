//! Multi-modular Gröbner bases: images modulo word-size primes, lifted by
//! Chinese remaindering and rational reconstruction, then verified over the
//! rationals.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{BigInt, BigRational};
use crate::groebner::{
    reduces_to_zero, Engine, GroebnerBasis, GroebnerConfig, GroebnerError, Ideal, Lead, Progress, Reducer,
    Stats,
};
use crate::poly::{Monomial, MonomialOrder, MultiPoly};

type ModTerm = (Monomial, u64);

/// Monic polynomial over Z/p, terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ModPoly {
    terms: Vec<ModTerm>,
}

impl Lead for ModPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn make_monic(terms: &mut [ModTerm], p: u64) {
    let lc = terms[0].1;
    if lc != 1 {
        let inv = inv_mod(lc, p);
        for t in terms.iter_mut() {
            t.1 = mul_mod(t.1, inv, p);
        }
    }
}

/// `a - c*t*g`, with `a` and `g` sorted by decreasing monomial.
fn sub_mul(ord: MonomialOrder, a: &[ModTerm], c: u64, t: &Monomial, g: &[ModTerm], p: u64) -> Vec<ModTerm> {
    let mut out = Vec::with_capacity(a.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < g.len() {
        let gm = if j < g.len() { Some(t.mul(&g[j].0)) } else { None };
        let o = match (i < a.len(), &gm) {
            (true, Some(m)) => ord.cmp(&a[i].0, m),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match o {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.unwrap(), p - mul_mod(c, g[j].1, p)));
                j += 1;
            }
            Ordering::Equal => {
                let v = (a[i].1 + p - mul_mod(c, g[j].1, p)) % p;
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full or head reduction over Z/p. `Err` carries the step count at the budget.
fn reduce_mod(
    ord: MonomialOrder,
    mut rest: Vec<ModTerm>,
    red: &Reducer<'_, ModPoly>,
    full: bool,
    p: u64,
    steps: &mut u64,
    max_steps: u64,
) -> Result<Vec<ModTerm>, u64> {
    let mut done = Vec::new();
    while !rest.is_empty() {
        let head = rest[0].0;
        match red.find(&head) {
            Some(g) => {
                *steps += 1;
                if *steps > max_steps {
                    return Err(*steps);
                }
                let t = g.lm().quotient_of(&head).expect("divides");
                let c = rest[0].1;
                rest = sub_mul(ord, &rest[1..], c, &t, &g.terms[1..], p);
            }
            None if !full => {
                done.append(&mut rest);
            }
            None => {
                let mut k = 1;
                while k < rest.len() && red.find(&rest[k].0).is_none() {
                    k += 1;
                }
                done.extend(rest.drain(..k));
            }
        }
    }
    Ok(done)
}

/// Reduced basis of the ideal modulo one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModImage {
    pub prime: u64,
    /// Leading monomials, increasing.
    pub lms: Vec<Monomial>,
    /// Monic elements, terms sorted by decreasing monomial.
    pub elements: Vec<Vec<(Monomial, u64)>>,
}

impl ModImage {
    fn shape(&self) -> Vec<Vec<Monomial>> {
        self.elements.iter().map(|e| e.iter().map(|t| t.0).collect()).collect()
    }
}

fn to_mod(g: &MultiPoly, ord: MonomialOrder, p: u64) -> Option<ModPoly> {
    let (_, prim) = g.content_primitive().ok()?;
    let pb = BigInt::from(p);
    let mut terms: Vec<ModTerm> = prim
        .terms()
        .map(|(m, c)| {
            let r = c.numer().mod_floor(&pb);
            (*m, r.iter_u64_digits().next().unwrap_or(0))
        })
        .filter(|t| t.1 != 0)
        .collect();
    terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    // a prime dividing a leading coefficient changes the leading monomial
    if terms.first().map(|t| t.0) != Some(prim.leading_term(ord).ok()?.0) {
        return None;
    }
    make_monic(&mut terms, p);
    Some(ModPoly { terms })
}

/// Buchberger over Z/p with the same pair handling as the rational engine.
/// `Ok(None)` means the prime divides a leading coefficient of the input.
pub fn image_mod_p(
    ideal: &Ideal,
    cfg: &GroebnerConfig,
    p: u64,
    steps: &mut u64,
    progress: &mut dyn FnMut(&Progress) -> bool,
) -> Result<Option<ModImage>, GroebnerError> {
    let ord = ideal.order;
    let mut eng: Engine<ModPoly> = Engine::new(ord);
    for g in ideal.generators.iter().filter(|g| !g.is_zero()) {
        match to_mod(g, ord, p) {
            Some(m) => {
                let d = m.degree();
                eng.push(m, d);
            }
            None => return Ok(None),
        }
    }
    if eng.polys.is_empty() {
        return Err(GroebnerError::EmptyIdeal);
    }
    let budget = |st: u64, eng: &Engine<ModPoly>| GroebnerError::BudgetExceeded {
        steps: st,
        pairs_remaining: eng.pairs.len(),
        basis_len: eng.active.len(),
    };
    let mut max_degree = 0;
    while let Some(pair) = eng.pop_pair(cfg.selection) {
        let snap = Progress {
            pairs_remaining: eng.pairs.len() + 1,
            basis_len: eng.active.len(),
            steps: *steps,
            max_degree,
            max_coeff_bits: 0,
        };
        if !progress(&snap) {
            return Err(budget(*steps, &eng));
        }
        let f = &eng.polys[pair.i];
        let g = &eng.polys[pair.j];
        let tf = f.lm().quotient_of(&pair.lcm).unwrap();
        let tg = g.lm().quotient_of(&pair.lcm).unwrap();
        let ftail: Vec<ModTerm> = f.terms[1..].iter().map(|(m, c)| (tf.mul(m), *c)).collect();
        let s = sub_mul(ord, &ftail, 1, &tg, &g.terms[1..], p);
        let sugar = Engine::<ModPoly>::pair_sugar_of(&pair);
        let red = Reducer { ord, polys: &eng.polys, active: &eng.active };
        let mut r = reduce_mod(ord, s, &red, cfg.tail_reduce, p, steps, cfg.max_steps).map_err(|st| budget(st, &eng))?;
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r, p);
        let h = ModPoly { terms: r };
        let deg = h.degree();
        max_degree = max_degree.max(deg);
        eng.push(h, sugar.max(deg));
    }
    let active = eng.minimal();
    let mut elements = Vec::with_capacity(active.len());
    for (k, &idx) in active.iter().enumerate() {
        let others: Vec<usize> = active.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &i)| i).collect();
        let red = Reducer { ord, polys: &eng.polys, active: &others };
        let g = &eng.polys[idx];
        let tail = reduce_mod(ord, g.terms[1..].to_vec(), &red, true, p, steps, u64::MAX).expect("unbounded");
        let mut terms = vec![g.terms[0]];
        terms.extend(tail);
        elements.push(terms);
    }
    let lms = elements.iter().map(|e| e[0].0).collect();
    Ok(Some(ModImage { prime: p, lms, elements }))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1 + (d > 2) as u64;
    }
    true
}

/// Primes below 2^31 in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&n| is_prime(n))
}

/// `n/d` with `|n|, d <= sqrt(m/2)` and `n ≡ a*d (mod m)`, if one exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = core::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = core::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Residues of every coefficient of a fixed basis shape, combined over the primes seen so far.
struct Lift {
    shape: Vec<Vec<Monomial>>,
    modulus: BigInt,
    residues: Vec<Vec<BigInt>>,
    count: usize,
}

impl Lift {
    fn new(img: &ModImage) -> Lift {
        Lift {
            shape: img.shape(),
            modulus: BigInt::from(img.prime),
            residues: img.elements.iter().map(|e| e.iter().map(|t| BigInt::from(t.1)).collect()).collect(),
            count: 1,
        }
    }

    fn add(&mut self, img: &ModImage) {
        let p = img.prime;
        let pb = BigInt::from(p);
        let m_mod_p = (&self.modulus % &pb).iter_u64_digits().next().unwrap_or(0);
        let inv = inv_mod(m_mod_p, p);
        for (res, e) in self.residues.iter_mut().zip(&img.elements) {
            for (x, t) in res.iter_mut().zip(e) {
                let xp = (&*x % &pb).iter_u64_digits().next().unwrap_or(0);
                let k = mul_mod((t.1 + p - xp) % p, inv, p);
                *x += &self.modulus * BigInt::from(k);
            }
        }
        self.modulus *= pb;
        self.count += 1;
    }

    fn reconstruct(&self) -> Option<Vec<Vec<BigRational>>> {
        let mut out = Vec::with_capacity(self.residues.len());
        for res in &self.residues {
            let mut row = Vec::with_capacity(res.len());
            for x in res {
                row.push(rational_reconstruction(x, &self.modulus)?);
            }
            out.push(row);
        }
        Some(out)
    }
}

fn agrees_mod(cand: &[Vec<BigRational>], img: &ModImage) -> bool {
    let pb = BigInt::from(img.prime);
    cand.iter().zip(&img.elements).all(|(row, e)| {
        row.iter().zip(e).all(|(c, t)| {
            let d = c.denom().mod_floor(&pb);
            if d.is_zero() {
                return false;
            }
            let d = d.iter_u64_digits().next().unwrap_or(0);
            let n = c.numer().mod_floor(&pb).iter_u64_digits().next().unwrap_or(0);
            mul_mod(n, inv_mod(d, img.prime), img.prime) == t.1
        })
    })
}

/// Exact check of a candidate: it is a Gröbner basis and contains the input ideal.
pub fn verify(ideal: &Ideal, basis: &[MultiPoly]) -> bool {
    let ord = ideal.order;
    ideal.generators.iter().all(|g| reduces_to_zero(g, basis, ord)) && crate::groebner::is_groebner(basis, ord)
}

/// Bookkeeping of a modular run, reported in [`Stats`].
fn stats_for(steps: u64, primes: usize, basis: &[MultiPoly]) -> Stats {
    let mut st = Stats { steps, pairs_processed: primes as u64, ..Stats::default() };
    for g in basis {
        st.max_degree = st.max_degree.max(g.total_degree());
        for (_, c) in g.terms() {
            st.max_coeff_bits = st.max_coeff_bits.max(c.numer().bits());
        }
    }
    st
}

/// Reduced Gröbner basis by the multi-modular method. The step budget applies to
/// each prime image; `max_primes` bounds the number of images.
pub fn groebner_modular(
    ideal: &Ideal,
    cfg: &GroebnerConfig,
    progress: &mut dyn FnMut(&Progress) -> bool,
) -> Result<GroebnerBasis, GroebnerError> {
    let ord = ideal.order;
    let mut steps = 0u64;
    // leading-monomial signatures seen so far; the most frequent one is trusted
    let mut lifts: Vec<Lift> = Vec::new();
    let mut next_try = 2usize;
    let mut pending: Option<(usize, Vec<Vec<BigRational>>)> = None;
    let mut used = 0usize;
    for p in primes() {
        if used >= cfg.max_primes {
            return Err(GroebnerError::BudgetExceeded { steps, pairs_remaining: 0, basis_len: 0 });
        }
        let mut image_steps = 0;
        let img = image_mod_p(ideal, cfg, p, &mut image_steps, progress).map_err(|e| match e {
            GroebnerError::BudgetExceeded { pairs_remaining, basis_len, .. } => {
                GroebnerError::BudgetExceeded { steps: steps + image_steps, pairs_remaining, basis_len }
            }
            e => e,
        })?;
        steps += image_steps;
        let img = match img {
            Some(img) => img,
            None => continue,
        };
        used += 1;
        let shape = img.shape();
        let k = match lifts.iter().position(|l| l.shape == shape) {
            Some(k) => k,
            None => {
                lifts.push(Lift::new(&img));
                continue;
            }
        };
        if let Some((from, cand)) = pending.take() {
            if k == from && agrees_mod(&cand, &img) {
                let basis: Vec<MultiPoly> = lifts[k]
                    .shape
                    .iter()
                    .zip(&cand)
                    .map(|(ms, cs)| {
                        let q = MultiPoly::from_terms(&ideal.vars, ms.iter().copied().zip(cs.iter().cloned()));
                        integer_primitive(&q, ord)
                    })
                    .collect();
                if verify(ideal, &basis) {
                    let stats = stats_for(steps, used, &basis);
                    return Ok(GroebnerBasis { elements: basis, order: ord, stats });
                }
            }
        }
        lifts[k].add(&img);
        let best = (0..lifts.len()).max_by_key(|&i| (lifts[i].count, usize::MAX - i)).unwrap();
        if k == best && lifts[k].count >= next_try {
            next_try = lifts[k].count + (lifts[k].count / 4).max(1);
            pending = lifts[k].reconstruct().map(|c| (k, c));
        }
    }
    Err(GroebnerError::BudgetExceeded { steps, pairs_remaining: 0, basis_len: 0 })
}

/// Primitive integer multiple with positive leading coefficient.
fn integer_primitive(q: &MultiPoly, ord: MonomialOrder) -> MultiPoly {
    let (_, prim) = q.content_primitive().expect("nonzero");
    match prim.leading_term(ord) {
        Ok((_, c)) if c.is_negative() => -&prim,
        _ => prim,
    }
}
