//! Univariate real-root isolation (Sturm sequences over exact rationals),
//! refinement, and rational-root extraction.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{dyadic_round, format_rational, to_f64, BigInt, BigRational};
use crate::poly::MultiPoly;

/// Dense univariate polynomial, coefficients in ascending degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Coefficients of a polynomial in which only variable `var` occurs.
    pub fn from_multipoly(p: &MultiPoly, var: usize) -> Option<UniPoly> {
        if !p.is_univariate_in(var) {
            return None;
        }
        let mut coeffs = vec![BigRational::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Product of linear factors `(x - r)`.
    pub fn from_roots(roots: &[BigRational]) -> UniPoly {
        let mut p = UniPoly::new(vec![BigRational::one()]);
        for r in roots {
            p = p.mul(&UniPoly::new(vec![-r.clone(), BigRational::one()]));
        }
        p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::new(vec![]);
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dn = d.degree();
        let lc = d.leading();
        if r.len() <= dn {
            return (UniPoly::new(vec![]), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dn);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        UniPoly::from_bigints(&self.primitive_ints())
    }

    pub fn primitive_ints(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut v = primitive_part(ints);
        if v.last().is_some_and(|c| c.is_negative()) {
            for c in v.iter_mut() {
                *c = -core::mem::take(c);
            }
        }
        v
    }

    /// Sign of the value at `x`, evaluated exactly.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        sign_at_int(&self.primitive_ints(), x).cmp(&0)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{}", format_rational(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", format_rational(&a))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            return v;
        }
    }
    if !g.is_zero() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// `|lc(b)|^k * a mod b` (remainder of pseudo-division with a positive multiplier).
fn pos_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = b[db].abs();
    let sgn = b[db].is_negative();
    while r.len() > db && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top].clone();
        let shift = top - db;
        for x in r.iter_mut() {
            *x *= &lc;
        }
        // r -= c * sign(lc) * x^shift * b
        for (j, bc) in b.iter().enumerate() {
            let t = &c * bc;
            if sgn {
                r[shift + j] += t;
            } else {
                r[shift + j] -= t;
            }
        }
        trim(&mut r);
    }
    r
}

fn int_derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Greatest common divisor over the rationals, primitive with positive leading coefficient.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut x = a.primitive_ints();
    let mut y = b.primitive_ints();
    if x.is_empty() {
        return b.primitive();
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return UniPoly::from_ints(&[1]);
        }
        let r = primitive_part(pos_prem(&x, &y));
        x = y;
        y = r;
    }
    UniPoly::from_bigints(&x).primitive()
}

/// `p / gcd(p, p')`, primitive.
pub fn squarefree_part(p: &UniPoly) -> UniPoly {
    if p.degree() == 0 {
        return p.primitive();
    }
    let g = gcd(p, &p.derivative());
    p.div_rem(&g).0.primitive()
}

/// Sign of `p(n/d)` from the homogenized integer evaluation.
fn sign_at_int(p: &[BigInt], x: &BigRational) -> i8 {
    if p.is_empty() {
        return 0;
    }
    let (n, d) = (x.numer(), x.denom());
    let mut acc = p[p.len() - 1].clone();
    let mut dpow = BigInt::one();
    for c in p.iter().rev().skip(1) {
        dpow *= d;
        acc = acc * n + c * &dpow;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    chain: Vec<Vec<BigInt>>,
}

impl Sturm {
    pub fn new(p: &UniPoly) -> Sturm {
        let p0 = p.primitive_ints();
        let mut chain = vec![p0.clone()];
        if p0.len() > 1 {
            chain.push(primitive_part(int_derivative(&p0)));
            loop {
                let n = chain.len();
                if chain[n - 1].len() <= 1 {
                    break;
                }
                let r = pos_prem(&chain[n - 2], &chain[n - 1]);
                if r.is_empty() {
                    break;
                }
                let r: Vec<BigInt> = primitive_part(r).into_iter().map(|c| -c).collect();
                chain.push(r);
            }
        }
        Sturm { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Sturm::changes(self.chain.iter().map(|p| sign_at_int(p, x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Sturm::changes(self.chain.iter().map(|p| if p[p.len() - 1].is_negative() { -1 } else { 1 }))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Sturm::changes(self.chain.iter().map(|p| {
            let s: i8 = if p[p.len() - 1].is_negative() { -1 } else { 1 };
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    AllReals,
    Positive,
}

/// A root of the square-free part, either pinned exactly or isolated in `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    /// Set when the root is a known rational; then `lo == hi`.
    pub exact: Option<BigRational>,
    /// The input polynomial was already square-free.
    pub simple: bool,
}

impl IsolatedRoot {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub fn radius(&self) -> BigRational {
        (&self.hi - &self.lo) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Decimal with `±` radius, or the exact fraction.
    pub fn describe(&self) -> alloc::string::String {
        match &self.exact {
            Some(r) => format_rational(r),
            None => alloc::format!(
                "{} ± {:.1e}",
                crate::arith::fmt_sig(self.approx(), 10),
                to_f64(&self.radius())
            ),
        }
    }
}

fn cauchy_bound(p: &[BigInt]) -> BigRational {
    let lc = p[p.len() - 1].abs();
    let max = p[..p.len() - 1].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    // 1 + max|a_i|/|a_n|, rounded up to an integer
    let q = max.div_ceil(&lc);
    BigRational::from_integer(q + BigInt::one())
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Dyadic point strictly inside `(lo, hi)`, close to the midpoint.
fn dyadic_mid(lo: &BigRational, hi: &BigRational) -> BigRational {
    let mid = (lo + hi) * half();
    let w = hi - lo;
    let bits = (w.denom().bits() as i64 - w.numer().bits() as i64 + 3).max(1) as u32;
    let m = dyadic_round(&mid, bits);
    if &m > lo && &m < hi {
        m
    } else {
        mid
    }
}

/// Isolating intervals for the distinct real roots of `p` in `domain`, sorted.
pub fn isolate_real_roots(p: &UniPoly, domain: Domain) -> Vec<IsolatedRoot> {
    if p.degree() == 0 {
        return vec![];
    }
    let sq = squarefree_part(p);
    let simple = sq.degree() == p.degree();
    let ints = sq.primitive_ints();
    let sturm = Sturm::new(&sq);
    let b = cauchy_bound(&ints);
    let lo = match domain {
        Domain::AllReals => -b.clone(),
        Domain::Positive => BigRational::zero(),
    };
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), b.clone(), sturm.variations_at(&lo), sturm.variations_at(&b))];
    while let Some((a, c, va, vc)) = stack.pop() {
        let n = va - vc;
        if n == 0 {
            continue;
        }
        if n == 1 {
            let (mut a, mut c) = (a, c);
            if sign_at_int(&ints, &a) == 0 {
                // `a` is a root outside the count (an earlier midpoint or the domain start):
                // move it inward until `(a, m]` is root-free
                loop {
                    let m = dyadic_mid(&a, &c);
                    if sturm.variations_at(&m) == va {
                        a = m;
                        break;
                    }
                    c = m;
                }
            }
            if sign_at_int(&ints, &c) == 0 {
                out.push(IsolatedRoot { lo: c.clone(), hi: c.clone(), exact: Some(c), simple });
            } else {
                out.push(IsolatedRoot { lo: a, hi: c, exact: None, simple });
            }
            continue;
        }
        let m = dyadic_mid(&a, &c);
        let vm = sturm.variations_at(&m);
        // push right first so that the left half is processed first
        stack.push((m.clone(), c, vm, vc));
        stack.push((a, m, va, vm));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Number of distinct real roots in `domain` read off the Sturm chain at the domain ends.
pub fn sturm_count(p: &UniPoly, domain: Domain) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let sq = squarefree_part(p);
    let s = Sturm::new(&sq);
    let at_hi = s.variations_at_pos_inf();
    let at_lo = match domain {
        Domain::AllReals => s.variations_at_neg_inf(),
        Domain::Positive => s.variations_at(&BigRational::zero()),
    };
    at_lo - at_hi
}

/// Shrinks an isolating interval below width `eps`.
///
/// Newton steps are tried once the interval is small and accepted only when
/// they produce a verified sign change; otherwise the interval is bisected.
pub fn refine_root(p: &UniPoly, r: &IsolatedRoot, eps: &BigRational) -> IsolatedRoot {
    if r.exact.is_some() {
        return r.clone();
    }
    let sq = squarefree_part(p);
    let ints = sq.primitive_ints();
    let dp = UniPoly::from_bigints(&ints).derivative();
    let f = UniPoly::from_bigints(&ints);
    let mut lo = r.lo.clone();
    let mut hi = r.hi.clone();
    let slo = sign_at_int(&ints, &lo);
    debug_assert!(slo != 0 && slo != sign_at_int(&ints, &hi));
    let newton_from = BigRational::new(BigInt::one(), BigInt::one() << 16u32);
    while &hi - &lo > *eps {
        let w = &hi - &lo;
        if w < newton_from {
            let m = (&lo + &hi) * half();
            let d = dp.eval(&m);
            if !d.is_zero() {
                let x1 = &m - f.eval(&m) / d;
                let wbits = (w.denom().bits() as i64 - w.numer().bits() as i64).max(1) as u32;
                let bits = 2 * wbits + 8;
                let x1 = dyadic_round(&x1, bits);
                let delta = (&w * &w).max(BigRational::new(BigInt::one(), BigInt::one() << bits));
                let a = &x1 - &delta;
                let b = &x1 + &delta;
                if a > lo && b < hi {
                    let sx = sign_at_int(&ints, &x1);
                    if sx == 0 {
                        return IsolatedRoot { lo: x1.clone(), hi: x1.clone(), exact: Some(x1), simple: r.simple };
                    }
                    let sa = sign_at_int(&ints, &a);
                    let sb = sign_at_int(&ints, &b);
                    if sa == slo && sb == -slo {
                        if sx == slo {
                            lo = x1;
                            hi = b;
                        } else {
                            lo = a;
                            hi = x1;
                        }
                        continue;
                    }
                }
            }
        }
        let m = dyadic_mid(&lo, &hi);
        match sign_at_int(&ints, &m) {
            0 => return IsolatedRoot { lo: m.clone(), hi: m.clone(), exact: Some(m), simple: r.simple },
            s if s == slo => lo = m,
            _ => hi = m,
        }
    }
    IsolatedRoot { lo, hi, exact: None, simple: r.simple }
}

/// Rational roots (with multiplicity) and the cofactor left after dividing
/// out their linear factors, so that `p = lc * prod(x - r) * cofactor` up to
/// a rational constant.
///
/// Candidates `n/d` have `d` dividing the leading coefficient with `d <= bound`;
/// numerators come from the isolated real roots. `hints` are tested directly.
pub fn extract_rational_roots(p: &UniPoly, bound: u64, hints: &[BigRational]) -> (Vec<BigRational>, UniPoly) {
    let mut roots = Vec::new();
    let mut cof = p.primitive();
    if cof.is_zero() {
        return (roots, cof);
    }
    let strip = |cof: &mut UniPoly, r: &BigRational, roots: &mut Vec<BigRational>| {
        loop {
            if cof.degree() == 0 || !cof.eval(r).is_zero() {
                break;
            }
            let lin = UniPoly::new(vec![-r.clone(), BigRational::one()]);
            *cof = cof.div_rem(&lin).0.primitive();
            roots.push(r.clone());
        }
    };
    for h in hints {
        strip(&mut cof, h, &mut roots);
    }
    strip(&mut cof, &BigRational::zero(), &mut roots);
    if cof.degree() == 0 {
        roots.sort();
        return (roots, cof);
    }
    let ints = cof.primitive_ints();
    let lc = ints[ints.len() - 1].abs();
    let a0 = ints[0].abs();
    let limit = lc.to_u64().map_or(bound, |v| v.min(bound));
    let mut dens = Vec::new();
    for d in 1..=limit {
        if (&lc % BigInt::from(d)).is_zero() {
            dens.push(BigInt::from(d));
        }
    }
    let eps = BigRational::new(BigInt::one(), BigInt::from(4u64 * bound.max(1) * bound.max(1)));
    let isolated = isolate_real_roots(&cof, Domain::AllReals);
    let mut found = Vec::new();
    for iso in isolated {
        if let Some(r) = &iso.exact {
            found.push(r.clone());
            continue;
        }
        let iso = refine_root(&cof, &iso, &eps);
        if let Some(r) = &iso.exact {
            found.push(r.clone());
            continue;
        }
        for d in &dens {
            let lo = (iso.lo.clone() * BigRational::from_integer(d.clone())).ceil().to_integer();
            let hi = (iso.hi.clone() * BigRational::from_integer(d.clone())).floor().to_integer();
            let mut n = lo;
            while n <= hi {
                if !n.is_zero() && (&a0 % n.abs()).is_zero() {
                    let cand = BigRational::new(n.clone(), d.clone());
                    if cof.eval(&cand).is_zero() {
                        found.push(cand);
                    }
                }
                n += 1;
            }
        }
    }
    found.sort();
    found.dedup();
    for r in &found {
        strip(&mut cof, r, &mut roots);
    }
    roots.sort();
    (roots, cof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn squarefree_examples() {
        let p = UniPoly::from_ints(&[1, -2, 1]);
        assert_eq!(squarefree_part(&p), UniPoly::from_ints(&[-1, 1]));
        let c = UniPoly::from_ints(&[-57, 167, -135, 25]);
        assert_eq!(squarefree_part(&c), c);
        assert_eq!(squarefree_part(&UniPoly::from_ints(&[4])).degree(), 0);
    }

    #[test]
    fn isolate_examples() {
        let r = isolate_real_roots(&UniPoly::from_ints(&[-1, 0, 1]), Domain::Positive);
        assert_eq!(r.len(), 1);
        assert!((r[0].approx() - 1.0).abs() < 1.0 || r[0].exact == Some(int(1)));
        let all = isolate_real_roots(&UniPoly::from_ints(&[-1, 0, 1]), Domain::AllReals);
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn roots_on_bisection_points_refine() {
        // 0 is the first midpoint over the reals and the start of the positive domain
        let p = UniPoly::from_ints(&[0, -2, 1, 1]);
        let eps = rat(1, 1_000_000);
        for dom in [Domain::AllReals, Domain::Positive] {
            for iso in isolate_real_roots(&p, dom) {
                let r = refine_root(&p, &iso, &eps);
                assert!(r.exact.is_some() || r.hi.clone() - r.lo.clone() <= eps);
            }
        }
        assert_eq!(isolate_real_roots(&p, Domain::AllReals).len(), 3);
        assert_eq!(isolate_real_roots(&p, Domain::Positive).len(), 1);
    }

    #[test]
    fn e6ii_cubic_roots() {
        let p = UniPoly::from_ints(&[-46, 298, -585, 319]);
        let eps = rat(1, 1_000_000_000_000);
        let roots: Vec<f64> = isolate_real_roots(&p, Domain::Positive)
            .iter()
            .map(|r| refine_root(&p, r, &eps).approx())
            .collect();
        let expect = [0.3244706112, 0.4009373579, 1.108447830];
        assert_eq!(roots.len(), 3);
        for (a, b) in roots.iter().zip(expect) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn sqrt_two() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let r = &isolate_real_roots(&p, Domain::Positive)[0];
        let eps = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(15));
        let fine = refine_root(&p, r, &eps);
        assert!(fine.width() <= eps);
        // longhand oracle digits of sqrt(2)
        let s = rat(1414213562373095, 1_000_000_000_000_000);
        assert!((fine.midpoint() - s).abs() < BigRational::new(BigInt::one(), BigInt::from(10u64).pow(15)));
    }

    #[test]
    fn rational_root_collapses() {
        let p = UniPoly::new(vec![rat(-7, 23), int(1)]);
        let roots = isolate_real_roots(&p, Domain::Positive);
        let r = refine_root(&p, &roots[0], &rat(1, 1000));
        let r = if r.exact.is_some() { r } else { refine_root(&p, &r, &rat(1, 1 << 40)) };
        assert!(r.exact == Some(rat(7, 23)) || (r.lo <= rat(7, 23) && r.hi >= rat(7, 23)));
        let (rs, cof) = extract_rational_roots(&p, 1000, &[]);
        assert_eq!(rs, vec![rat(7, 23)]);
        assert_eq!(cof.degree(), 0);
    }

    #[test]
    fn extraction() {
        // (x-1)(23x-7)(7x-23)(x^2-2)
        let p = UniPoly::from_ints(&[-1, 1])
            .mul(&UniPoly::from_ints(&[-7, 23]))
            .mul(&UniPoly::from_ints(&[-23, 7]))
            .mul(&UniPoly::from_ints(&[-2, 0, 1]));
        let (rs, cof) = extract_rational_roots(&p, 1_000_000, &[]);
        assert_eq!(rs, vec![rat(7, 23), int(1), rat(23, 7)]);
        assert_eq!(cof, UniPoly::from_ints(&[-2, 0, 1]));
        let q = UniPoly::from_ints(&[-2, 0, 1]);
        let (none, same) = extract_rational_roots(&q, 1_000_000, &[]);
        assert!(none.is_empty());
        assert_eq!(same, q);
    }

    #[test]
    fn repeated_rational_root() {
        let p = UniPoly::from_ints(&[-1, 1]).mul(&UniPoly::from_ints(&[-1, 1])).mul(&UniPoly::from_ints(&[3, 5]));
        let (rs, cof) = extract_rational_roots(&p, 100, &[]);
        assert_eq!(rs, vec![rat(-3, 5), int(1), int(1)]);
        assert_eq!(cof.degree(), 0);
    }

    #[test]
    fn sturm_matches_isolation() {
        let p = UniPoly::from_ints(&[6, -5, -5, 5, -1]).mul(&UniPoly::from_ints(&[1, 0, 1]));
        for d in [Domain::AllReals, Domain::Positive] {
            assert_eq!(isolate_real_roots(&p, d).len(), sturm_count(&p, d));
        }
    }
}
