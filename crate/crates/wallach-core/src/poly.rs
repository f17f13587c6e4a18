//! Sparse multivariate polynomials over the rationals.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, parse_rational, BigInt, BigRational};

/// Upper bound on the number of ambient variables.
pub const MAX_VARS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    VariableMismatch,
    ZeroPolynomial,
    MissingVariable(String),
    TooManyVariables(usize),
    ExponentOverflow,
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::VariableMismatch => write!(f, "polynomials live over different variable lists"),
            PolyError::ZeroPolynomial => write!(f, "zero polynomial"),
            PolyError::MissingVariable(v) => write!(f, "no value for variable {v}"),
            PolyError::TooManyVariables(n) => write!(f, "{n} variables exceed the limit of {MAX_VARS}"),
            PolyError::ExponentOverflow => write!(f, "exponent overflow"),
            PolyError::Parse(s) => write!(f, "cannot parse polynomial: {s}"),
        }
    }
}

/// Exponent vector. Slots beyond the ambient variable count stay zero.
///
/// The derived `Ord` is lexicographic with slot 0 most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exps(exps: &[u32]) -> Result<Monomial, PolyError> {
        if exps.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(exps.len()));
        }
        let mut e = [0u16; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(exps) {
            *slot = u16::try_from(x).map_err(|_| PolyError::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn checked_mul(&self, o: &Monomial) -> Option<Monomial> {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i].checked_add(o.0[i])?;
        }
        Some(Monomial(e))
    }

    /// Product; panics on exponent overflow.
    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        self.checked_mul(o).expect("monomial exponent overflow")
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = o.0[i].checked_sub(self.0[i])?;
        }
        Some(Monomial(e))
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i].max(o.0[i]);
        }
        Monomial(e)
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i].min(o.0[i]);
        }
        Monomial(e)
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Highest-priority variable with a nonzero exponent.
    pub fn leading_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }
}

/// Term order. Variable priority follows the ambient variable list (first = highest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    assert!(names.len() <= MAX_VARS, "too many variables");
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Sparse polynomial: monomial → nonzero coefficient over a fixed variable list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> MultiPoly {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: BigRational) -> MultiPoly {
        MultiPoly::monomial(vars, Monomial::ONE, c)
    }

    pub fn var(vars: &Vars, i: usize) -> MultiPoly {
        assert!(i < vars.len());
        MultiPoly::monomial(vars, Monomial::var(i), BigRational::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: BigRational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { vars: vars.clone(), terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(vars: &Vars, it: I) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lex order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn same_vars(&self, o: &MultiPoly) -> bool {
        Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars
    }

    pub fn checked_add(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !self.same_vars(o) {
            return Err(PolyError::VariableMismatch);
        }
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !self.same_vars(o) {
            return Err(PolyError::VariableMismatch);
        }
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !self.same_vars(o) {
            return Err(PolyError::VariableMismatch);
        }
        let mut r = MultiPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.checked_mul(m2).ok_or(PolyError::ExponentOverflow)?;
                r.add_term(m, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut r = MultiPoly::constant(&self.vars, BigRational::one());
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Maximal term under `ord`.
    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(Monomial, BigRational), PolyError> {
        let (m, c) = self
            .terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .ok_or(PolyError::ZeroPolynomial)?;
        Ok((*m, c.clone()))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// Whether only variable `i` (or none) occurs.
    pub fn is_univariate_in(&self, i: usize) -> bool {
        self.terms
            .keys()
            .all(|m| (0..MAX_VARS).all(|j| j == i || m.exp(j) == 0))
    }

    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    /// Exact value at a point given positionally.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        let mut total = BigRational::zero();
        let mut powers: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..self.nvars() {
            let d = self.degree_in(i) as usize;
            if d > 0 && i >= point.len() {
                return Err(PolyError::MissingVariable(self.vars[i].clone()));
            }
            let mut pw = Vec::with_capacity(d + 1);
            pw.push(BigRational::one());
            for k in 0..d {
                let next = &pw[k] * &point[i];
                pw.push(next);
            }
            powers.push(pw);
        }
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t *= &pw[e];
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact value at a point given by variable name.
    pub fn evaluate_named(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational, PolyError> {
        let mut vals = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match point.get(name) {
                Some(v) => vals.push(v.clone()),
                None if self.degree_in(i) == 0 => vals.push(BigRational::zero()),
                None => return Err(PolyError::MissingVariable(name.clone())),
            }
        }
        self.evaluate(&vals)
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut t = crate::arith::to_f64(c);
            for (i, &x) in point.iter().enumerate().take(self.nvars()) {
                let e = m.exp(i);
                if e > 0 {
                    t *= libm::pow(x, e as f64);
                }
            }
            total += t;
        }
        total
    }

    /// Replaces variable `i` by the value `v`; the ambient variable list is kept.
    pub fn substitute(&self, i: usize, v: &BigRational) -> MultiPoly {
        let mut pw: Vec<BigRational> = alloc::vec![BigRational::one()];
        let mut r = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            while pw.len() <= e {
                let next = pw.last().unwrap() * v;
                pw.push(next);
            }
            let mut ex = *m.exps();
            ex[i] = 0;
            r.add_term(Monomial(ex), c * &pw[e]);
        }
        r
    }

    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut ex = *m.exps();
            ex[i] -= 1;
            r.add_term(Monomial(ex), c * BigRational::from_integer(BigInt::from(e)));
        }
        r
    }

    /// `self = content * primitive`, the primitive part having coprime integer
    /// coefficients and a positive lex-leading coefficient.
    pub fn content_primitive(&self) -> Result<(BigRational, MultiPoly), PolyError> {
        let (_, lc) = self.leading_term(MonomialOrder::Lex)?;
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = BigRational::new(num, den);
        if lc.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        Ok((content, prim))
    }

    /// Moves the polynomial onto another variable list; `map[i]` is the new slot of old variable `i`.
    pub fn remap(&self, new_vars: &Vars, map: &[usize]) -> MultiPoly {
        let mut r = MultiPoly::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = [0u16; MAX_VARS];
            for (i, &j) in map.iter().enumerate() {
                e[j] += m.0[i];
            }
            r.add_term(Monomial(e), c.clone());
        }
        r
    }

    /// Lossless structured form: `(exponents, "num/den")` in descending lex order.
    pub fn to_structured(&self) -> Vec<(Vec<u32>, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| ((0..self.nvars()).map(|i| m.exp(i)).collect(), format_rational(c)))
            .collect()
    }

    pub fn from_structured(vars: &Vars, terms: &[(Vec<u32>, String)]) -> Result<MultiPoly, PolyError> {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(PolyError::VariableMismatch);
            }
            let c = parse_rational(c).map_err(|e| PolyError::Parse(e.to_string()))?;
            p.add_term(Monomial::from_exps(e)?, c);
        }
        Ok(p)
    }

    /// Parses text such as `3*x1^2*x4^2*x2 - 7/2*x3 + 1`.
    pub fn parse(vars: &Vars, text: &str) -> Result<MultiPoly, PolyError> {
        let bad = |s: &str| PolyError::Parse(s.to_string());
        let mut p = MultiPoly::zero(vars);
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad(text));
        }
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let bytes = cleaned.as_bytes();
        let mut start = 0;
        let mut neg = false;
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if (c == b'+' || c == b'-') && (i == 0 || bytes[i - 1] != b'^') {
                if i > start {
                    terms.push((neg, &cleaned[start..i]));
                } else if i != 0 {
                    return Err(bad(text));
                }
                neg = c == b'-';
                start = i + 1;
            }
            i += 1;
        }
        if start >= cleaned.len() {
            return Err(bad(text));
        }
        terms.push((neg, &cleaned[start..]));
        for (neg, t) in terms {
            let mut coeff = BigRational::one();
            let mut e = [0u32; MAX_VARS];
            for factor in t.split('*') {
                if factor.is_empty() {
                    return Err(bad(text));
                }
                let first = factor.as_bytes()[0];
                if first.is_ascii_digit() {
                    let c = parse_rational(factor).map_err(|_| bad(factor))?;
                    coeff *= c;
                } else {
                    let (name, pw) = match factor.split_once('^') {
                        Some((n, k)) => (n, k.parse::<u32>().map_err(|_| bad(factor))?),
                        None => (factor, 1),
                    };
                    let idx = vars.iter().position(|v| v == name).ok_or_else(|| bad(factor))?;
                    e[idx] += pw;
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(Monomial::from_exps(&e[..vars.len()])?, coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(format_rational(&a));
            }
            for i in 0..self.nvars() {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    e => factors.push(alloc::format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &'a MultiPoly) -> MultiPoly {
        self.checked_add(o).expect("variable mismatch")
    }
}

impl<'a> Sub for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &'a MultiPoly) -> MultiPoly {
        self.checked_sub(o).expect("variable mismatch")
    }
}

impl<'a> Mul for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &'a MultiPoly) -> MultiPoly {
        self.checked_mul(o).expect("variable mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigRational::one())
    }
}
