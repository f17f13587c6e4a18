//! Triple coefficients, Ricci components of diagonal metrics, and the
//! polynomial Einstein systems built from them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, int, BigInt, BigRational};
use crate::catalog::{sort3, CaseId, LinearConstraint, WallachCase};
use crate::poly::{Monomial, MultiPoly, Vars, MAX_VARS};

/// Symmetric coefficients `(ijk)` keyed by sorted index triples.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TripleSet {
    map: BTreeMap<[usize; 3], BigRational>,
}

impl TripleSet {
    pub fn new() -> TripleSet {
        TripleSet::default()
    }

    pub fn insert(&mut self, t: [usize; 3], v: BigRational) {
        self.map.insert(sort3(t), v);
    }

    /// Value of `(ijk)` in any index order; absent triples are zero.
    pub fn get(&self, i: usize, j: usize, k: usize) -> BigRational {
        self.map.get(&sort3([i, j, k])).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize; 3], &BigRational)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `sum_{i,j} (kij)` over ordered pairs.
    pub fn row_sum(&self, k: usize, indices: &[usize]) -> BigRational {
        let mut s = BigRational::zero();
        for &i in indices {
            for &j in indices {
                s += self.get(k, i, j);
            }
        }
        s
    }

    /// Map `"(i,j,k)" -> "num/den"`.
    pub fn to_text_map(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .map(|(t, v)| (alloc::format!("({},{},{})", t[0], t[1], t[2]), format_rational(v)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RicciError {
    InconsistentConstraints,
    Underdetermined { rank: usize, unknowns: usize },
    NonpositiveCoordinate(usize),
    DimensionMismatch,
}

impl fmt::Display for RicciError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RicciError::InconsistentConstraints => write!(f, "triple constraints are inconsistent"),
            RicciError::Underdetermined { rank, unknowns } => {
                write!(f, "triple constraints have rank {rank} for {unknowns} unknowns")
            }
            RicciError::NonpositiveCoordinate(i) => write!(f, "coordinate {i} is not positive"),
            RicciError::DimensionMismatch => write!(f, "point has the wrong number of coordinates"),
        }
    }
}

type LExp = [i32; MAX_VARS];

/// Laurent polynomial in the substituted variables.
#[derive(Clone, Debug, Default, PartialEq)]
struct Laurent(BTreeMap<LExp, BigRational>);

impl Laurent {
    fn add(&mut self, e: LExp, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let v = self.0.entry(e).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.0.remove(&e);
        }
    }

    fn add_scaled(&mut self, o: &Laurent, s: &BigRational) {
        for (e, c) in &o.0 {
            self.add(*e, c * s);
        }
    }

    fn sub(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        r.add_scaled(o, &-BigRational::one());
        r
    }
}

/// A coordinate after normalization: `coef * prod vars^exps`.
#[derive(Clone, Debug)]
struct CoordExpr {
    coef: BigRational,
    exps: LExp,
}

fn ratio(num: &CoordExpr, d1: &CoordExpr, d2: &CoordExpr) -> CoordExpr {
    let mut exps = [0; MAX_VARS];
    for v in 0..MAX_VARS {
        exps[v] = num.exps[v] - d1.exps[v] - d2.exps[v];
    }
    CoordExpr { coef: &num.coef / (&d1.coef * &d2.coef), exps }
}

/// `r_k = c_k + sum_t (t) * L_{k,t}`, one entry per coordinate.
struct RicciStructure {
    constant: Vec<Laurent>,
    linear: Vec<BTreeMap<[usize; 3], Laurent>>,
}

fn ricci_structure(case: &WallachCase, coords: &[CoordExpr]) -> RicciStructure {
    let idx = case.indices();
    let f = case.first_index();
    let mut constant = Vec::new();
    let mut linear = Vec::new();
    for &k in &idx {
        let dk = int(case.dim(k) as i64);
        let xk = &coords[k - f];
        let mut c = Laurent::default();
        let mut inv = xk.clone();
        for e in inv.exps.iter_mut() {
            *e = -*e;
        }
        c.add(inv.exps, BigRational::new(BigInt::one(), BigInt::from(2)) / &xk.coef);
        let mut lin: BTreeMap<[usize; 3], Laurent> = BTreeMap::new();
        for &i in &idx {
            for &j in &idx {
                let t = sort3([i, j, k]);
                if !case.possible_triples.contains(&t) {
                    continue;
                }
                let l = lin.entry(t).or_default();
                let a = ratio(xk, &coords[i - f], &coords[j - f]);
                l.add(a.exps, a.coef / (int(4) * &dk));
                let b = ratio(&coords[j - f], xk, &coords[i - f]);
                l.add(b.exps, -(b.coef / (int(2) * &dk)));
            }
        }
        constant.push(c);
        linear.push(lin);
    }
    RicciStructure { constant, linear }
}

/// Affine constraint rows over `case.possible_triples`: sum rules, seeds, and
/// consistency of the Ricci components inside each block of the involution partitions.
pub fn constraint_rows(case: &WallachCase) -> Vec<LinearConstraint> {
    let nt = case.possible_triples.len();
    let idx = case.indices();
    let mut rows: Vec<LinearConstraint> = Vec::new();
    for &k in &idx {
        let mut coeffs = vec![BigRational::zero(); nt];
        for &i in &idx {
            for &j in &idx {
                if let Some(p) = case.triple_position([k, i, j]) {
                    coeffs[p] += BigRational::one();
                }
            }
        }
        rows.push(LinearConstraint { coeffs, rhs: int(case.dim(k) as i64) });
    }
    for s in &case.known_triples {
        let mut coeffs = vec![BigRational::zero(); nt];
        coeffs[case.triple_position(s.indices).expect("seed in support")] = BigRational::one();
        rows.push(LinearConstraint { coeffs, rhs: s.value.clone() });
    }
    let f = case.first_index();
    for blocks in &case.involutions {
        let mut coords = vec![CoordExpr { coef: BigRational::one(), exps: [0; MAX_VARS] }; case.n()];
        for (b, block) in blocks.iter().enumerate() {
            for &i in block {
                coords[i - f].exps[b] = 1;
            }
        }
        let st = ricci_structure(case, &coords);
        for block in blocks {
            for w in block.windows(2) {
                let (a, b) = (w[0] - f, w[1] - f);
                let cdiff = st.constant[a].sub(&st.constant[b]);
                let mut per_exp: BTreeMap<LExp, LinearConstraint> = BTreeMap::new();
                let blank = || LinearConstraint { coeffs: vec![BigRational::zero(); nt], rhs: BigRational::zero() };
                for (e, c) in &cdiff.0 {
                    per_exp.entry(*e).or_insert_with(blank).rhs -= c;
                }
                for (p, t) in case.possible_triples.iter().enumerate() {
                    let empty = Laurent::default();
                    let la = st.linear[a].get(t).unwrap_or(&empty);
                    let lb = st.linear[b].get(t).unwrap_or(&empty);
                    for (e, c) in &la.sub(lb).0 {
                        per_exp.entry(*e).or_insert_with(blank).coeffs[p] += c;
                    }
                }
                rows.extend(per_exp.into_values());
            }
        }
    }
    // normalize and deduplicate
    let mut out: Vec<LinearConstraint> = Vec::new();
    for mut r in rows {
        let lead = match r.coeffs.iter().find(|c| !c.is_zero()) {
            Some(l) => l.clone(),
            None if r.rhs.is_zero() => continue,
            None => r.rhs.clone(),
        };
        for c in r.coeffs.iter_mut() {
            *c /= &lead;
        }
        r.rhs /= &lead;
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Unique solution of the case's constraint system.
pub fn derive_triples(case: &WallachCase) -> Result<TripleSet, RicciError> {
    let nt = case.possible_triples.len();
    let mut m: Vec<Vec<BigRational>> = case
        .linear_constraints
        .iter()
        .map(|r| {
            let mut row = r.coeffs.clone();
            row.push(r.rhs.clone());
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..nt {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let piv = m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v /= &piv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=nt {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[nt].is_zero()) {
        return Err(RicciError::InconsistentConstraints);
    }
    if rank < nt {
        return Err(RicciError::Underdetermined { rank, unknowns: nt });
    }
    let mut ts = TripleSet::new();
    for (p, t) in case.possible_triples.iter().enumerate() {
        ts.insert(*t, m[p][nt].clone());
    }
    Ok(ts)
}

/// Ricci components at a positive rational point (one entry per coordinate).
pub fn ricci_components(case: &WallachCase, t: &TripleSet, x: &[BigRational]) -> Result<Vec<BigRational>, RicciError> {
    if x.len() != case.n() {
        return Err(RicciError::DimensionMismatch);
    }
    let f = case.first_index();
    if let Some(p) = x.iter().position(|v| !v.is_positive()) {
        return Err(RicciError::NonpositiveCoordinate(p + f));
    }
    let idx = case.indices();
    let mut r = Vec::with_capacity(case.n());
    for &k in &idx {
        let dk = int(case.dim(k) as i64);
        let xk = &x[k - f];
        let mut s = xk.recip() / int(2);
        let mut plus = BigRational::zero();
        let mut minus = BigRational::zero();
        for &i in &idx {
            for &j in &idx {
                let c = t.get(k, i, j);
                if c.is_zero() {
                    continue;
                }
                plus += &c * xk / (&x[j - f] * &x[i - f]);
                minus += &c * &x[j - f] / (xk * &x[i - f]);
            }
        }
        s += plus / (int(4) * &dk) - minus / (int(2) * &dk);
        r.push(s);
    }
    Ok(r)
}

/// Floating-point Ricci components; no positivity check.
pub fn ricci_components_f64(case: &WallachCase, t: &TripleSet, x: &[f64]) -> Vec<f64> {
    let f = case.first_index();
    let idx = case.indices();
    let vals: BTreeMap<[usize; 3], f64> = t.iter().map(|(k, v)| (*k, crate::arith::to_f64(v))).collect();
    idx.iter()
        .map(|&k| {
            let dk = case.dim(k) as f64;
            let xk = x[k - f];
            let mut plus = 0.0;
            let mut minus = 0.0;
            for &i in &idx {
                for &j in &idx {
                    if let Some(&c) = vals.get(&sort3([i, j, k])) {
                        plus += c * xk / (x[j - f] * x[i - f]);
                        minus += c * x[j - f] / (xk * x[i - f]);
                    }
                }
            }
            0.5 / xk + plus / (4.0 * dk) - minus / (2.0 * dk)
        })
        .collect()
}

/// How a case coordinate is obtained from the system variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordSource {
    Free(usize),
    Pinned(BigRational),
    /// Identified with another coordinate, stored as that coordinate's variable.
    Merged { with: usize, var: usize },
}

/// Cleared-denominator Einstein equations for the normalized family of a case.
#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinSystem {
    pub case: CaseId,
    pub vars: Vars,
    pub polys: Vec<MultiPoly>,
    /// One entry per case coordinate, in index order.
    pub coords: Vec<CoordSource>,
    /// Index of the variable kept by elimination (the lowest in lex).
    pub keep: usize,
    /// Consecutive differences that vanished identically.
    pub identities: Vec<(usize, usize)>,
}

impl EinsteinSystem {
    /// Expands a value for each system variable into a full coordinate vector.
    pub fn full_point(&self, free: &[BigRational]) -> Vec<BigRational> {
        self.coords
            .iter()
            .map(|c| match c {
                CoordSource::Free(v) | CoordSource::Merged { var: v, .. } => free[*v].clone(),
                CoordSource::Pinned(p) => p.clone(),
            })
            .collect()
    }

    pub fn full_point_f64(&self, free: &[f64]) -> Vec<f64> {
        self.coords
            .iter()
            .map(|c| match c {
                CoordSource::Free(v) | CoordSource::Merged { var: v, .. } => free[*v],
                CoordSource::Pinned(p) => crate::arith::to_f64(p),
            })
            .collect()
    }

    /// The system variables read off a full coordinate vector.
    pub fn free_part<T: Clone>(&self, full: &[T]) -> Vec<T> {
        let mut out: Vec<Option<T>> = vec![None; self.vars.len()];
        for (k, c) in self.coords.iter().enumerate() {
            if let CoordSource::Free(v) = c {
                out[*v] = Some(full[k].clone());
            }
        }
        out.into_iter().map(|v| v.expect("every variable is free somewhere")).collect()
    }

    pub fn residual_exact(&self, free: &[BigRational]) -> BigRational {
        self.polys
            .iter()
            .map(|g| g.evaluate(free).expect("point covers variables").abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Builds `r_k - r_{k+1}` for consecutive coordinates under the case
/// normalization, clears monomial denominators and strips content.
pub fn build_einstein_system(case: &WallachCase, t: &TripleSet) -> EinsteinSystem {
    let f = case.first_index();
    let idx = case.indices();
    let norm = &case.normalization;
    let mut names: Vec<String> = Vec::new();
    let mut coords_src: Vec<Option<CoordSource>> = vec![None; case.n()];
    for &i in &idx {
        if let Some((_, v)) = norm.pins.iter().find(|p| p.0 == i) {
            coords_src[i - f] = Some(CoordSource::Pinned(v.clone()));
        } else if !norm.merges.iter().any(|m| m.0 == i) {
            coords_src[i - f] = Some(CoordSource::Free(names.len()));
            names.push(case.coord_name(i));
        }
    }
    for &(from, to) in &norm.merges {
        let var = match &coords_src[to - f] {
            Some(CoordSource::Free(v)) => *v,
            _ => panic!("merge target must be free"),
        };
        coords_src[from - f] = Some(CoordSource::Merged { with: to, var });
    }
    let coords: Vec<CoordSource> = coords_src.into_iter().map(|c| c.expect("all coordinates assigned")).collect();
    let exprs: Vec<CoordExpr> = coords
        .iter()
        .map(|c| match c {
            CoordSource::Pinned(v) => CoordExpr { coef: v.clone(), exps: [0; MAX_VARS] },
            CoordSource::Free(v) | CoordSource::Merged { var: v, .. } => {
                let mut exps = [0; MAX_VARS];
                exps[*v] = 1;
                CoordExpr { coef: BigRational::one(), exps }
            }
        })
        .collect();
    let st = ricci_structure(case, &exprs);
    let r: Vec<Laurent> = (0..case.n())
        .map(|k| {
            let mut l = st.constant[k].clone();
            for (tr, lin) in &st.linear[k] {
                l.add_scaled(lin, &t.get(tr[0], tr[1], tr[2]));
            }
            l
        })
        .collect();
    let names_ref: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let vars = crate::poly::vars(&names_ref);
    let mut polys = Vec::new();
    let mut identities = Vec::new();
    for k in 0..case.n() - 1 {
        let d = r[k].sub(&r[k + 1]);
        if d.0.is_empty() {
            identities.push((k + f, k + 1 + f));
            continue;
        }
        let mut shift = [0i32; MAX_VARS];
        for e in d.0.keys() {
            for v in 0..MAX_VARS {
                shift[v] = shift[v].max(-e[v]);
            }
        }
        let p = MultiPoly::from_terms(
            &vars,
            d.0.iter().map(|(e, c)| {
                let ex: Vec<u32> = (0..vars.len()).map(|v| (e[v] + shift[v]) as u32).collect();
                (Monomial::from_exps(&ex).expect("small exponents"), c.clone())
            }),
        );
        polys.push(p.content_primitive().expect("nonzero").1);
    }
    let keep = vars.len() - 1;
    EinsteinSystem { case: case.id, vars, polys, coords, keep, identities }
}
