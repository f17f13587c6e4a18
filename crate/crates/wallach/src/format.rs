//! JSON documents: case export, triple maps, solve results.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use wallach_core::arith::{fmt_sig, format_rational, parse_rational, BigRational};
use wallach_core::catalog::{CaseId, LinearConstraint, Normalization, NrPattern, Provenance, Seed, WallachCase};
use wallach_core::classifier::Classification;
use wallach_core::ricci::TripleSet;
use wallach_core::solver::{Discard, MetricPoint, SolutionRecord, Source};

pub const CASE_FORMAT: &str = "wallach-case/1";
pub const CATALOG_FORMAT: &str = "wallach-catalog/1";
pub const SOLVE_FORMAT: &str = "wallach-solve/1";

#[derive(Debug)]
pub struct FormatError(pub String);

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

fn err(s: impl Into<String>) -> FormatError {
    FormatError(s.into())
}

fn q(s: &str) -> Result<BigRational, FormatError> {
    parse_rational(s).map_err(|e| err(e.to_string()))
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PatternDoc {
    pub equal: Vec<Vec<usize>>,
    pub free: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ConstraintDoc {
    pub coeffs: Vec<String>,
    pub rhs: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct NormalizationDoc {
    pub pins: Vec<(usize, String)>,
    pub merges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CaseDoc {
    pub format: String,
    pub name: String,
    pub group_dim: u32,
    pub has_center: bool,
    pub dims: Vec<u32>,
    pub p: usize,
    pub q: usize,
    pub possible_triples: Vec<[usize; 3]>,
    pub known_triples: Vec<([usize; 3], String)>,
    pub known_triple_provenance: Vec<String>,
    pub involutions: Vec<Vec<Vec<usize>>>,
    pub linear_constraints: Vec<ConstraintDoc>,
    pub nr_patterns: Vec<PatternDoc>,
    pub isometry_perms: Vec<Vec<usize>>,
    pub normalization: NormalizationDoc,
    pub errata: Vec<String>,
}

pub fn case_doc(c: &WallachCase) -> CaseDoc {
    let idx = c.indices();
    CaseDoc {
        format: CASE_FORMAT.into(),
        name: c.id.name().into(),
        group_dim: c.group_dim,
        has_center: c.has_center,
        dims: c.dims.clone(),
        p: c.p,
        q: c.q,
        possible_triples: c.possible_triples.clone(),
        known_triples: c.known_triples.iter().map(|s| (s.indices, format_rational(&s.value))).collect(),
        known_triple_provenance: c.known_triples.iter().map(|s| s.provenance.as_str().into()).collect(),
        involutions: c.involutions.clone(),
        linear_constraints: c
            .linear_constraints
            .iter()
            .map(|l| ConstraintDoc { coeffs: l.coeffs.iter().map(format_rational).collect(), rhs: format_rational(&l.rhs) })
            .collect(),
        nr_patterns: c.nr_patterns.iter().map(|p| PatternDoc { equal: p.classes.clone(), free: p.free(&idx) }).collect(),
        isometry_perms: c.isometry_perms.clone(),
        normalization: NormalizationDoc {
            pins: c.normalization.pins.iter().map(|(i, v)| (*i, format_rational(v))).collect(),
            merges: c.normalization.merges.clone(),
        },
        errata: c.errata.clone(),
    }
}

fn provenance(s: &str) -> Result<Provenance, FormatError> {
    [Provenance::SimpleIdeal, Provenance::ExternalTable]
        .into_iter()
        .find(|p| p.as_str() == s)
        .ok_or_else(|| err(format!("unknown provenance {s:?}")))
}

pub fn case_from_doc(d: &CaseDoc) -> Result<WallachCase, FormatError> {
    if d.format != CASE_FORMAT {
        return Err(err(format!("unsupported format {:?}", d.format)));
    }
    let id: CaseId = d.name.parse().map_err(|e: wallach_core::catalog::CatalogError| err(e.to_string()))?;
    if d.known_triples.len() != d.known_triple_provenance.len() {
        return Err(err("known_triples and known_triple_provenance differ in length"));
    }
    let known_triples = d
        .known_triples
        .iter()
        .zip(&d.known_triple_provenance)
        .map(|((t, v), p)| Ok(Seed { indices: *t, value: q(v)?, provenance: provenance(p)? }))
        .collect::<Result<Vec<_>, FormatError>>()?;
    let linear_constraints = d
        .linear_constraints
        .iter()
        .map(|c| {
            Ok(LinearConstraint { coeffs: c.coeffs.iter().map(|s| q(s)).collect::<Result<_, _>>()?, rhs: q(&c.rhs)? })
        })
        .collect::<Result<Vec<_>, FormatError>>()?;
    let case = WallachCase {
        id,
        group_dim: d.group_dim,
        has_center: d.has_center,
        dims: d.dims.clone(),
        p: d.p,
        q: d.q,
        possible_triples: d.possible_triples.clone(),
        known_triples,
        involutions: d.involutions.clone(),
        linear_constraints,
        nr_patterns: d.nr_patterns.iter().map(|p| NrPattern::new(p.equal.clone())).collect(),
        isometry_perms: d.isometry_perms.clone(),
        normalization: Normalization {
            pins: d.normalization.pins.iter().map(|(i, v)| Ok((*i, q(v)?))).collect::<Result<_, FormatError>>()?,
            merges: d.normalization.merges.clone(),
        },
        errata: d.errata.clone(),
    };
    let idx = case.indices();
    let bad = |i: &usize| !idx.contains(i);
    if case.nr_patterns.iter().flat_map(|p| p.classes.iter().flatten()).any(bad)
        || case.isometry_perms.iter().flatten().any(bad)
        || case.possible_triples.iter().flatten().any(bad)
    {
        return Err(err("index out of range"));
    }
    Ok(case)
}

pub fn export_case(c: &WallachCase) -> String {
    serde_json::to_string_pretty(&case_doc(c)).expect("serializable") + "\n"
}

pub fn parse_case(text: &str) -> Result<WallachCase, FormatError> {
    let d: CaseDoc = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    case_from_doc(&d)
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CatalogDoc {
    pub format: String,
    pub cases: Vec<CaseDoc>,
    pub reported_only: Vec<(String, usize)>,
}

/// The whole embedded catalog as one versioned document.
pub fn export_catalog() -> String {
    let cases = CaseId::COMPUTABLE
        .iter()
        .map(|&id| case_doc(&wallach_core::catalog::get_case(id).expect("computable")))
        .collect();
    let reported_only = CaseId::ALL
        .iter()
        .filter(|c| !c.is_computable())
        .map(|c| (c.name().to_string(), c.table_count()))
        .collect();
    let doc = CatalogDoc { format: CATALOG_FORMAT.into(), cases, reported_only };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// `"(i,j,k)" -> "num/den"`.
pub fn triples_json(t: &TripleSet) -> String {
    let map: BTreeMap<String, String> = t.to_text_map().into_iter().collect();
    serde_json::to_string_pretty(&map).expect("serializable") + "\n"
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CoordDoc {
    pub name: String,
    /// 10 significant digits.
    pub decimal: String,
    /// Exact value when rational.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
    /// Lossless working value (exact or high-precision dyadic).
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SolutionDoc {
    pub coords: Vec<CoordDoc>,
    pub residual: f64,
    pub source: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pattern: Option<usize>,
    pub einstein_constant: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eliminant_root: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DiscardDoc {
    pub root: String,
    pub partial: Vec<(String, String)>,
    pub reason: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Default)]
pub struct ExactDoc {
    pub eliminant_degree: usize,
    pub eliminant_leading: String,
    pub eliminant_constant: String,
    pub rational_roots: Vec<String>,
    pub cofactor_degree: usize,
    pub positive_roots: Vec<String>,
    pub basis_len: usize,
    pub steps: u64,
    pub discarded: Vec<DiscardDoc>,
    pub branch_notes: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SolveDoc {
    pub format: String,
    pub case: String,
    pub normalization: String,
    pub paths: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fallback: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<ExactDoc>,
    pub solutions: Vec<SolutionDoc>,
    pub non_naturally_reductive: usize,
}

pub fn normalization_text(c: &WallachCase) -> String {
    let mut parts: Vec<String> =
        c.normalization.pins.iter().map(|(i, v)| format!("{}={}", c.coord_name(*i), format_rational(v))).collect();
    parts.extend(c.normalization.merges.iter().map(|(a, b)| format!("{}={}", c.coord_name(*a), c.coord_name(*b))));
    parts.join(",")
}

pub fn solution_doc(c: &WallachCase, r: &SolutionRecord, cl: &Classification) -> SolutionDoc {
    let coords = c
        .indices()
        .iter()
        .zip(&r.point.values)
        .map(|(&i, v)| CoordDoc {
            name: c.coord_name(i),
            decimal: fmt_sig(wallach_core::arith::to_f64(v), 10),
            exact: r.point.exact.then(|| format_rational(v)),
            value: format_rational(v),
        })
        .collect();
    SolutionDoc {
        coords,
        residual: r.residual,
        source: r.source.as_str().into(),
        verdict: cl.verdict.as_str().into(),
        pattern: cl.pattern,
        einstein_constant: match &cl.lambda_exact {
            Some(l) => format_rational(l),
            None => fmt_sig(cl.lambda, 10),
        },
        eliminant_root: r.root.as_ref().map(|x| x.describe()),
    }
}

/// Rebuilds a record from its document (used by the cache).
pub fn record_from_doc(id: CaseId, d: &SolutionDoc) -> Result<SolutionRecord, FormatError> {
    let values = d.coords.iter().map(|c| q(&c.value)).collect::<Result<Vec<_>, _>>()?;
    let exact = d.coords.iter().all(|c| c.exact.is_some());
    let source = match d.source.as_str() {
        "exact" => Source::Exact,
        "numeric" => Source::Numeric,
        "both" => Source::Both,
        s => return Err(err(format!("unknown source {s:?}"))),
    };
    Ok(SolutionRecord {
        case: id,
        point: MetricPoint { values, exact },
        source,
        residual: d.residual,
        root: None,
    })
}

pub fn discard_doc(d: &Discard) -> DiscardDoc {
    DiscardDoc {
        root: fmt_sig(d.root, 10),
        partial: d.partial.iter().map(|(n, v)| (n.clone(), fmt_sig(*v, 10))).collect(),
        reason: d.reason.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use wallach_core::catalog::get_case;

    #[test]
    fn case_round_trip() {
        for id in CaseId::COMPUTABLE {
            let c = get_case(id).unwrap();
            let text = export_case(&c);
            assert_eq!(parse_case(&text).unwrap(), c, "{id}");
        }
    }

    #[test]
    fn e6iii_dims_in_export() {
        let text = export_case(&get_case(CaseId::E6III).unwrap());
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["dims"], serde_json::json!([3, 21, 14, 28, 12]));
    }

    #[test]
    fn rejects_bad_documents() {
        let mut d = case_doc(&get_case(CaseId::F4II).unwrap());
        d.format = "other".into();
        assert!(case_from_doc(&d).is_err());
        let mut d = case_doc(&get_case(CaseId::F4II).unwrap());
        d.isometry_perms.push(vec![9, 9, 9, 9, 9, 9]);
        assert!(case_from_doc(&d).is_err());
        assert!(parse_case("{").is_err());
    }
}
