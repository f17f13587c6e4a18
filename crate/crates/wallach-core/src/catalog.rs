//! Embedded data for the generalized Wallach decompositions of the exceptional groups.
//!
//! Coordinates are addressed by their conventional index: `0` is the center
//! coordinate `u0` (present only when `has_center`), `1..` are `x1, x2, ...`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{rat, BigRational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    F4I,
    F4II,
    E6III,
    E6II,
    E7I,
    E7III,
    E7II,
    E8I,
    E8II,
}

impl CaseId {
    /// All rows of the summary table, in table order.
    pub const ALL: [CaseId; 9] = [
        CaseId::F4I,
        CaseId::F4II,
        CaseId::E6III,
        CaseId::E6II,
        CaseId::E7I,
        CaseId::E7III,
        CaseId::E7II,
        CaseId::E8I,
        CaseId::E8II,
    ];

    pub const COMPUTABLE: [CaseId; 7] =
        [CaseId::F4II, CaseId::E6III, CaseId::E6II, CaseId::E7I, CaseId::E7II, CaseId::E8I, CaseId::E8II];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::F4I => "F4-I",
            CaseId::F4II => "F4-II",
            CaseId::E6III => "E6-III",
            CaseId::E6II => "E6-II",
            CaseId::E7I => "E7-I",
            CaseId::E7III => "E7-III",
            CaseId::E7II => "E7-II",
            CaseId::E8I => "E8-I",
            CaseId::E8II => "E8-II",
        }
    }

    pub fn is_computable(self) -> bool {
        !matches!(self, CaseId::F4I | CaseId::E7III)
    }

    /// Subgroup K as labelled in the summary table.
    pub fn k_label(self) -> &'static str {
        match self {
            CaseId::F4I => "SO(8)",
            CaseId::F4II => "SU(2)×SU(2)×SO(5)",
            CaseId::E6III => "SU(2)×Sp(3)",
            CaseId::E6II => "U(1)×SU(2)×SU(2)×SU(4)",
            CaseId::E7I => "SU(2)×SU(2)×SU(2)×SO(8)",
            CaseId::E7III => "SO(8)",
            CaseId::E7II => "U(1)×SU(2)×SU(6)",
            CaseId::E8I => "SU(2)×SU(2)×SO(12)",
            CaseId::E8II => "Ad(SO(8)×SO(8))",
        }
    }

    /// `p+q` column: number of summands of k (with the center as `0+`) plus 3.
    pub fn p_plus_q(self) -> &'static str {
        match self {
            CaseId::F4I | CaseId::E7III => "1+3",
            CaseId::F4II | CaseId::E8I => "3+3",
            CaseId::E6III | CaseId::E8II => "2+3",
            CaseId::E6II => "0+3+3",
            CaseId::E7I => "4+3",
            CaseId::E7II => "0+2+3",
        }
    }

    /// Number of non-naturally-reductive Einstein metrics in the summary table.
    pub fn table_count(self) -> usize {
        match self {
            CaseId::F4I => 1,
            CaseId::F4II => 3,
            CaseId::E6III => 4,
            CaseId::E6II => 7,
            CaseId::E7I => 7,
            CaseId::E7III => 1,
            CaseId::E7II => 6,
            CaseId::E8I => 11,
            CaseId::E8II => 2,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogError {
    UnknownCase(String),
    ReportedOnly(CaseId),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::UnknownCase(s) => write!(f, "unknown case {s:?}"),
            CatalogError::ReportedOnly(c) => write!(f, "{c} is a reported-only row with no computable data"),
        }
    }
}

impl FromStr for CaseId {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseId::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| CatalogError::UnknownCase(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Computed from the relative Killing-form constant of a simple ideal.
    SimpleIdeal,
    /// Mixed coefficient imported from an external table.
    ExternalTable,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::SimpleIdeal => "simple-ideal",
            Provenance::ExternalTable => "external-table",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub indices: [usize; 3],
    pub value: BigRational,
    pub provenance: Provenance,
}

/// Affine equation `sum coeffs[t] * (t) = rhs` over `possible_triples`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

/// A set of coordinate equalities; each class lists indices required equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NrPattern {
    pub classes: Vec<Vec<usize>>,
}

impl NrPattern {
    pub fn new(mut classes: Vec<Vec<usize>>) -> NrPattern {
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort();
        NrPattern { classes }
    }

    /// Indices not constrained by any class.
    pub fn free(&self, indices: &[usize]) -> Vec<usize> {
        indices.iter().copied().filter(|i| !self.classes.iter().any(|c| c.contains(i))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    /// Coordinates fixed to a value.
    pub pins: Vec<(usize, BigRational)>,
    /// `(from, to)`: coordinate `from` is identified with `to`.
    pub merges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallachCase {
    pub id: CaseId,
    pub group_dim: u32,
    pub has_center: bool,
    /// `dims[k]` is the dimension of the summand with index `first_index() + k`.
    pub dims: Vec<u32>,
    pub p: usize,
    pub q: usize,
    /// Index triples (sorted) of the coefficients that may be nonzero.
    pub possible_triples: Vec<[usize; 3]>,
    pub known_triples: Vec<Seed>,
    /// Coarse partitions induced by the two commuting involutions; the last
    /// block of each is the symmetric complement.
    pub involutions: Vec<Vec<Vec<usize>>>,
    pub linear_constraints: Vec<LinearConstraint>,
    pub nr_patterns: Vec<NrPattern>,
    /// Each permutation maps index `i` to `perm[i - first_index()]`.
    pub isometry_perms: Vec<Vec<usize>>,
    pub normalization: Normalization,
    pub errata: Vec<String>,
}

impl WallachCase {
    pub fn first_index(&self) -> usize {
        if self.has_center {
            0
        } else {
            1
        }
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn indices(&self) -> Vec<usize> {
        (self.first_index()..self.first_index() + self.n()).collect()
    }

    pub fn dim(&self, index: usize) -> u32 {
        self.dims[index - self.first_index()]
    }

    pub fn coord_name(&self, index: usize) -> String {
        if self.has_center && index == 0 {
            "u0".to_string()
        } else {
            format!("x{index}")
        }
    }

    pub fn triple_position(&self, t: [usize; 3]) -> Option<usize> {
        let t = sort3(t);
        self.possible_triples.iter().position(|&s| s == t)
    }

    /// Applies a permutation to a coordinate vector: `(σx)[σ(i)] = x[i]`.
    pub fn permute<T: Clone>(&self, perm: &[usize], x: &[T]) -> Vec<T> {
        let f = self.first_index();
        let mut out = x.to_vec();
        for (k, v) in x.iter().enumerate() {
            out[perm[k] - f] = v.clone();
        }
        out
    }

    pub fn pinned_indices(&self) -> Vec<usize> {
        self.normalization.pins.iter().map(|p| p.0).collect()
    }
}

pub fn sort3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

pub fn list_cases() -> Vec<(CaseId, bool)> {
    CaseId::ALL.iter().map(|&c| (c, c.is_computable())).collect()
}

fn triples(spec: &[&str]) -> Vec<[usize; 3]> {
    spec.iter()
        .map(|s| {
            let b = s.as_bytes();
            sort3([(b[0] - b'0') as usize, (b[1] - b'0') as usize, (b[2] - b'0') as usize])
        })
        .collect()
}

fn seed(t: &str, n: i64, d: i64, provenance: Provenance) -> Seed {
    Seed { indices: triples(&[t])[0], value: rat(n, d), provenance }
}

fn pattern(classes: &[&[usize]]) -> NrPattern {
    NrPattern::new(classes.iter().map(|c| c.to_vec()).collect())
}

/// Closes a generator set under composition. Permutations are given as image arrays over `indices`.
pub fn close_group(first: usize, n: usize, gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (first..first + n).collect();
    let mut group = vec![id];
    let mut k = 0;
    while k < group.len() {
        for g in gens {
            let h: Vec<usize> = group[k].iter().map(|&i| g[i - first]).collect();
            if !group.contains(&h) {
                group.push(h);
            }
        }
        k += 1;
    }
    group.sort();
    group
}

pub fn get_case(id: CaseId) -> Result<WallachCase, CatalogError> {
    use Provenance::*;
    let pin = |i: usize| Normalization { pins: vec![(i, rat(1, 1))], merges: vec![] };
    let mut c = match id {
        CaseId::F4I | CaseId::E7III => return Err(CatalogError::ReportedOnly(id)),
        CaseId::E6III => WallachCase {
            id,
            group_dim: 78,
            has_center: false,
            dims: vec![3, 21, 14, 28, 12],
            p: 2,
            q: 3,
            possible_triples: triples(&["111", "222", "133", "144", "155", "233", "244", "255", "345"]),
            known_triples: vec![
                seed("111", 1, 2, SimpleIdeal),
                seed("222", 7, 1, SimpleIdeal),
                seed("345", 7, 2, ExternalTable),
            ],
            involutions: vec![vec![vec![1], vec![2, 3], vec![4, 5]], vec![vec![1, 2, 4], vec![3, 5]]],
            linear_constraints: vec![],
            nr_patterns: vec![
                pattern(&[&[2, 3], &[4, 5]]),
                pattern(&[&[1, 2, 4], &[3, 5]]),
                pattern(&[&[1, 2, 5], &[3, 4]]),
                pattern(&[&[3, 4, 5]]),
            ],
            isometry_perms: vec![],
            normalization: pin(5),
            errata: vec![],
        },
        CaseId::E8II => WallachCase {
            id,
            group_dim: 248,
            has_center: false,
            dims: vec![28, 28, 64, 64, 64],
            p: 2,
            q: 3,
            possible_triples: triples(&["111", "222", "133", "144", "155", "233", "244", "255", "345"]),
            known_triples: vec![
                seed("111", 28, 5, SimpleIdeal),
                seed("222", 28, 5, SimpleIdeal),
                seed("345", 256, 15, ExternalTable),
            ],
            involutions: vec![vec![vec![1, 2, 3], vec![4, 5]], vec![vec![1, 2, 4], vec![3, 5]]],
            linear_constraints: vec![],
            nr_patterns: vec![
                pattern(&[&[1, 2, 3], &[4, 5]]),
                pattern(&[&[1, 2, 4], &[3, 5]]),
                pattern(&[&[1, 2, 5], &[3, 4]]),
                pattern(&[&[3, 4, 5]]),
            ],
            isometry_perms: close_group(1, 5, &[vec![2, 1, 3, 4, 5], vec![1, 2, 4, 3, 5], vec![1, 2, 4, 5, 3]]),
            normalization: pin(5),
            errata: vec!["pattern 3 printed as x1=x2=x5, x3=x5; stored as x1=x2=x5, x3=x4 (symmetry closure)".to_string()],
        },
        CaseId::F4II | CaseId::E8I => {
            let f4 = id == CaseId::F4II;
            let (group_dim, dims) = if f4 { (52, vec![3, 3, 10, 20, 8, 8]) } else { (248, vec![3, 3, 66, 48, 64, 64]) };
            let known_triples = if f4 {
                vec![
                    seed("111", 2, 3, SimpleIdeal),
                    seed("222", 2, 3, SimpleIdeal),
                    seed("333", 10, 3, SimpleIdeal),
                    seed("456", 20, 9, ExternalTable),
                ]
            } else {
                vec![
                    seed("111", 1, 5, SimpleIdeal),
                    seed("222", 1, 5, SimpleIdeal),
                    seed("333", 22, 1, SimpleIdeal),
                    seed("456", 64, 5, ExternalTable),
                ]
            };
            WallachCase {
                id,
                group_dim,
                has_center: false,
                dims,
                p: 3,
                q: 3,
                possible_triples: triples(&[
                    "111", "222", "333", "144", "155", "166", "244", "255", "266", "344", "355", "366", "456",
                ]),
                known_triples,
                involutions: vec![vec![vec![1, 2, 3, 4], vec![5, 6]], vec![vec![1], vec![2, 3, 5], vec![4, 6]]],
                linear_constraints: vec![],
                nr_patterns: vec![
                    pattern(&[&[1, 2, 3, 4], &[5, 6]]),
                    pattern(&[&[2, 3, 5], &[4, 6]]),
                    pattern(&[&[1, 3, 6], &[4, 5]]),
                    pattern(&[&[4, 5, 6]]),
                ],
                isometry_perms: close_group(1, 6, &[vec![2, 1, 3, 4, 6, 5]]),
                normalization: pin(4),
                errata: vec![],
            }
        }
        CaseId::E7I => WallachCase {
            id,
            group_dim: 133,
            has_center: false,
            dims: vec![3, 3, 3, 28, 32, 32, 32],
            p: 4,
            q: 3,
            possible_triples: triples(&[
                "111", "222", "333", "444", "155", "166", "177", "255", "266", "277", "355", "366", "377", "455",
                "466", "477", "567",
            ]),
            known_triples: vec![
                seed("111", 1, 3, SimpleIdeal),
                seed("222", 1, 3, SimpleIdeal),
                seed("333", 1, 3, SimpleIdeal),
                seed("444", 28, 3, SimpleIdeal),
                seed("567", 64, 9, ExternalTable),
            ],
            involutions: vec![
                vec![vec![1], vec![2, 3, 4, 5], vec![6, 7]],
                vec![vec![2], vec![1, 3, 4, 6], vec![5, 7]],
            ],
            linear_constraints: vec![],
            nr_patterns: vec![
                pattern(&[&[2, 3, 4, 5], &[6, 7]]),
                pattern(&[&[1, 3, 4, 6], &[5, 7]]),
                pattern(&[&[1, 2, 4, 7], &[5, 6]]),
                pattern(&[&[5, 6, 7]]),
            ],
            isometry_perms: close_group(1, 7, &[vec![2, 1, 3, 4, 6, 5, 7], vec![2, 3, 1, 4, 6, 7, 5]]),
            normalization: Normalization { pins: vec![(6, rat(1, 1)), (7, rat(1, 1))], merges: vec![(2, 3)] },
            errata: vec![],
        },
        CaseId::E7II => WallachCase {
            id,
            group_dim: 133,
            has_center: true,
            dims: vec![1, 3, 35, 24, 30, 40],
            p: 2,
            q: 3,
            possible_triples: triples(&[
                "033", "044", "055", "111", "133", "144", "155", "222", "233", "244", "255", "345",
            ]),
            known_triples: vec![
                seed("111", 1, 3, SimpleIdeal),
                seed("222", 35, 3, SimpleIdeal),
                seed("345", 20, 3, ExternalTable),
            ],
            involutions: vec![vec![vec![0, 1, 2, 3], vec![4, 5]], vec![vec![1], vec![0, 2, 4], vec![3, 5]]],
            linear_constraints: vec![],
            nr_patterns: vec![
                pattern(&[&[0, 1, 2, 3], &[4, 5]]),
                pattern(&[&[0, 2, 4], &[3, 5]]),
                pattern(&[&[1, 2, 5], &[3, 4]]),
                pattern(&[&[3, 4, 5]]),
            ],
            isometry_perms: vec![],
            normalization: pin(0),
            errata: vec!["d1 printed as 1 in the source; stored as 3 so that the dimensions sum to 133".to_string()],
        },
        CaseId::E6II => WallachCase {
            id,
            group_dim: 78,
            has_center: true,
            dims: vec![1, 3, 3, 15, 16, 16, 24],
            p: 3,
            q: 3,
            possible_triples: triples(&[
                "044", "055", "066", "111", "144", "155", "166", "222", "244", "255", "266", "333", "344", "355",
                "366", "456",
            ]),
            known_triples: vec![
                seed("111", 1, 2, SimpleIdeal),
                seed("222", 1, 2, SimpleIdeal),
                seed("333", 5, 1, SimpleIdeal),
                seed("456", 4, 1, ExternalTable),
            ],
            involutions: vec![
                vec![vec![1], vec![0, 2, 3, 4], vec![5, 6]],
                vec![vec![2], vec![0, 1, 3, 5], vec![4, 6]],
            ],
            linear_constraints: vec![],
            nr_patterns: vec![
                pattern(&[&[0, 2, 3, 4], &[5, 6]]),
                pattern(&[&[0, 1, 3, 5], &[4, 6]]),
                pattern(&[&[1, 2, 3, 6], &[4, 5]]),
                pattern(&[&[4, 5, 6]]),
            ],
            isometry_perms: close_group(0, 7, &[vec![0, 2, 1, 3, 5, 4, 6]]),
            normalization: pin(6),
            errata: vec![
                "second involution complement printed as p1+p2; the partition uses p1+p3".to_string(),
                "sum rule for d5 printed with 2(266); the generated rule uses 2(355)".to_string(),
            ],
        },
    };
    if c.isometry_perms.is_empty() {
        c.isometry_perms = close_group(c.first_index(), c.n(), &[]);
    }
    c.linear_constraints = crate::ricci::constraint_rows(&c);
    Ok(c)
}
