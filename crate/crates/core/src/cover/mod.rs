//! Character data of (Z/p)^m covers branched along an arrangement, and the cyclic
//! quotient covers it determines.

pub mod group;
pub mod io;

use std::fmt;

use serde::Serialize;

use crate::arrangement::{Arrangement, MultiplePoint};
use crate::check::Check;

pub use io::CharacterFile;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("p = {0} is not prime")]
    NotPrime(u32),
    #[error("character data is empty or ragged: {0}")]
    Shape(String),
    #[error("character has {weights} weights but the arrangement has {lines} lines")]
    LengthMismatch { weights: usize, lines: usize },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("character validation failed: {}", .0.failure_summary())]
    Invalid(ValidationReport),
    #[error("malformed character file: {0}")]
    Parse(String),
}

/// Values of φ on the meridians λ_r of the lines, as vectors in (Z/p)^m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterMap {
    p: u32,
    m: usize,
    weights: Vec<Vec<u32>>,
}

impl CharacterMap {
    /// Entries are reduced mod p. Surjectivity and the zero-sum condition are not
    /// enforced here; [`validate_character`] reports them.
    pub fn new(p: u32, weights: Vec<Vec<i64>>) -> Result<Self, CoverError> {
        if !group::is_prime(p) {
            return Err(CoverError::NotPrime(p));
        }
        let m = weights
            .first()
            .map(Vec::len)
            .ok_or_else(|| CoverError::Shape("no weights".into()))?;
        if m == 0 {
            return Err(CoverError::Shape("rank m must be at least 1".into()));
        }
        if let Some(bad) = weights.iter().position(|w| w.len() != m) {
            return Err(CoverError::Shape(format!(
                "weight of l{} has length {}, expected {m}",
                bad + 1,
                weights[bad].len()
            )));
        }
        let weights = weights
            .into_iter()
            .map(|w| w.into_iter().map(|x| x.rem_euclid(i64::from(p)) as u32).collect())
            .collect();
        Ok(CharacterMap { p, m, weights })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn weights(&self) -> &[Vec<u32>] {
        &self.weights
    }

    /// Weight of the line with 1-based `label`.
    pub fn weight(&self, label: usize) -> &[u32] {
        &self.weights[label - 1]
    }

    pub fn line_count(&self) -> usize {
        self.weights.len()
    }

    /// |G| = p^m.
    pub fn group_order(&self) -> u64 {
        u64::from(self.p).pow(self.m as u32)
    }

    pub fn weight_sum(&self) -> Vec<u32> {
        self.weights
            .iter()
            .fold(vec![0; self.m], |acc, w| group::add(&acc, w, self.p))
    }

    pub fn is_surjective(&self) -> bool {
        group::rank_mod(&self.weights, self.p) == self.m
    }

    /// Sum of the weights of the lines through `pt`: the inertia weight of the
    /// exceptional curve over it.
    pub fn point_weight(&self, pt: &MultiplePoint) -> Vec<u32> {
        pt.lines
            .iter()
            .fold(vec![0; self.m], |acc, &l| group::add(&acc, self.weight(l), self.p))
    }

    /// Character row ψ = Σ xₖ φₖ.
    pub fn row(&self, x: &[u32]) -> CharacterRow {
        let entries = self
            .weights
            .iter()
            .map(|w| {
                w.iter()
                    .zip(x)
                    .map(|(a, b)| u64::from(*a) * u64::from(*b))
                    .sum::<u64>()
                    % u64::from(self.p)
            })
            .map(|v| v as u32)
            .collect();
        CharacterRow { p: self.p, entries }
    }

    /// The same map with lines reordered: new line `k` is old line `order[k]` (1-based).
    pub fn permuted(&self, order: &[usize]) -> CharacterMap {
        CharacterMap {
            p: self.p,
            m: self.m,
            weights: order.iter().map(|&l| self.weights[l - 1].clone()).collect(),
        }
    }
}

/// The character of the main example: p = 5, m = 2.
pub fn ceva_character() -> CharacterMap {
    CharacterMap::new(
        5,
        vec![
            vec![1, 1],
            vec![1, 0],
            vec![1, 1],
            vec![3, 3],
            vec![3, 0],
            vec![0, 1],
            vec![0, 1],
            vec![0, 2],
            vec![1, 1],
        ],
    )
    .expect("built-in character is well formed")
}

/// A Z/p-valued weight vector on the lines: one cyclic quotient cover.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharacterRow {
    p: u32,
    entries: Vec<u32>,
}

impl CharacterRow {
    pub fn new(p: u32, entries: Vec<i64>) -> Result<Self, CoverError> {
        if !group::is_prime(p) {
            return Err(CoverError::NotPrime(p));
        }
        let entries: Vec<u32> = entries
            .into_iter()
            .map(|x| x.rem_euclid(i64::from(p)) as u32)
            .collect();
        if group::is_zero(&entries) {
            return Err(CoverError::Shape("row is identically zero".into()));
        }
        let row = CharacterRow { p, entries };
        if row.sum() % u64::from(p) != 0 {
            return Err(CoverError::Shape(format!(
                "row {row} does not sum to 0 mod {p}"
            )));
        }
        Ok(row)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry of the line with 1-based `label`.
    pub fn entry(&self, label: usize) -> u32 {
        self.entries[label - 1]
    }

    pub fn sum(&self) -> u64 {
        self.entries.iter().map(|&k| u64::from(k)).sum()
    }

    pub fn scaled(&self, t: u32) -> CharacterRow {
        CharacterRow {
            p: self.p,
            entries: group::scale(&self.entries, t, self.p),
        }
    }

    /// Row whose entry at line `k` is this row's entry at `perm(k)`, all 1-based.
    pub fn pull_back(&self, perm: &[usize]) -> CharacterRow {
        CharacterRow {
            p: self.p,
            entries: perm.iter().map(|&img| self.entries[img - 1]).collect(),
        }
    }

    /// `r_i` = number of entries equal to `i`, for `i = 0..p`.
    pub fn weight_profile(&self) -> Vec<usize> {
        weight_profile(self)
    }
}

impl fmt::Display for CharacterRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for CharacterRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn weight_profile(row: &CharacterRow) -> Vec<usize> {
    let mut r = vec![0; row.p as usize];
    for &k in &row.entries {
        r[k as usize] += 1;
    }
    r
}

/// One index-p subgroup H ⊂ (Z/p)^m and the rows of the quotient cover G/H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupFamily {
    /// Character x with H = ker(x), scaled so its first nonzero entry is 1.
    pub annihilator: Vec<u32>,
    /// For m = 2, a generator of the cyclic group H (last nonzero entry 1).
    pub generator: Option<Vec<u32>>,
    /// The p − 1 rows t·ψ, t = 1, …, p − 1.
    pub rows: Vec<CharacterRow>,
    /// Representative used for the cover equation.
    pub canonical: CharacterRow,
}

impl SubgroupFamily {
    pub fn contains(&self, row: &CharacterRow) -> bool {
        self.rows.contains(row)
    }

    pub fn describe(&self) -> String {
        let vec = |v: &[u32]| {
            format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        };
        match &self.generator {
            Some(g) => format!("H=<{}>", vec(g)),
            None => format!("H=ker{}", vec(&self.annihilator)),
        }
    }
}

/// All cyclic quotients G/H for H of index p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientFamily {
    pub p: u32,
    pub m: usize,
    pub subgroups: Vec<SubgroupFamily>,
}

impl QuotientFamily {
    pub fn all_rows(&self) -> impl Iterator<Item = &CharacterRow> {
        self.subgroups.iter().flat_map(|s| s.rows.iter())
    }

    pub fn row_count(&self) -> usize {
        self.subgroups.iter().map(|s| s.rows.len()).sum()
    }

    pub fn contains(&self, row: &CharacterRow) -> bool {
        self.subgroups.iter().any(|s| s.contains(row))
    }

    pub fn canonical_rows(&self) -> Vec<&CharacterRow> {
        self.subgroups.iter().map(|s| &s.canonical).collect()
    }
}

/// Projective classes of nonzero characters x ∈ (Z/p)^m: coordinate vectors first,
/// then the rest in lexicographic order of their normalized form.
fn annihilators(p: u32, m: usize) -> Vec<Vec<u32>> {
    let units: Vec<Vec<u32>> = (0..m)
        .map(|k| (0..m).map(|i| u32::from(i == k)).collect())
        .collect();
    let mut rest = Vec::new();
    let total = (p as usize).pow(m as u32);
    for code in 1..total {
        let mut x = Vec::with_capacity(m);
        let mut c = code;
        for _ in 0..m {
            x.push((c % p as usize) as u32);
            c /= p as usize;
        }
        x.reverse();
        if x.iter().find(|&&a| a != 0) == Some(&1) && !units.contains(&x) {
            rest.push(x);
        }
    }
    rest.sort();
    units.into_iter().chain(rest).collect()
}

/// Canonical representative of a scalar family: smallest entry sum (the smallest
/// n in Σkᵢ = np), ties broken lexicographically.
fn canonical_row(rows: &[CharacterRow]) -> CharacterRow {
    rows.iter()
        .min_by(|a, b| (a.sum(), &a.entries).cmp(&(b.sum(), &b.entries)))
        .expect("a family has p - 1 >= 1 rows")
        .clone()
}

/// Enumerates the (p^m − 1)/(p − 1) index-p subgroups and their row families.
pub fn quotient_rows(c: &CharacterMap) -> Result<QuotientFamily, CoverError> {
    if !c.is_surjective() {
        return Err(CoverError::Unsupported(
            "character is not surjective; some quotient rows vanish".into(),
        ));
    }
    let p = c.p;
    let subgroups = annihilators(p, c.m)
        .into_iter()
        .map(|x| {
            let base = c.row(&x);
            let rows: Vec<CharacterRow> = (1..p).map(|t| base.scaled(t)).collect();
            let generator = (c.m == 2).then(|| group::normalize_last(&[(p - x[1]) % p, x[0]], p));
            SubgroupFamily {
                canonical: canonical_row(&rows),
                annihilator: x,
                generator,
                rows,
            }
        })
        .collect();
    Ok(QuotientFamily {
        p,
        m: c.m,
        subgroups,
    })
}

/// Components of the branch divisor on the plane blown up at the points of
/// multiplicity ≥ 3, and the nodes where two of them cross.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDivisor {
    /// Blown-up points with the inertia weight of their exceptional curve.
    pub exceptional: Vec<(MultiplePoint, Vec<u32>)>,
    pub nodes: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub weights: [Vec<u32>; 2],
}

impl BranchDivisor {
    pub fn new(arr: &Arrangement, c: &CharacterMap) -> Self {
        let exceptional: Vec<(MultiplePoint, Vec<u32>)> = arr
            .multiple_points()
            .into_iter()
            .map(|pt| (pt.clone(), c.point_weight(pt)))
            .collect();
        let mut nodes = Vec::new();
        for (pt, w) in &exceptional {
            if group::is_zero(w) {
                continue;
            }
            for &l in &pt.lines {
                nodes.push(Node {
                    name: format!("(l{l}, E{})", pt.name()),
                    weights: [c.weight(l).to_vec(), w.clone()],
                });
            }
        }
        for pt in arr.double_points() {
            let v: Vec<usize> = pt.lines.iter().copied().collect();
            nodes.push(Node {
                name: format!("(l{}, l{})", v[0], v[1]),
                weights: [c.weight(v[0]).to_vec(), c.weight(v[1]).to_vec()],
            });
        }
        BranchDivisor { exceptional, nodes }
    }

    /// Exceptional curves that lie in the branch locus.
    pub fn branched_exceptional(&self) -> impl Iterator<Item = &MultiplePoint> {
        self.exceptional
            .iter()
            .filter(|(_, w)| !group::is_zero(w))
            .map(|(pt, _)| pt)
    }
}

/// Outcome of [`validate_character`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failure_summary(&self) -> String {
        self.failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn into_result(self) -> Result<ValidationReport, CoverError> {
        if self.is_valid() {
            Ok(self)
        } else {
            Err(CoverError::Invalid(self))
        }
    }
}

/// Checks that `c` defines a cover of the blown-up plane with smooth total space and
/// ramification index p along every branch component.
///
/// Arrangements with points of multiplicity ≥ 4 are rejected as unsupported.
pub fn validate_character(c: &CharacterMap, arr: &Arrangement) -> Result<ValidationReport, CoverError> {
    if c.line_count() != arr.line_count() {
        return Err(CoverError::LengthMismatch {
            weights: c.line_count(),
            lines: arr.line_count(),
        });
    }
    if let Some(pt) = arr.intersection_points().iter().find(|p| p.multiplicity() > 3) {
        return Err(CoverError::Unsupported(format!(
            "point {} has multiplicity {}",
            pt.name(),
            pt.multiplicity()
        )));
    }
    let p = c.p;
    let mut checks = Vec::new();

    checks.push(Check::new(
        "surjective",
        c.is_surjective(),
        format!("weights span a subgroup of order {}^{}", p, group::rank_mod(&c.weights, p)),
    ));

    let sum = c.weight_sum();
    checks.push(Check::new(
        "weight_sum_zero",
        group::is_zero(&sum),
        format!("sum of weights = {sum:?}"),
    ));

    let zero_lines: Vec<String> = arr
        .labels()
        .into_iter()
        .filter(|&l| group::is_zero(c.weight(l)))
        .map(|l| format!("l{l}"))
        .collect();
    checks.push(Check::new(
        "lines_branched",
        zero_lines.is_empty(),
        if zero_lines.is_empty() {
            "every line has nonzero weight".to_string()
        } else {
            format!("zero weight on {}", zero_lines.join(", "))
        },
    ));

    let divisor = BranchDivisor::new(arr, c);
    let bad_nodes: Vec<String> = divisor
        .nodes
        .iter()
        .filter(|n| group::rank_mod(&n.weights, p) < 2)
        .map(|n| n.name.clone())
        .collect();
    checks.push(Check::new(
        "smooth_nodes",
        bad_nodes.is_empty(),
        if bad_nodes.is_empty() {
            format!("all {} nodes have inertia of order {}^2", divisor.nodes.len(), p)
        } else {
            format!("inertia of order < {}^2 at {}", p, bad_nodes.join(", "))
        },
    ));

    Ok(ValidationReport { checks })
}
