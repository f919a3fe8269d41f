//! Line arrangements in the projective plane over Q(μ).

pub mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::exactmath::CycloNum;

pub use io::{ArrangementFile, Coefficient};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("line {0} has all coefficients zero")]
    ZeroLine(usize),
    #[error("point has all coordinates zero")]
    ZeroPoint,
    #[error("lines l{0} and l{1} coincide")]
    CoincidentLines(usize, usize),
    #[error("malformed arrangement file: {0}")]
    Parse(String),
}

fn normalize(coords: [CycloNum; 3]) -> Option<[CycloNum; 3]> {
    let lead = coords.iter().find(|c| !c.is_zero())?;
    let inv = lead.inv().ok()?;
    Some(coords.map(|c| &c * &inv))
}

fn cross(u: &[CycloNum; 3], v: &[CycloNum; 3]) -> [CycloNum; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

fn dot(u: &[CycloNum; 3], v: &[CycloNum; 3]) -> CycloNum {
    u.iter()
        .zip(v)
        .fold(CycloNum::zero(), |acc, (a, b)| acc + a * b)
}

/// The line `c₁x₁ + c₂x₂ + c₃x₃ = 0`, scaled so the first nonzero coefficient is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjLine {
    coeffs: [CycloNum; 3],
    label: usize,
}

impl ProjLine {
    pub fn new(coeffs: [CycloNum; 3], label: usize) -> Result<Self, ArrangementError> {
        let coeffs = normalize(coeffs).ok_or(ArrangementError::ZeroLine(label))?;
        Ok(ProjLine { coeffs, label })
    }

    pub fn coeffs(&self) -> &[CycloNum; 3] {
        &self.coeffs
    }

    /// 1-based label, `l₁ … lₙ`.
    pub fn label(&self) -> usize {
        self.label
    }

    pub fn eval(&self, p: &ProjPoint) -> CycloNum {
        dot(&self.coeffs, &p.coords)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// Same zero set, ignoring labels.
    pub fn same_line(&self, other: &ProjLine) -> bool {
        self.coeffs == other.coeffs
    }

    /// Image under complex conjugation of the coefficients.
    pub fn conj(&self) -> ProjLine {
        ProjLine::new(self.coeffs.clone().map(|c| c.conj()), self.label)
            .expect("conjugate of a nonzero line is nonzero")
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "l{}: ({})x1 + ({})x2 + ({})x3",
            self.label, self.coeffs[0], self.coeffs[1], self.coeffs[2]
        )
    }
}

/// A point `(x₁ : x₂ : x₃)`, scaled so the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint {
    coords: [CycloNum; 3],
}

impl ProjPoint {
    pub fn new(coords: [CycloNum; 3]) -> Result<Self, ArrangementError> {
        let coords = normalize(coords).ok_or(ArrangementError::ZeroPoint)?;
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[CycloNum; 3] {
        &self.coords
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Intersection point of two distinct lines.
pub fn intersect(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint, ArrangementError> {
    ProjPoint::new(cross(&l1.coeffs, &l2.coeffs))
        .map_err(|_| ArrangementError::CoincidentLines(l1.label, l2.label))
}

/// An intersection point together with the labels of every line through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplePoint {
    pub point: ProjPoint,
    pub lines: BTreeSet<usize>,
}

impl MultiplePoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn contains_line(&self, label: usize) -> bool {
        self.lines.contains(&label)
    }

    /// Concatenated labels, e.g. `"147"` (`"1.10.12"` once a label exceeds 9).
    pub fn name(&self) -> String {
        let sep = if self.lines.iter().any(|&l| l > 9) { "." } else { "" };
        self.lines
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// A finite set of distinct lines with all of their intersection points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<ProjLine>,
    /// Every intersection point, sorted by normalized coordinates.
    points: Vec<MultiplePoint>,
    /// Unordered pair `(r, s)`, `r < s`, to the index of its point in `points`.
    pair_map: BTreeMap<(usize, usize), usize>,
}

impl Arrangement {
    /// Builds an arrangement from lines labelled `1..=n` in order.
    pub fn new(coeffs: Vec<[CycloNum; 3]>) -> Result<Self, ArrangementError> {
        let lines = coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| ProjLine::new(c, i + 1))
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::from_lines(lines)
    }

    pub fn from_lines(lines: Vec<ProjLine>) -> Result<Self, ArrangementError> {
        let pairs: Vec<(usize, usize)> = (0..lines.len())
            .flat_map(|i| (i + 1..lines.len()).map(move |j| (i, j)))
            .collect();
        let hits: Vec<((usize, usize), ProjPoint)> = pairs
            .par_iter()
            .map(|&(i, j)| intersect(&lines[i], &lines[j]).map(|p| ((i, j), p)))
            .collect::<Result<_, _>>()?;

        let mut grouped: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
        for ((i, j), p) in &hits {
            let set = grouped.entry(p.clone()).or_default();
            set.insert(lines[*i].label);
            set.insert(lines[*j].label);
        }
        let points: Vec<MultiplePoint> = grouped
            .into_iter()
            .map(|(point, lines)| MultiplePoint { point, lines })
            .collect();
        let index: BTreeMap<&ProjPoint, usize> =
            points.iter().enumerate().map(|(k, mp)| (&mp.point, k)).collect();
        let pair_map = hits
            .iter()
            .map(|((i, j), p)| {
                let (a, b) = (lines[*i].label, lines[*j].label);
                ((a.min(b), a.max(b)), index[p])
            })
            .collect();
        Ok(Arrangement {
            lines,
            points,
            pair_map,
        })
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Line by 1-based label.
    pub fn line(&self, label: usize) -> Option<&ProjLine> {
        self.lines.iter().find(|l| l.label == label)
    }

    pub fn labels(&self) -> Vec<usize> {
        self.lines.iter().map(|l| l.label).collect()
    }

    /// Every intersection point, including simple double points.
    pub fn intersection_points(&self) -> &[MultiplePoint] {
        &self.points
    }

    /// Points on at least three lines.
    pub fn multiple_points(&self) -> Vec<&MultiplePoint> {
        self.points.iter().filter(|p| p.multiplicity() >= 3).collect()
    }

    /// Points on exactly two lines.
    pub fn double_points(&self) -> Vec<&MultiplePoint> {
        self.points.iter().filter(|p| p.multiplicity() == 2).collect()
    }

    pub fn pair_point(&self, r: usize, s: usize) -> Option<&MultiplePoint> {
        self.pair_map
            .get(&(r.min(s), r.max(s)))
            .map(|&k| &self.points[k])
    }

    /// Number of points of multiplicity ≥ 3 on each line, in line order.
    pub fn incidence_profile(&self) -> Vec<usize> {
        let mult = self.multiple_points();
        self.lines
            .iter()
            .map(|l| mult.iter().filter(|p| p.contains_line(l.label)).count())
            .collect()
    }

    /// Histogram multiplicity → number of points with that multiplicity.
    pub fn multiplicity_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for p in &self.points {
            *h.entry(p.multiplicity()).or_insert(0) += 1;
        }
        h
    }

    pub fn max_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity()).max().unwrap_or(0)
    }

    /// The line-label triples of the points of multiplicity exactly 3.
    pub fn concurrent_triples(&self) -> BTreeSet<[usize; 3]> {
        self.points
            .iter()
            .filter(|p| p.multiplicity() == 3)
            .map(|p| {
                let v: Vec<usize> = p.lines.iter().copied().collect();
                [v[0], v[1], v[2]]
            })
            .collect()
    }

    /// The multiple point whose incident set is exactly `labels`, if any.
    pub fn point_named(&self, labels: &[usize]) -> Option<&MultiplePoint> {
        let want: BTreeSet<usize> = labels.iter().copied().collect();
        self.points.iter().find(|p| p.lines == want)
    }
}

/// The nine lines cut out by `(x₁³ − x₂³)(x₂³ − x₃³)(x₃³ − x₁³) = 0`, labelled as in
/// the standard correspondence with the 3-torsion of a plane cubic.
pub fn build_ceva() -> Arrangement {
    let one = CycloNum::one;
    let zero = CycloNum::zero;
    let mu = CycloNum::mu();
    let mu2 = &mu * &mu;
    let neg = |c: &CycloNum| -c;
    Arrangement::new(vec![
        [one(), zero(), neg(&one())],  // l1 = x1 - x3
        [one(), zero(), neg(&mu2)],    // l2 = x1 - μ²x3
        [one(), zero(), mu.clone()],   // l3 = x1 + μx3
        [zero(), one(), neg(&mu2)],    // l4 = x2 - μ²x3
        [zero(), one(), neg(&one())],  // l5 = x2 - x3
        [zero(), one(), mu.clone()],   // l6 = x2 + μx3
        [one(), mu.clone(), zero()],   // l7 = x1 + μx2
        [one(), neg(&mu2), zero()],    // l8 = x1 - μ²x2
        [one(), neg(&one()), zero()],  // l9 = x1 - x2
    ])
    .expect("the Ceva lines are distinct")
}

/// Printed names of the triple points used in the form conditions of the
/// second quotient cover. One of them does not name a concurrent triple.
pub const PRINTED_POINT_NAMES: [[usize; 3]; 7] = [
    [3, 4, 9],
    [7, 8, 9],
    [1, 6, 8],
    [1, 4, 7],
    [1, 2, 3],
    [4, 5, 6],
    [2, 6, 7],
];

/// A printed point name that does not match any concurrent triple.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct NamingDiscrepancy {
    pub printed: String,
    /// Concurrent triples sharing two labels with the printed name.
    pub candidates: Vec<String>,
}

/// Checks printed triple-point names against the computed concurrency.
pub fn check_point_names(arr: &Arrangement, names: &[[usize; 3]]) -> Vec<NamingDiscrepancy> {
    let triples = arr.concurrent_triples();
    names
        .iter()
        .filter(|n| {
            let mut s = **n;
            s.sort_unstable();
            !triples.contains(&s)
        })
        .map(|n| {
            let printed: BTreeSet<usize> = n.iter().copied().collect();
            let candidates = triples
                .iter()
                .filter(|t| t.iter().filter(|l| printed.contains(l)).count() == 2)
                .map(|t| t.iter().map(|l| l.to_string()).collect::<String>())
                .collect();
            NamingDiscrepancy {
                printed: n.iter().map(|l| l.to_string()).collect(),
                candidates,
            }
        })
        .collect()
}
