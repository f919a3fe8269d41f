//! Geometric genus of abelian covers by reduction to cyclic quotients.
//!
//! The cover of degree p^m splits into its (p^m − 1)/(p − 1) cyclic quotients, and
//! p_g is the sum of their geometric genera. For the quotient z^p = Π h_i^{k_i}, a
//! 2-form in the j-th eigenspace is `g_j(x, y)·z^j·dx∧dy / z^{p−1}` with
//!
//! * deg g_j ≤ d_j,
//! * g_j divisible by h_i^{r_{j,i}} for every branch line,
//! * g_j vanishing to order s_{j,P} at every singular point P of the branch curve.
//!
//! Each eigenspace is the kernel of an exact linear system over Q(μ).

mod chart;
mod tables;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{Arrangement, MultiplePoint};
use crate::chern::{ChernError, CoverModel};
use crate::cover::{quotient_rows, CharacterMap, CharacterRow, CoverError};
use crate::exactmath::{eliminator, BiPoly, CycloNum, Eliminator, ExactMatrix, RatNum};

pub use chart::{
    chart_candidates, choose_chart, choose_chart_seeded, AffineChart, ChartError, ChartPoint,
    CHART_SEARCH_BOUND,
};
pub use tables::{
    bound_tables, degree_bound, divisibility_formula, divisibility_order, point_order,
    point_order_formula, BoundCell, BoundKind, BoundTable, TableMismatch, PRINTED_DEGREE_BOUNDS,
    PRINTED_DIVISIBILITY, PRINTED_POINT_ORDERS,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenusError {
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Chern(#[from] ChernError),
    #[error("row has {row} entries but the arrangement has {lines} lines")]
    LengthMismatch { row: usize, lines: usize },
    #[error("eigenspace index {j} out of range for p = {p}")]
    Index { j: u32, p: u32 },
    #[error("unknown eliminator {0:?}")]
    UnknownEliminator(String),
}

/// The cyclic cover z^p = Π h_i^{k_i} attached to one quotient row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCoverData {
    row: CharacterRow,
    branch_lines: Vec<usize>,
    n: u64,
}

impl CyclicCoverData {
    pub fn new(row: CharacterRow) -> Self {
        let branch_lines = (1..=row.entries().len()).filter(|&l| row.entry(l) != 0).collect();
        let n = row.sum() / u64::from(row.p());
        CyclicCoverData {
            row,
            branch_lines,
            n,
        }
    }

    pub fn row(&self) -> &CharacterRow {
        &self.row
    }

    pub fn p(&self) -> u32 {
        self.row.p()
    }

    /// Labels with k_i ≠ 0.
    pub fn branch_lines(&self) -> &[usize] {
        &self.branch_lines
    }

    /// Σ k_i = n·p.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn weight(&self, label: usize) -> u32 {
        self.row.entry(label)
    }

    /// Intersection points of the arrangement lying on at least two branch lines.
    pub fn singular_points<'a>(&self, arr: &'a Arrangement) -> Vec<&'a MultiplePoint> {
        arr.intersection_points()
            .iter()
            .filter(|p| p.lines.iter().filter(|&&l| self.weight(l) != 0).count() >= 2)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCondition {
    pub point: String,
    pub branch_lines: Vec<usize>,
    /// r_P = Σ k_i over the branch lines through P.
    pub weight_sum: u64,
    /// s_{j,P}.
    pub order: u32,
    /// Order still to be imposed on ĝ once the line factors are split off.
    pub residual: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenspaceSpec {
    pub p: u32,
    pub j: u32,
    pub degree_bound: i64,
    /// `(label, r_{j,i})` for each branch line.
    pub divisibility: Vec<(usize, u32)>,
    pub point_orders: Vec<PointCondition>,
}

impl EigenspaceSpec {
    pub fn divisibility_total(&self) -> i64 {
        self.divisibility.iter().map(|&(_, r)| i64::from(r)).sum()
    }

    /// Degree bound for ĝ = g_j / Π h_i^{r_{j,i}}.
    pub fn residual_degree(&self) -> i64 {
        self.degree_bound - self.divisibility_total()
    }

    /// Dimension of all polynomials of degree ≤ residual_degree.
    pub fn unconstrained_dimension(&self) -> usize {
        let d = self.residual_degree();
        if d < 0 {
            0
        } else {
            ((d + 1) * (d + 2) / 2) as usize
        }
    }
}

pub fn eigenspace_spec(
    arr: &Arrangement,
    data: &CyclicCoverData,
    j: u32,
) -> Result<EigenspaceSpec, GenusError> {
    let p = data.p();
    if j >= p {
        return Err(GenusError::Index { j, p });
    }
    if data.row.entries().len() != arr.line_count() {
        return Err(GenusError::LengthMismatch {
            row: data.row.entries().len(),
            lines: arr.line_count(),
        });
    }
    let r_of = |l: usize| divisibility_order(p, u64::from(data.weight(l)), j);
    let divisibility = data.branch_lines.iter().map(|&l| (l, r_of(l))).collect();
    let point_orders = data
        .singular_points(arr)
        .into_iter()
        .map(|pt| {
            let branch_lines: Vec<usize> =
                pt.lines.iter().copied().filter(|&l| data.weight(l) != 0).collect();
            let weight_sum = branch_lines.iter().map(|&l| u64::from(data.weight(l))).sum();
            let order = point_order(p, weight_sum, j);
            let absorbed: u32 = branch_lines.iter().map(|&l| r_of(l)).sum();
            PointCondition {
                point: pt.name(),
                branch_lines,
                weight_sum,
                order,
                residual: order.saturating_sub(absorbed),
            }
        })
        .collect();
    Ok(EigenspaceSpec {
        p,
        j,
        degree_bound: degree_bound(p, data.n, j),
        divisibility,
        point_orders,
    })
}

/// One eigenspace of regular 2-forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    pub spec: EigenspaceSpec,
    pub dimension: usize,
    /// Π h_i^{r_{j,i}}.
    pub prefactor: BiPoly,
    /// Basis of the admissible ĝ.
    pub basis: Vec<BiPoly>,
}

impl Eigenspace {
    /// Basis of g_j = prefactor · ĝ.
    pub fn forms(&self) -> Vec<BiPoly> {
        self.basis.iter().map(|g| self.prefactor.mul(g)).collect()
    }

    /// Re-checks every form against the degree bound and the point orders.
    pub fn verify(&self, chart: &AffineChart, arr: &Arrangement) -> bool {
        self.forms().iter().all(|g| {
            let degree_ok = g.degree().map_or(true, |d| i64::from(d) <= self.spec.degree_bound);
            degree_ok
                && self.spec.point_orders.iter().all(|cond| {
                    let labels: Vec<usize> = cond_labels(&cond.point, arr);
                    let Some(pt) = arr.point_named(&labels) else {
                        return false;
                    };
                    let Some((x, y)) = chart.affine_point(pt) else {
                        return false;
                    };
                    g.order_at(x, y).map_or(true, |o| o >= cond.order)
                })
        })
    }
}

fn cond_labels(name: &str, arr: &Arrangement) -> Vec<usize> {
    arr.intersection_points()
        .iter()
        .find(|p| p.name() == name)
        .map(|p| p.lines.iter().copied().collect())
        .unwrap_or_default()
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// Monomials x^a y^b with a + b ≤ d, in degree-lexicographic order.
fn monomials(d: u32) -> Vec<(u32, u32)> {
    (0..=d)
        .flat_map(|t| (0..=t).rev().map(move |a| (a, t - a)))
        .collect()
}

/// Solves for one eigenspace inside a fixed chart with a fixed elimination backend.
#[derive(Clone, Copy)]
pub struct GenusSolver<'a> {
    arr: &'a Arrangement,
    chart: &'a AffineChart,
    eliminator: &'static dyn Eliminator,
}

impl<'a> GenusSolver<'a> {
    pub fn new(arr: &'a Arrangement, chart: &'a AffineChart) -> Self {
        GenusSolver {
            arr,
            chart,
            eliminator: eliminator(crate::exactmath::elimination::DEFAULT_ELIMINATOR)
                .expect("default backend is registered"),
        }
    }

    pub fn with_eliminator(mut self, name: &str) -> Result<Self, GenusError> {
        self.eliminator =
            eliminator(name).ok_or_else(|| GenusError::UnknownEliminator(name.to_string()))?;
        Ok(self)
    }

    pub fn eliminator_name(&self) -> &'static str {
        self.eliminator.name()
    }

    pub fn eigenspace(&self, data: &CyclicCoverData, j: u32) -> Result<Eigenspace, GenusError> {
        let spec = eigenspace_spec(self.arr, data, j)?;

        let mut points = Vec::new();
        for cond in &spec.point_orders {
            let labels = cond_labels(&cond.point, self.arr);
            let pt = self.arr.point_named(&labels).expect("condition built from this arrangement");
            let affine = self
                .chart
                .affine_point(pt)
                .ok_or_else(|| ChartError::SingularAtInfinity(cond.point.clone()))?;
            points.push((affine.clone(), cond.residual));
        }

        let mut prefactor = BiPoly::one();
        for &(l, r) in &spec.divisibility {
            let h = self.chart.line_form(l).expect("chart covers every line");
            prefactor = prefactor.mul(&h.pow(r));
        }

        let d = spec.residual_degree();
        if d < 0 {
            return Ok(Eigenspace {
                spec,
                dimension: 0,
                prefactor,
                basis: Vec::new(),
            });
        }
        let d = d as u32;
        let monos = monomials(d);
        let mut rows = Vec::new();
        for ((px, py), sigma) in &points {
            let xp: Vec<CycloNum> = (0..=d).map(|e| px.pow(e)).collect();
            let yp: Vec<CycloNum> = (0..=d).map(|e| py.pow(e)).collect();
            for u in 0..*sigma {
                for v in 0..sigma - u {
                    // (1/u!v!)·∂ˣᵘ∂ʸᵛ of each monomial at the point
                    rows.push(
                        monos
                            .iter()
                            .map(|&(a, b)| {
                                if a < u || b < v {
                                    return CycloNum::zero();
                                }
                                let c = RatNum::integer(binomial(a, u) * binomial(b, v));
                                (&xp[(a - u) as usize] * &yp[(b - v) as usize]).scale(&c)
                            })
                            .collect(),
                    );
                }
            }
        }

        let basis: Vec<BiPoly> = if rows.is_empty() {
            monos
                .iter()
                .map(|&(a, b)| BiPoly::monomial(a, b, CycloNum::one()))
                .collect()
        } else {
            let m = ExactMatrix::from_rows(monos.len(), rows).expect("rows have one entry per monomial");
            self.eliminator
                .rank_kernel(&m)
                .kernel
                .into_iter()
                .map(|v| BiPoly::from_terms(monos.iter().copied().zip(v)))
                .collect()
        };
        Ok(Eigenspace {
            spec,
            dimension: basis.len(),
            prefactor,
            basis,
        })
    }

    /// All p eigenspaces of one cyclic quotient, solved concurrently.
    pub fn cyclic(&self, data: &CyclicCoverData) -> Result<Vec<Eigenspace>, GenusError> {
        (0..data.p())
            .into_par_iter()
            .map(|j| self.eigenspace(data, j))
            .collect()
    }

    pub fn abelian(&self, c: &CharacterMap) -> Result<GenusReport, GenusError> {
        let model = CoverModel::new(self.arr, c)?;
        let invariants = model.invariants()?;
        let family = quotient_rows(c)?;

        let quotients = family
            .subgroups
            .par_iter()
            .map(|s| {
                let eigenspaces = self.cyclic(&CyclicCoverData::new(s.canonical.clone()))?;
                let dimensions: Vec<usize> = eigenspaces.iter().map(|e| e.dimension).collect();
                Ok(QuotientGenus {
                    subgroup: s.describe(),
                    row: s.canonical.clone(),
                    pg: dimensions.iter().sum(),
                    dimensions,
                    eigenspaces,
                })
            })
            .collect::<Result<Vec<_>, GenusError>>()?;

        let pg: usize = quotients.iter().map(|q| q.pg).sum();
        let chi = invariants.chi_holo.to_i64().ok_or(ChernError::NonIntegral {
            what: "chi",
            value: invariants.chi_holo.clone(),
        })?;
        Ok(GenusReport {
            chart: self.chart.to_string(),
            eliminator: self.eliminator.name().to_string(),
            quotients,
            pg,
            chi,
            q: chi - 1 - pg as i64,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientGenus {
    pub subgroup: String,
    pub row: CharacterRow,
    /// Eigenspace dimensions for j = 0..p.
    pub dimensions: Vec<usize>,
    pub pg: usize,
    #[serde(skip)]
    pub eigenspaces: Vec<Eigenspace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub chart: String,
    pub eliminator: String,
    pub quotients: Vec<QuotientGenus>,
    pub pg: usize,
    /// χ(O) from the Chern numbers.
    pub chi: i64,
    pub q: i64,
}

impl GenusReport {
    pub fn quotient_pg(&self) -> Vec<usize> {
        self.quotients.iter().map(|q| q.pg).collect()
    }

    pub fn dimension_table(&self) -> Vec<Vec<usize>> {
        self.quotients.iter().map(|q| q.dimensions.clone()).collect()
    }
}

/// Dimension and basis of the j-th eigenspace, default backend.
pub fn eigenspace_dimension(
    arr: &Arrangement,
    chart: &AffineChart,
    data: &CyclicCoverData,
    j: u32,
) -> Result<Eigenspace, GenusError> {
    GenusSolver::new(arr, chart).eigenspace(data, j)
}

/// p_g of one cyclic quotient.
pub fn cyclic_pg(
    arr: &Arrangement,
    chart: &AffineChart,
    data: &CyclicCoverData,
) -> Result<usize, GenusError> {
    Ok(GenusSolver::new(arr, chart)
        .cyclic(data)?
        .iter()
        .map(|e| e.dimension)
        .sum())
}

/// p_g and q of the full abelian cover, in the first valid chart.
pub fn abelian_pg(arr: &Arrangement, c: &CharacterMap) -> Result<GenusReport, GenusError> {
    let chart = choose_chart(arr)?;
    GenusSolver::new(arr, &chart).abelian(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_ceva;
    use crate::cover::ceva_character;

    fn row(v: [i64; 9]) -> CyclicCoverData {
        CyclicCoverData::new(CharacterRow::new(5, v.to_vec()).unwrap())
    }

    #[test]
    fn first_quotient_has_one_form() {
        let arr = build_ceva();
        let chart = choose_chart(&arr).unwrap();
        let data = row([1, 1, 1, 3, 3, 0, 0, 0, 1]);
        assert_eq!(data.n(), 2);
        let e1 = eigenspace_dimension(&arr, &chart, &data, 1).unwrap();
        assert_eq!(e1.dimension, 1);
        // the form is a multiple of l4·l5·l9
        let expected = [4, 5, 9]
            .iter()
            .fold(BiPoly::one(), |acc, &l| acc.mul(chart.line_form(l).unwrap()));
        let form = &e1.forms()[0];
        let lead = |p: &BiPoly| p.terms().last().map(|(_, c)| c.clone()).unwrap();
        let ratio = lead(form).checked_div(&lead(&expected)).unwrap();
        assert_eq!(form, &expected.scale(&ratio));
        assert_eq!(eigenspace_dimension(&arr, &chart, &data, 0).unwrap().dimension, 0);
    }

    #[test]
    fn second_quotient_dimensions() {
        let arr = build_ceva();
        let chart = choose_chart(&arr).unwrap();
        let data = row([1, 0, 1, 3, 0, 1, 1, 2, 1]);
        let dims: Vec<usize> = GenusSolver::new(&arr, &chart)
            .cyclic(&data)
            .unwrap()
            .iter()
            .map(|e| e.dimension)
            .collect();
        assert_eq!(dims, vec![2, 2, 1, 0, 0]);
    }

    #[test]
    fn spec_values_for_second_quotient() {
        let arr = build_ceva();
        let data = row([1, 0, 1, 3, 0, 1, 1, 2, 1]);
        let spec = eigenspace_spec(&arr, &data, 0).unwrap();
        assert_eq!(spec.degree_bound, 5);
        // k = 3 gives r = 2 and k = 2 gives r = 1
        assert_eq!(spec.divisibility_total(), 3);
        assert!(eigenspace_spec(&arr, &data, 5).is_err());
    }

    #[test]
    fn ceva_total() {
        let report = abelian_pg(&build_ceva(), &ceva_character()).unwrap();
        assert_eq!(report.quotient_pg(), vec![1, 5, 5, 13, 11, 1]);
        assert_eq!(report.pg, 36);
        assert_eq!(report.chi, 37);
        assert_eq!(report.q, 0);
    }

    #[test]
    fn monomial_order() {
        assert_eq!(monomials(1), vec![(0, 0), (1, 0), (0, 1)]);
        assert_eq!(monomials(2).len(), 6);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
    }
}
