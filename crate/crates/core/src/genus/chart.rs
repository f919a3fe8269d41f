//! Affine charts: a choice of line at infinity and the induced coordinates x, y.

use std::collections::BTreeMap;
use std::fmt;

use crate::arrangement::{Arrangement, MultiplePoint, ProjLine};
use crate::exactmath::{BiPoly, CycloNum, ExactMatrix};

/// Candidate infinity lines have non-negative integer coefficients up to this bound.
pub const CHART_SEARCH_BOUND: i64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChartError {
    #[error("the line at infinity is zero")]
    ZeroLine,
    #[error("the line at infinity coincides with l{0}")]
    ArrangementLine(usize),
    #[error("only {found} valid infinity lines with coefficients <= {bound}, seed {seed} requested")]
    Exhausted { bound: i64, seed: usize, found: usize },
    #[error("singular point p{0} lies on the line at infinity")]
    SingularAtInfinity(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoint {
    pub point: MultiplePoint,
    /// `None` when the point lies on the line at infinity.
    pub affine: Option<(CycloNum, CycloNum)>,
}

/// Affine coordinates on the complement of `infinity_line`.
///
/// With `M` the matrix whose rows are the infinity line and two standard basis
/// covectors, `X = M·x` and the chart is `(X₁/X₀, X₂/X₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineChart {
    infinity_line: [CycloNum; 3],
    coordinates: ExactMatrix,
    line_forms: BTreeMap<usize, BiPoly>,
    points: Vec<ChartPoint>,
}

impl AffineChart {
    pub fn new(arr: &Arrangement, infinity_line: [CycloNum; 3]) -> Result<Self, ChartError> {
        let ell = ProjLine::new(infinity_line.clone(), 0).map_err(|_| ChartError::ZeroLine)?;
        if let Some(l) = arr.lines().iter().find(|l| l.same_line(&ell)) {
            return Err(ChartError::ArrangementLine(l.label()));
        }

        let unit = |k: usize| -> Vec<CycloNum> {
            (0..3).map(|i| CycloNum::integer(i64::from(i == k))).collect()
        };
        let coordinates = [(1, 2), (0, 2), (0, 1)]
            .into_iter()
            .map(|(a, b)| {
                ExactMatrix::from_rows(3, vec![infinity_line.to_vec(), unit(a), unit(b)])
                    .expect("3x3 by construction")
            })
            .find(|m| m.det3().is_ok_and(|d| !d.is_zero()))
            .expect("a nonzero covector completes to a basis with two unit covectors");

        // l·x = w·X with l = Mᵀw
        let to_chart = coordinates
            .transpose()
            .inverse3()
            .expect("transpose of an invertible matrix is invertible");
        let line_forms = arr
            .lines()
            .iter()
            .map(|l| {
                let w = to_chart.mul_vec(l.coeffs()).expect("length 3");
                (l.label(), BiPoly::linear(&w[0], &w[1], &w[2]))
            })
            .collect();

        let points = arr
            .intersection_points()
            .iter()
            .map(|mp| {
                let x = coordinates.mul_vec(mp.point.coords()).expect("length 3");
                let affine = x[0].inv().ok().map(|inv| (&x[1] * &inv, &x[2] * &inv));
                ChartPoint {
                    point: mp.clone(),
                    affine,
                }
            })
            .collect();

        Ok(AffineChart {
            infinity_line,
            coordinates,
            line_forms,
            points,
        })
    }

    pub fn infinity_line(&self) -> &[CycloNum; 3] {
        &self.infinity_line
    }

    pub fn coordinates(&self) -> &ExactMatrix {
        &self.coordinates
    }

    /// Affine equation h_i(x, y) of the line with the given label.
    pub fn line_form(&self, label: usize) -> Option<&BiPoly> {
        self.line_forms.get(&label)
    }

    pub fn points(&self) -> &[ChartPoint] {
        &self.points
    }

    pub fn affine_point(&self, mp: &MultiplePoint) -> Option<&(CycloNum, CycloNum)> {
        self.points
            .iter()
            .find(|cp| cp.point == *mp)
            .and_then(|cp| cp.affine.as_ref())
    }
}

impl fmt::Display for AffineChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.infinity_line;
        write!(f, "({a})x1 + ({b})x2 + ({c})x3 = 0")
    }
}

/// Lines `a·x₁ + b·x₂ + c·x₃` with `0 ≤ a, b, c ≤ 7` in lexicographic order that are
/// not arrangement lines and pass through no intersection point.
pub fn chart_candidates(arr: &Arrangement) -> impl Iterator<Item = [i64; 3]> + '_ {
    let range = 0..=CHART_SEARCH_BOUND;
    range
        .clone()
        .flat_map(move |a| {
            let range = range.clone();
            range
                .clone()
                .flat_map(move |b| range.clone().map(move |c| [a, b, c]))
        })
        .filter(|c| *c != [0, 0, 0])
        .filter(move |c| {
            let line = ProjLine::new(c.map(CycloNum::integer), 0).expect("nonzero");
            !arr.lines().iter().any(|l| l.same_line(&line))
                && !arr.intersection_points().iter().any(|p| line.contains(&p.point))
        })
}

/// The first valid chart in search order.
pub fn choose_chart(arr: &Arrangement) -> Result<AffineChart, ChartError> {
    choose_chart_seeded(arr, 0)
}

/// The `seed`-th valid chart (0-based) in search order.
pub fn choose_chart_seeded(arr: &Arrangement, seed: usize) -> Result<AffineChart, ChartError> {
    match chart_candidates(arr).nth(seed) {
        Some(c) => AffineChart::new(arr, c.map(CycloNum::integer)),
        None => Err(ChartError::Exhausted {
            bound: CHART_SEARCH_BOUND,
            seed,
            found: chart_candidates(arr).count(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_ceva;

    #[test]
    fn ceva_has_valid_charts() {
        let arr = build_ceva();
        assert_eq!(chart_candidates(&arr).next(), Some([1, 1, 2]));
        assert_eq!(chart_candidates(&arr).count(), 336);
        let chart = choose_chart(&arr).unwrap();
        assert!(chart.points().iter().all(|p| p.affine.is_some()));
    }

    #[test]
    fn single_line_gets_next_coordinate_line() {
        let arr = Arrangement::new(vec![[0, 1, 0].map(CycloNum::integer)]).unwrap();
        let chart = choose_chart(&arr).unwrap();
        assert_eq!(chart.infinity_line(), &[0, 0, 1].map(CycloNum::integer));
    }

    #[test]
    fn line_forms_have_degree_one_and_vanish_on_points() {
        let arr = build_ceva();
        for seed in [0, 1, 100] {
            let chart = choose_chart_seeded(&arr, seed).unwrap();
            for cp in chart.points() {
                let (x, y) = cp.affine.as_ref().unwrap();
                for l in arr.lines() {
                    let h = chart.line_form(l.label()).unwrap();
                    assert_eq!(h.degree(), Some(1));
                    assert_eq!(h.eval(x, y).is_zero(), cp.point.contains_line(l.label()));
                }
            }
        }
    }

    #[test]
    fn rejects_arrangement_lines_and_exhaustion() {
        let arr = build_ceva();
        let l1 = arr.line(1).unwrap().coeffs().clone();
        assert_eq!(AffineChart::new(&arr, l1), Err(ChartError::ArrangementLine(1)));
        assert!(matches!(
            choose_chart_seeded(&arr, 336),
            Err(ChartError::Exhausted { found: 336, .. })
        ));
    }

    #[test]
    fn points_on_the_infinity_line_have_no_affine_coordinates() {
        let arr = build_ceva();
        // x3 = 0 passes through p123 = (0:1:0) and p456 = (1:0:0)
        let chart = AffineChart::new(&arr, [0, 0, 1].map(CycloNum::integer)).unwrap();
        let at_infinity: Vec<String> = chart
            .points()
            .iter()
            .filter(|p| p.affine.is_none())
            .map(|p| p.point.name())
            .collect();
        assert!(at_infinity.contains(&"123".to_string()));
        assert!(at_infinity.contains(&"456".to_string()));
    }
}
