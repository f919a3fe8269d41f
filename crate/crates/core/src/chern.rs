//! Intersection theory on the plane blown up at the multiple points of an
//! arrangement, and the Chern numbers of the resolved abelian cover over it.
//!
//! Everything is computed downstairs in Pic(Y) ⊗ Q. For a cover f: X̃ → Y of degree
//! |G| with ramification index p along the branch divisor B,
//!
//! * K_X̃ = f*(K_Y + (1 − 1/p)B),
//! * f*A · f*B = |G| (A · B),
//! * f*(branch component) = p · (reduced preimage).

use std::ops::{Add, Sub};

use serde::Serialize;

use crate::arrangement::{Arrangement, MultiplePoint};
use crate::check::Check;
use crate::cover::{group, validate_character, BranchDivisor, CharacterMap, CoverError};
use crate::exactmath::RatNum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChernError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("{what} = {value} is not an integer")]
    NonIntegral { what: &'static str, value: RatNum },
}

/// A rational divisor class `h·H + Σ eᵢ·Eᵢ` on the blown-up plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub h: RatNum,
    pub e: Vec<RatNum>,
}

impl DivisorClass {
    pub fn zero(points: usize) -> Self {
        DivisorClass {
            h: RatNum::zero(),
            e: vec![RatNum::zero(); points],
        }
    }

    /// Intersection pairing for the form diag(1, −1, …, −1).
    pub fn dot(&self, other: &DivisorClass) -> RatNum {
        let mut acc = &self.h * &other.h;
        for (a, b) in self.e.iter().zip(&other.e) {
            acc -= &(a * b);
        }
        acc
    }

    pub fn square(&self) -> RatNum {
        self.dot(self)
    }

    pub fn scale(&self, q: &RatNum) -> DivisorClass {
        DivisorClass {
            h: &self.h * q,
            e: self.e.iter().map(|x| x * q).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            h: &self.h + &rhs.h,
            e: self.e.iter().zip(&rhs.e).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            h: &self.h - &rhs.h,
            e: self.e.iter().zip(&rhs.e).map(|(a, b)| a - b).collect(),
        }
    }
}

/// The plane blown up once at each point of multiplicity ≥ 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowUpSurface {
    points: Vec<MultiplePoint>,
    line_labels: Vec<usize>,
}

impl BlowUpSurface {
    pub fn points(&self) -> &[MultiplePoint] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn hyperplane(&self) -> DivisorClass {
        DivisorClass {
            h: RatNum::one(),
            ..DivisorClass::zero(self.points.len())
        }
    }

    pub fn exceptional(&self, idx: usize) -> DivisorClass {
        let mut c = DivisorClass::zero(self.points.len());
        c.e[idx] = RatNum::one();
        c
    }

    pub fn point_index(&self, pt: &MultiplePoint) -> Option<usize> {
        self.points.iter().position(|q| q == pt)
    }

    /// L_r = H − Σ_{P ∋ l_r} E_P.
    pub fn strict_transform(&self, label: usize) -> DivisorClass {
        DivisorClass {
            h: RatNum::one(),
            e: self
                .points
                .iter()
                .map(|p| {
                    if p.contains_line(label) {
                        RatNum::integer(-1)
                    } else {
                        RatNum::zero()
                    }
                })
                .collect(),
        }
    }

    /// K_Y = −3H + Σ E_P.
    pub fn canonical(&self) -> DivisorClass {
        DivisorClass {
            h: RatNum::integer(-3),
            e: vec![RatNum::one(); self.points.len()],
        }
    }

    pub fn euler(&self) -> i64 {
        3 + self.points.len() as i64
    }

    pub fn line_labels(&self) -> &[usize] {
        &self.line_labels
    }
}

pub fn blow_up_model(arr: &Arrangement) -> BlowUpSurface {
    BlowUpSurface {
        points: arr.multiple_points().into_iter().cloned().collect(),
        line_labels: arr.labels(),
    }
}

/// An abelian cover of a blown-up plane, reduced to the data the Chern number
/// computations need.
#[derive(Clone, Debug)]
pub struct CoverModel {
    surface: BlowUpSurface,
    p: u32,
    group_order: u64,
    branch_lines: Vec<usize>,
    /// Indices into `surface.points()` of the branched exceptional curves.
    branch_points: Vec<usize>,
    /// log2_p of the inertia group order at each node.
    node_inertia_ranks: Vec<usize>,
}

impl CoverModel {
    /// Validates `c` against `arr` and builds the model.
    pub fn new(arr: &Arrangement, c: &CharacterMap) -> Result<Self, ChernError> {
        validate_character(c, arr)?.into_result()?;
        let surface = blow_up_model(arr);
        let divisor = BranchDivisor::new(arr, c);
        let branch_points = divisor
            .branched_exceptional()
            .map(|pt| surface.point_index(pt).expect("exceptional points come from the arrangement"))
            .collect();
        let node_inertia_ranks = divisor
            .nodes
            .iter()
            .map(|n| group::rank_mod(&n.weights, c.p()))
            .collect();
        Ok(CoverModel {
            surface,
            p: c.p(),
            group_order: c.group_order(),
            branch_lines: arr.labels(),
            branch_points,
            node_inertia_ranks,
        })
    }

    /// The identity cover of the blown-up plane (degree 1, nothing branched).
    pub fn unbranched(arr: &Arrangement) -> Self {
        CoverModel {
            surface: blow_up_model(arr),
            p: 1,
            group_order: 1,
            branch_lines: Vec::new(),
            branch_points: Vec::new(),
            node_inertia_ranks: Vec::new(),
        }
    }

    pub fn surface(&self) -> &BlowUpSurface {
        &self.surface
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn branch_lines(&self) -> &[usize] {
        &self.branch_lines
    }

    pub fn branch_points(&self) -> &[usize] {
        &self.branch_points
    }

    fn order(&self) -> RatNum {
        RatNum::integer(self.group_order as i64)
    }

    fn ramification_factor(&self) -> RatNum {
        if self.p <= 1 {
            return RatNum::zero();
        }
        RatNum::one() - RatNum::new(1, i64::from(self.p)).expect("p > 1")
    }

    /// Σ L_r over branch lines.
    pub fn line_sum(&self) -> DivisorClass {
        self.branch_lines
            .iter()
            .fold(DivisorClass::zero(self.surface.point_count()), |acc, &l| {
                &acc + &self.surface.strict_transform(l)
            })
    }

    /// Σ E_P over branched exceptional curves.
    pub fn exceptional_sum(&self) -> DivisorClass {
        self.branch_points
            .iter()
            .fold(DivisorClass::zero(self.surface.point_count()), |acc, &i| {
                &acc + &self.surface.exceptional(i)
            })
    }

    pub fn branch_divisor(&self) -> DivisorClass {
        &self.line_sum() + &self.exceptional_sum()
    }

    /// K_Y + (1 − 1/p)·B, whose pull-back is K_X̃.
    pub fn log_canonical(&self) -> DivisorClass {
        &self.surface.canonical() + &self.branch_divisor().scale(&self.ramification_factor())
    }

    pub fn k_squared_downstairs(&self) -> RatNum {
        self.log_canonical().square()
    }

    pub fn k_squared(&self) -> Result<i64, ChernError> {
        integral("K^2", self.order() * self.k_squared_downstairs())
    }

    /// Stratified count e(X̃) = |G|·e(Y∖B) + (|G|/p)·e(B∖nodes) + Σ_nodes |G|/|I_node|.
    pub fn euler_strata(&self) -> EulerStrata {
        let components = (self.branch_lines.len() + self.branch_points.len()) as i64;
        let nodes = self.node_inertia_ranks.len() as i64;
        let smooth_part = 2 * components - 2 * nodes;
        let branch_euler = smooth_part + nodes;
        EulerStrata {
            complement: self.surface.euler() - branch_euler,
            smooth_branch: smooth_part,
            nodes: self.node_inertia_ranks.len(),
        }
    }

    pub fn euler(&self) -> Result<i64, ChernError> {
        let s = self.euler_strata();
        let order = self.order();
        let mut e = &order * &RatNum::integer(s.complement);
        if !self.branch_lines.is_empty() || !self.branch_points.is_empty() {
            let per_sheet = &order / &RatNum::integer(i64::from(self.p));
            e += &(&per_sheet * &RatNum::integer(s.smooth_branch));
        }
        for &rank in &self.node_inertia_ranks {
            let inertia = RatNum::integer(i64::from(self.p).pow(rank as u32));
            e += &(&order / &inertia);
        }
        integral("e", e)
    }

    pub fn invariants(&self) -> Result<CoverInvariants, ChernError> {
        let k_squared = self.k_squared()?;
        let euler = self.euler()?;
        Ok(CoverInvariants {
            degree: self.group_order,
            k_squared,
            euler,
            chi_holo: RatNum::new(k_squared + euler, 12).expect("nonzero denominator"),
        })
    }

    /// C_r², D_P², C_r·K and D_P·K through the pull-back formulas.
    pub fn upstairs_intersections(&self) -> UpstairsIntersections {
        let order = self.order();
        let p = RatNum::integer(i64::from(self.p));
        let k = self.log_canonical();
        let self_factor = &order / &(&p * &p);
        let k_factor = &order / &p;
        let lines = self
            .branch_lines
            .iter()
            .map(|&l| {
                let c = self.surface.strict_transform(l);
                ComponentIntersections {
                    component: format!("C{l}"),
                    self_intersection: &self_factor * &c.square(),
                    canonical_degree: &k_factor * &c.dot(&k),
                }
            })
            .collect();
        let points = self
            .branch_points
            .iter()
            .map(|&i| {
                let e = self.surface.exceptional(i);
                ComponentIntersections {
                    component: format!("D{}", self.surface.points()[i].name()),
                    self_intersection: &self_factor * &e.square(),
                    canonical_degree: &k_factor * &e.dot(&k),
                }
            })
            .collect();
        UpstairsIntersections { lines, points }
    }

    /// Writes K_X̃ = a·ΣC_r + b·ΣD_P when K_Y + (1 − 1/p)B lies in the span of
    /// ΣL_r and ΣE_P. Returns `(a, b)`.
    pub fn canonical_decomposition(&self) -> Option<(RatNum, RatNum)> {
        let target = self.log_canonical();
        let lines = self.line_sum();
        let exc = self.exceptional_sum();
        if lines.h.is_zero() {
            return None;
        }
        let alpha = &target.h / &lines.h;
        let rest = &target - &lines.scale(&alpha);
        // rest must be β·ΣE_P on the branched points and zero elsewhere
        let beta = match self.branch_points.first() {
            Some(&i) => rest.e[i].clone(),
            None => RatNum::zero(),
        };
        if &rest - &exc.scale(&beta) != DivisorClass::zero(self.surface.point_count()) {
            return None;
        }
        let p = RatNum::integer(i64::from(self.p));
        Some((&p * &alpha, &p * &beta))
    }

    /// The inequalities behind ampleness of K that are checkable here: K² > 0 and
    /// positive degree of K on every branch component. Curves outside the branch
    /// locus are not examined.
    pub fn ampleness_checks(&self) -> Vec<Check> {
        let mut out = vec![Check::new(
            "K^2 > 0",
            self.k_squared_downstairs().is_positive(),
            format!("K^2 = {}", self.order() * self.k_squared_downstairs()),
        )];
        let table = self.upstairs_intersections();
        for c in table.lines.iter().chain(&table.points) {
            out.push(Check::new(
                format!("K.{} > 0", c.component),
                c.canonical_degree.is_positive(),
                format!("K.{} = {}", c.component, c.canonical_degree),
            ));
        }
        out
    }
}

fn integral(what: &'static str, value: RatNum) -> Result<i64, ChernError> {
    value
        .to_i64()
        .ok_or(ChernError::NonIntegral { what, value })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerStrata {
    /// e(Y ∖ B).
    pub complement: i64,
    /// e(B ∖ nodes).
    pub smooth_branch: i64,
    pub nodes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverInvariants {
    pub degree: u64,
    pub k_squared: i64,
    pub euler: i64,
    /// χ(O) = (K² + e)/12.
    pub chi_holo: RatNum,
}

impl CoverInvariants {
    pub fn is_miyaoka_yau(&self) -> bool {
        self.k_squared == 3 * self.euler
    }

    pub fn noether_integral(&self) -> bool {
        self.chi_holo.is_integer()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentIntersections {
    pub component: String,
    pub self_intersection: RatNum,
    pub canonical_degree: RatNum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpstairsIntersections {
    pub lines: Vec<ComponentIntersections>,
    pub points: Vec<ComponentIntersections>,
}

/// K² of the resolved cover.
pub fn cover_k_squared(arr: &Arrangement, c: &CharacterMap) -> Result<i64, ChernError> {
    CoverModel::new(arr, c)?.k_squared()
}

/// Topological Euler number of the resolved cover.
pub fn cover_euler(arr: &Arrangement, c: &CharacterMap) -> Result<i64, ChernError> {
    CoverModel::new(arr, c)?.euler()
}

pub fn upstairs_intersections(
    arr: &Arrangement,
    c: &CharacterMap,
) -> Result<UpstairsIntersections, ChernError> {
    Ok(CoverModel::new(arr, c)?.upstairs_intersections())
}
