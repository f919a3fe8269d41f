//! Closed-form invariants: generic-projection branch curves, deformation-class
//! counts and homeotopy-group orders.
//!
//! For a surface with K² = k and e = k/3, the generic projection given by L = mK
//! has degree L², and its branch curve is the image of the ramification curve
//! R ∈ |K + 3L|. Hence
//!
//! * deg f_m = L² = k·m²,
//! * deg C = L·R = k·m(3m + 1),
//! * g(C) = 1 + R·(R + K)/2 = k(3m + 2)(3m + 1)/2 + 1,
//! * c = 12L² + 9L·K + 2K² − e = (k/3)(36m² + 27m + 5).

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::check::Check;
use crate::exactmath::RatNum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumerologyError {
    #[error("m = {0} is below the admissible range m >= 5")]
    MultipleTooSmall(i64),
    #[error("{what} is not an integer for K^2 = {k_squared}")]
    NonIntegral { what: &'static str, k_squared: i64 },
    #[error("{what} does not fit in 64 bits")]
    Overflow { what: &'static str },
    #[error("n = {0} is outside the domain n >= {1}")]
    Domain(i64, i64),
}

/// K² values for which the formulas appear in print.
pub const PRINTED_K_SQUARED: [i64; 2] = [333, 9];

/// Polynomial in one variable m with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyM(Vec<RatNum>);

impl PolyM {
    pub fn new(coeffs: Vec<RatNum>) -> Self {
        let mut p = PolyM(coeffs);
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        PolyM::new(coeffs.iter().map(|&c| RatNum::integer(c)).collect())
    }

    pub fn constant(c: RatNum) -> Self {
        PolyM::new(vec![c])
    }

    /// The variable m.
    pub fn m() -> Self {
        PolyM::from_ints(&[0, 1])
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(RatNum::is_zero) {
            self.0.pop();
        }
    }

    pub fn coeffs(&self) -> &[RatNum] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &PolyM) -> PolyM {
        let n = self.0.len().max(other.0.len());
        let zero = RatNum::zero();
        PolyM::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &PolyM) -> PolyM {
        self.add(&other.scale(&RatNum::integer(-1)))
    }

    pub fn mul(&self, other: &PolyM) -> PolyM {
        if self.0.is_empty() || other.0.is_empty() {
            return PolyM::new(Vec::new());
        }
        let mut out = vec![RatNum::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        PolyM::new(out)
    }

    pub fn scale(&self, c: &RatNum) -> PolyM {
        PolyM::new(self.0.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, m: i64) -> RatNum {
        let m = RatNum::integer(m);
        self.0
            .iter()
            .rev()
            .fold(RatNum::zero(), |acc, c| &(&acc * &m) + c)
    }
}

impl fmt::Display for PolyM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let c = if c.is_integer() || i == 0 {
                    c.to_string()
                } else {
                    format!("({c})")
                };
                match i {
                    0 => c,
                    1 => format!("{c}m"),
                    _ => format!("{c}m^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for PolyM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PolyM {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The four branch-curve invariants as polynomials in m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicBranchCurve {
    pub k_squared: RatNum,
    pub covering_degree: PolyM,
    pub curve_degree: PolyM,
    pub geometric_genus: PolyM,
    pub cusp_count: PolyM,
}

pub fn symbolic_branch_curve(k_squared: i64) -> SymbolicBranchCurve {
    let k = RatNum::integer(k_squared);
    let m = PolyM::m();
    let lin = |a: i64, b: i64| PolyM::from_ints(&[b, a]);
    let half = RatNum::new(1, 2).expect("nonzero");
    let third = RatNum::new(1, 3).expect("nonzero");
    SymbolicBranchCurve {
        covering_degree: m.mul(&m).scale(&k),
        curve_degree: m.mul(&lin(3, 1)).scale(&k),
        geometric_genus: lin(3, 2)
            .mul(&lin(3, 1))
            .scale(&(&k * &half))
            .add(&PolyM::from_ints(&[1])),
        cusp_count: PolyM::from_ints(&[5, 27, 36]).scale(&(&k * &third)),
        k_squared: k,
    }
}

/// The same invariants recomputed from intersection numbers with L = mK,
/// R = K + 3L and e = K²/3.
pub fn projection_invariants(k_squared: i64) -> SymbolicBranchCurve {
    let k = RatNum::integer(k_squared);
    // a class a·K + b·L is stored as the polynomial a + b·m times K
    let dot = |u: &PolyM, v: &PolyM| u.mul(v).scale(&k);
    let kk = PolyM::from_ints(&[1]);
    let l = PolyM::m();
    let r = kk.add(&l.scale(&RatNum::integer(3)));
    let half = RatNum::new(1, 2).expect("nonzero");
    let euler = PolyM::constant(&k / &RatNum::integer(3));
    SymbolicBranchCurve {
        covering_degree: dot(&l, &l),
        curve_degree: dot(&l, &r),
        geometric_genus: dot(&r, &r.add(&kk)).scale(&half).add(&PolyM::from_ints(&[1])),
        cusp_count: dot(&l, &l)
            .scale(&RatNum::integer(12))
            .add(&dot(&l, &kk).scale(&RatNum::integer(9)))
            .add(&dot(&kk, &kk).scale(&RatNum::integer(2)))
            .sub(&euler),
        k_squared: k,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchCurveData {
    pub k_squared: i64,
    pub m: i64,
    pub covering_degree: i64,
    pub curve_degree: i64,
    pub geometric_genus: i64,
    pub cusp_count: i64,
    /// Nodes forced by the genus formula: (d − 1)(d − 2)/2 − g − c.
    pub node_count: i64,
    /// True when K² is not one of the printed instantiations.
    pub extrapolated: bool,
}

fn integral(what: &'static str, v: RatNum, k_squared: i64) -> Result<i64, NumerologyError> {
    if !v.is_integer() {
        return Err(NumerologyError::NonIntegral { what, k_squared });
    }
    v.to_i64().ok_or(NumerologyError::Overflow { what })
}

pub fn branch_curve_invariants(k_squared: i64, m: i64) -> Result<BranchCurveData, NumerologyError> {
    if m < 5 {
        return Err(NumerologyError::MultipleTooSmall(m));
    }
    if k_squared % 3 != 0 {
        return Err(NumerologyError::NonIntegral {
            what: "cusp count",
            k_squared,
        });
    }
    let s = symbolic_branch_curve(k_squared);
    let d = integral("curve degree", s.curve_degree.eval(m), k_squared)?;
    let g = integral("geometric genus", s.geometric_genus.eval(m), k_squared)?;
    let c = integral("cusp count", s.cusp_count.eval(m), k_squared)?;
    let arithmetic_genus = RatNum::integer(d - 1) * RatNum::integer(d - 2) * RatNum::new(1, 2).expect("nonzero");
    let nodes = integral("arithmetic genus", arithmetic_genus, k_squared)?
        .checked_sub(g)
        .and_then(|x| x.checked_sub(c))
        .ok_or(NumerologyError::Overflow { what: "node count" })?;
    Ok(BranchCurveData {
        k_squared,
        m,
        covering_degree: integral("covering degree", s.covering_degree.eval(m), k_squared)?,
        curve_degree: d,
        geometric_genus: g,
        cusp_count: c,
        node_count: nodes,
        extrapolated: !PRINTED_K_SQUARED.contains(&k_squared),
    })
}

/// Symbolic and numeric consistency checks for one K².
pub fn consistency_checks(k_squared: i64, m: i64) -> Vec<Check> {
    let printed = symbolic_branch_curve(k_squared);
    let derived = projection_invariants(k_squared);
    let mut out = vec![
        Check::new(
            "covering degree = L^2",
            printed.covering_degree == derived.covering_degree,
            format!("{}", printed.covering_degree),
        ),
        Check::new(
            "curve degree = L.(K+3L)",
            printed.curve_degree == derived.curve_degree,
            format!("{}", printed.curve_degree),
        ),
        Check::new(
            "genus = 1 + R.(R+K)/2",
            printed.geometric_genus == derived.geometric_genus,
            format!("{}", printed.geometric_genus),
        ),
        Check::new(
            "cusps = 12L^2 + 9L.K + 2K^2 - e",
            printed.cusp_count == derived.cusp_count,
            format!("{}", printed.cusp_count),
        ),
    ];
    match branch_curve_invariants(k_squared, m) {
        Ok(data) => out.push(Check::new(
            "node count >= 0",
            data.node_count >= 0,
            format!("m = {m}: {} nodes", data.node_count),
        )),
        Err(e) => out.push(Check::new("node count >= 0", false, e.to_string())),
    }
    out
}

/// (⌊n/4⌋ + 1)(⌊n/2⌋ − ⌊n/4⌋ + 1).
pub fn deformation_class_count(n: i64) -> Result<u64, NumerologyError> {
    if n < 2 {
        return Err(NumerologyError::Domain(n, 2));
    }
    let (q, h) = ((n / 4) as u64, (n / 2) as u64);
    Ok((q + 1) * (h - q + 1))
}

/// (m + 1)(n + 1).
pub fn product_class_count(m: u64, n: u64) -> u64 {
    (m + 1) * (n + 1)
}

/// |(Z/5 ⊕ Z/5)^n ⋊ S_n| = 25ⁿ·n!.
pub fn homeotopy_order(n: i64) -> Result<BigUint, NumerologyError> {
    if n < 1 {
        return Err(NumerologyError::Domain(n, 1));
    }
    let n = n as u32;
    let factorial: BigUint = (1..=n).map(BigUint::from).product();
    Ok(BigUint::from(25u32).pow(n) * factorial)
}
