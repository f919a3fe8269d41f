use std::collections::BTreeMap;
use std::fmt;

use super::CycloNum;

/// Sparse bivariate polynomial over Q(μ), keyed by exponent pairs `(i, j)` of `x^i y^j`.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), CycloNum>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: CycloNum) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        BiPoly::constant(CycloNum::one())
    }

    pub fn monomial(i: u32, j: u32, c: CycloNum) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, &c);
        p
    }

    pub fn x() -> Self {
        BiPoly::monomial(1, 0, CycloNum::one())
    }

    pub fn y() -> Self {
        BiPoly::monomial(0, 1, CycloNum::one())
    }

    /// The affine linear form `c0 + cx·x + cy·y`.
    pub fn linear(c0: &CycloNum, cx: &CycloNum, cy: &CycloNum) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, c0);
        p.add_term(1, 0, cx);
        p.add_term(0, 1, cy);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), CycloNum)>) -> Self {
        let mut p = BiPoly::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, &c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn coeff(&self, i: u32, j: u32) -> CycloNum {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CycloNum)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, &-c);
        }
        out
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycloNum) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> BiPoly {
        (0..exp).fold(BiPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &CycloNum, y: &CycloNum) -> CycloNum {
        let mut acc = CycloNum::zero();
        for (&(i, j), c) in &self.terms {
            acc += &(&(c * &x.pow(i)) * &y.pow(j));
        }
        acc
    }

    /// `p(x + a, y + b)`, computed by expanding powers of the shifted variables.
    pub fn translate(&self, a: &CycloNum, b: &CycloNum) -> BiPoly {
        let sx = BiPoly::linear(a, &CycloNum::one(), &CycloNum::zero());
        let sy = BiPoly::linear(b, &CycloNum::zero(), &CycloNum::one());
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            out = out.add(&sx.pow(i).mul(&sy.pow(j)).scale(c));
        }
        out
    }

    /// Vanishing order at `(a, b)`: the lowest total degree present after moving the
    /// point to the origin. `None` for the zero polynomial.
    pub fn order_at(&self, a: &CycloNum, b: &CycloNum) -> Option<u32> {
        self.translate(a, b).terms.keys().map(|(i, j)| i + j).min()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, reads like the usual textbook order
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|p, q| (q.0 + q.1, q.0).cmp(&(p.0 + p.1, p.0)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let c = &self.terms[&(i, j)];
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let px = match i {
                        0 => String::new(),
                        1 => "x".to_string(),
                        _ => format!("x^{i}"),
                    };
                    let py = match j {
                        0 => String::new(),
                        1 => "y".to_string(),
                        _ => format!("y^{j}"),
                    };
                    format!("{px}{py}")
                }
            };
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
