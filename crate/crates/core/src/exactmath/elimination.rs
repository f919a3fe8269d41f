//! Rank and kernel computation over Q(μ).
//!
//! Two interchangeable backends sit behind [`Eliminator`]:
//!
//! * `fraction-free`: rows are scaled into the Eisenstein integers Z[μ] and reduced
//!   with Bareiss elimination, where every division is exact. This is the default.
//! * `gauss-jordan`: textbook reduced row echelon form over the field.
//!
//! Backends are looked up by name with [`eliminator`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::denominator_lcm;
use super::{CycloNum, ExactMatrix, RatNum};

/// Result of a rank/kernel computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    /// Basis of the right kernel, each vector of length `cols`.
    pub kernel: Vec<Vec<CycloNum>>,
}

impl RankKernel {
    pub fn nullity(&self) -> usize {
        self.kernel.len()
    }
}

pub trait Eliminator: Send + Sync {
    fn name(&self) -> &'static str;

    fn rank_kernel(&self, m: &ExactMatrix) -> RankKernel;
}

/// Bareiss elimination over Z[μ].
#[derive(Clone, Copy, Debug, Default)]
pub struct FractionFree;

/// Gauss–Jordan elimination over Q(μ).
#[derive(Clone, Copy, Debug, Default)]
pub struct GaussJordan;

static ELIMINATORS: [&dyn Eliminator; 2] = [&FractionFree, &GaussJordan];

pub const DEFAULT_ELIMINATOR: &str = "fraction-free";

/// All registered backends, default first.
pub fn eliminators() -> &'static [&'static dyn Eliminator] {
    &ELIMINATORS
}

pub fn eliminator(name: &str) -> Option<&'static dyn Eliminator> {
    ELIMINATORS.iter().copied().find(|e| e.name() == name)
}

/// Rank and kernel with the default backend.
pub fn matrix_rank_kernel(m: &ExactMatrix) -> RankKernel {
    FractionFree.rank_kernel(m)
}

/// Element `a + b·μ` of the Eisenstein integers.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Eisenstein {
    a: BigInt,
    b: BigInt,
}

impl Eisenstein {
    fn zero() -> Self {
        Eisenstein {
            a: BigInt::zero(),
            b: BigInt::zero(),
        }
    }

    fn one() -> Self {
        Eisenstein {
            a: BigInt::one(),
            b: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn mul(&self, o: &Eisenstein) -> Eisenstein {
        let bd = &self.b * &o.b;
        Eisenstein {
            a: &self.a * &o.a - &bd,
            b: &self.a * &o.b + &self.b * &o.a + bd,
        }
    }

    fn sub(&self, o: &Eisenstein) -> Eisenstein {
        Eisenstein {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }

    /// Exact quotient; the Bareiss invariant guarantees divisibility.
    fn div_exact(&self, o: &Eisenstein) -> Eisenstein {
        let norm = &o.a * &o.a + &o.a * &o.b + &o.b * &o.b;
        let conj = Eisenstein {
            a: &o.a + &o.b,
            b: -&o.b,
        };
        let num = self.mul(&conj);
        let (qa, ra) = num.a.div_rem(&norm);
        let (qb, rb) = num.b.div_rem(&norm);
        assert!(
            ra.is_zero() && rb.is_zero(),
            "Bareiss step produced an inexact division"
        );
        Eisenstein { a: qa, b: qb }
    }

    fn to_cyclo(&self) -> CycloNum {
        CycloNum::new(RatNum::from(self.a.clone()), RatNum::from(self.b.clone()))
    }
}

fn integral_rows(m: &ExactMatrix) -> Vec<Vec<Eisenstein>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let lcm = denominator_lcm(row.iter().flat_map(|c| [&c.a, &c.b]));
            row.iter()
                .map(|c| {
                    let scale = |q: &RatNum| q.numer() * (&lcm / q.denom());
                    Eisenstein {
                        a: scale(&c.a),
                        b: scale(&c.b),
                    }
                })
                .collect()
        })
        .collect()
}

/// Kernel basis from an echelon form given as (pivot column, row) pairs.
fn kernel_from_echelon(cols: usize, echelon: &[(usize, Vec<CycloNum>)]) -> Vec<Vec<CycloNum>> {
    let pivots: Vec<usize> = echelon.iter().map(|(c, _)| *c).collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![CycloNum::zero(); cols];
            x[free] = CycloNum::one();
            for (pc, row) in echelon.iter().rev() {
                let mut acc = CycloNum::zero();
                for k in pc + 1..cols {
                    if !row[k].is_zero() && !x[k].is_zero() {
                        acc += &(&row[k] * &x[k]);
                    }
                }
                x[*pc] = -(&acc * &row[*pc].inv().expect("pivot is nonzero"));
            }
            x
        })
        .collect()
}

impl Eliminator for FractionFree {
    fn name(&self) -> &'static str {
        "fraction-free"
    }

    fn rank_kernel(&self, m: &ExactMatrix) -> RankKernel {
        let cols = m.cols();
        let mut a = integral_rows(m);
        let nrows = a.len();
        let mut prev = Eisenstein::one();
        let mut rank = 0;
        let mut pivots = Vec::new();
        for col in 0..cols {
            if rank == nrows {
                break;
            }
            let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let (top, rest) = a.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let piv = &pivot_row[col];
            for row in rest.iter_mut() {
                let lead = row[col].clone();
                for k in col + 1..cols {
                    let t = piv.mul(&row[k]).sub(&lead.mul(&pivot_row[k]));
                    row[k] = t.div_exact(&prev);
                }
                row[col] = Eisenstein::zero();
            }
            prev = piv.clone();
            pivots.push(col);
            rank += 1;
        }
        let echelon: Vec<(usize, Vec<CycloNum>)> = pivots
            .iter()
            .enumerate()
            .map(|(r, &c)| (c, a[r].iter().map(Eisenstein::to_cyclo).collect()))
            .collect();
        RankKernel {
            rank,
            kernel: kernel_from_echelon(cols, &echelon),
        }
    }
}

impl Eliminator for GaussJordan {
    fn name(&self) -> &'static str {
        "gauss-jordan"
    }

    fn rank_kernel(&self, m: &ExactMatrix) -> RankKernel {
        let cols = m.cols();
        let mut a = m.row_vecs();
        let nrows = a.len();
        let mut rank = 0;
        let mut pivots = Vec::new();
        for col in 0..cols {
            if rank == nrows {
                break;
            }
            let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = a[rank][col].inv().expect("pivot is nonzero");
            for k in col..cols {
                a[rank][k] = &a[rank][k] * &inv;
            }
            for r in 0..nrows {
                if r == rank || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for k in col..cols {
                    let t = &f * &a[rank][k];
                    a[r][k] -= &t;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        let echelon: Vec<(usize, Vec<CycloNum>)> = pivots
            .iter()
            .enumerate()
            .map(|(r, &c)| (c, a[r].clone()))
            .collect();
        RankKernel {
            rank,
            kernel: kernel_from_echelon(cols, &echelon),
        }
    }
}
