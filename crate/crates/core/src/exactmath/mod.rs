//! Exact arithmetic over Q and Q(μ), μ = e^{iπ/3}, plus sparse bivariate polynomials
//! and exact rank/kernel computation.

mod cyclo;
pub mod elimination;
mod matrix;
mod poly;
mod rational;

pub use cyclo::CycloNum;
pub use elimination::{eliminator, eliminators, matrix_rank_kernel, Eliminator, RankKernel};
pub use matrix::ExactMatrix;
pub use poly::BiPoly;
pub use rational::RatNum;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("cannot parse exact number from {0:?}")]
    Parse(String),
}
