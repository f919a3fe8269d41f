//! Exact invariants of abelian branched covers of the projective plane along line
//! arrangements.
//!
//! The built-in example is the (Z/5)² cover branched along the nine lines
//! `(x₁³ − x₂³)(x₂³ − x₃³)(x₃³ − x₁³) = 0`. Everything is computed in exact
//! arithmetic over Q(μ), μ = e^{iπ/3}.

pub mod exactmath;
pub mod arrangement;
pub mod check;
pub mod chern;
pub mod cover;
pub mod genus;
pub mod numerology;
pub mod report;
pub mod symmetry;
