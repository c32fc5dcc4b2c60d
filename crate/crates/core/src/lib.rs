//! Leafwise `∂̄` solver for the complex affine Reeb foliation of the Hopf
//! manifold `(ℂ×ℝ ∖ {0}) / ⟨γ⟩`, `γ(z,t) = (λz, λt)`.
//!
//! Every γ-invariant leafwise `(0,1)`-form `f dz̄` splits as `c·ω₀ + ∂̄h`
//! with `ω₀ = z dz̄ / (z z̄ + t²)`. [`solver::decompose`] computes `c` from the
//! obstruction functional and constructs `h` numerically.

pub mod approximation;
pub mod cutoffs;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod solver;
pub mod verify;

pub use approximation::{CompactExhaustion, PolyInZ, SectionGrid, TruncationReport};
pub use cutoffs::CutoffFamily;
pub use error::{Error, Result};
pub use geometry::{
    builtin, builtin_form, EquivariantFunction, FoliationParams, LeafwiseFn, LeafwiseForm01, Point, BUILTIN_NAMES,
};
pub use num_complex::Complex64;
pub use quadrature::PolarQuadSpec;
pub use solver::{decompose, KMode, SeriesOptions, SolveConfig, SolveReport};
pub use verify::ResidualBundle;
