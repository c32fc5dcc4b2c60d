use thiserror::Error;

/// Errors raised by the geometry, quadrature and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("weight-{weight} function is unbounded near the origin (0,0)")]
    UnboundedNearOrigin { weight: u32 },

    #[error("unknown builtin `{name}`; known names: {known}")]
    UnknownBuiltin { name: String, known: String },

    #[error("quadrature radius {r_max} does not cover the support (needs at least {needed})")]
    Coverage { r_max: f64, needed: f64 },

    #[error("Runge truncation of h_{j} failed: degree cap {cap} reached with sampled bound {achieved:.3e} (target {target:.3e})")]
    TruncationFailure { j: usize, cap: usize, achieved: f64, target: f64 },

    #[error("cohomological equation is obstructed: H(0,0) = {re:.6e}{im:+.6e}i exceeds tolerance {tol:.1e}")]
    Obstruction { re: f64, im: f64, tol: f64 },

    #[error("series did not settle below {tol:.1e} within {terms} terms (last term {last:.3e}); try polyseries mode")]
    Convergence { terms: usize, last: f64, tol: f64 },

    #[error("singularity is not removable: |b_1| = {b1:.3e}")]
    NotRemovable { b1: f64 },

    #[error("empty sample grid")]
    EmptyGrid,

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
