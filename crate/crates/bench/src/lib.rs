//! Shared fixtures for the benchmarks.

use leafdbar::{CutoffFamily, PolarQuadSpec};

/// Default cutoff geometry and a quadrature rule of `n`×`n` nodes.
pub fn fixture(n: usize) -> (CutoffFamily, PolarQuadSpec) {
    let family = CutoffFamily::default_for(0.5).expect("default geometry is valid");
    let spec = PolarQuadSpec::new(n, n, 16.0, 0.5).expect("valid rule");
    (family, spec)
}
