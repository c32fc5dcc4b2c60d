//! Polar quadrature for Cauchy–Pompeiu area integrals, contour coefficient
//! formulas and plain area integrals.
//!
//! Cauchy transforms are evaluated through `ξ = z + r e^{iθ}`, which turns
//!
//! ```text
//! (1/2iπ) ∫ g(ξ)/(ξ − z) dξ∧dξ̄   into   (−1/π) ∫₀^∞ ∫₀^{2π} g(z + r e^{iθ}) e^{−iθ} dθ dr
//! ```
//!
//! with a bounded integrand. The θ-rule is the periodic trapezoid rule. The
//! r-rule is the composite midpoint rule in `s = ln r`, anchored at `r_max`,
//! with a step `Δs` dividing `ln(1/λ)`: the node set is then invariant under
//! `r ↦ λr`, so transforms evaluated at `p` and `γp` use exactly rescaled
//! copies of one another and scale identities hold to round-off at every
//! scale along a γ-orbit.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cutoffs::CutoffFamily;
use crate::error::{Error, Result};
use crate::geometry::{FoliationParams, LeafwiseForm01, LeafwiseFn};

/// Radial nodes stop at this fraction of `ρ(z,t)`; the discarded disc
/// contributes `O((r_floor/ρ)²)` for integrands smooth on the scale `ρ`.
const FLOOR_REL: f64 = 1e-6;
/// Floor relative to `r_max` when `ρ(z,t) = 0`.
const FLOOR_ABS: f64 = 1e-12;

/// Node counts and outer radius of the polar rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarQuadSpec {
    /// Radial resolution: the log-radius step is (at most) `π / n_r`, half
    /// the angular step when `n_r = n_theta`. The cutoff profiles vary
    /// radially, so that direction needs the finer rule.
    pub n_r: usize,
    pub n_theta: usize,
    pub r_max: f64,
    /// Ratio under which the radial node set is invariant (set to `λ`).
    pub scale_ratio: f64,
}

impl Default for PolarQuadSpec {
    fn default() -> Self {
        Self {
            n_r: 256,
            n_theta: 256,
            r_max: 16.0,
            scale_ratio: 0.5,
        }
    }
}

impl PolarQuadSpec {
    pub fn new(n_r: usize, n_theta: usize, r_max: f64, scale_ratio: f64) -> Result<Self> {
        let spec = Self {
            n_r,
            n_theta,
            r_max,
            scale_ratio,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_r < 8 || self.n_theta < 8 {
            return Err(Error::InvalidParams(format!(
                "quadrature needs n_r >= 8 and n_theta >= 8, got {} and {}",
                self.n_r, self.n_theta
            )));
        }
        if !(self.r_max > 0.0 && self.r_max.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "r_max must be positive, got {}",
                self.r_max
            )));
        }
        if !(self.scale_ratio > 0.0 && self.scale_ratio < 1.0) {
            return Err(Error::InvalidParams(format!(
                "scale_ratio must lie in (0,1), got {}",
                self.scale_ratio
            )));
        }
        Ok(())
    }

    pub fn with_resolution(mut self, n: usize) -> Self {
        self.n_r = n;
        self.n_theta = n;
        self
    }

    pub fn with_r_max(mut self, r_max: f64) -> Self {
        self.r_max = r_max;
        self
    }

    /// Number of log-radius steps per factor `1/scale_ratio`.
    pub fn steps_per_scale(&self) -> usize {
        let period = (1.0 / self.scale_ratio).ln();
        ((period * self.n_r as f64 / PI).ceil() as usize).max(1)
    }

    /// Log-radius step `Δs`.
    pub fn log_step(&self) -> f64 {
        (1.0 / self.scale_ratio).ln() / self.steps_per_scale() as f64
    }

    #[inline]
    fn radial_node(&self, k: usize, ds: f64) -> f64 {
        self.r_max * (-(k as f64 + 0.5) * ds).exp()
    }
}

/// Closed annulus `inner ≤ |ξ| ≤ outer` containing the support of an
/// integrand; `inner = 0` for a disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub inner: f64,
    pub outer: f64,
}

impl Support {
    pub fn disc(outer: f64) -> Self {
        Self { inner: 0.0, outer }
    }

    pub fn annulus(inner: f64, outer: f64) -> Self {
        Self { inner, outer }
    }
}

fn unit_circle(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|l| Complex64::from_polar(1.0, 2.0 * PI * l as f64 / n as f64))
        .collect()
}

/// `(1/2iπ) ∫ g(ξ,t)/(ξ − z) dξ∧dξ̄` for `g(·,t)` supported in `support`.
pub fn cauchy_transform<G>(
    g: G,
    support: Support,
    z: Complex64,
    t: f64,
    spec: &PolarQuadSpec,
) -> Result<Complex64>
where
    G: Fn(Complex64, f64) -> Complex64,
{
    spec.validate()?;
    let zn = z.norm();
    let needed = support.outer + zn;
    if spec.r_max < needed {
        return Err(Error::Coverage {
            r_max: spec.r_max,
            needed,
        });
    }
    let rho = zn.hypot(t);
    let floor = if rho > 0.0 {
        FLOOR_REL * rho
    } else {
        FLOOR_ABS * spec.r_max
    };
    let ds = spec.log_step();
    let dir = unit_circle(spec.n_theta);

    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0.. {
        let r = spec.radial_node(k, ds);
        if r < floor || r + zn < support.inner {
            break;
        }
        if (r - zn).abs() > support.outer {
            continue;
        }
        let mut ring = Complex64::new(0.0, 0.0);
        for e in &dir {
            ring += g(z + e * r, t) * e.conj();
        }
        acc += ring * (r * ds);
    }
    let out = acc * (-2.0 / spec.n_theta as f64);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::NonFinite(format!("Cauchy transform at z = {z}, t = {t}")))
    }
}

/// `h_j(z,t) = (1/2iπ) ∫ ψ_j(ξ) f(ξ,t)/(ξ − z) dξ∧dξ̄`.
pub fn h_partial(
    f: &LeafwiseForm01,
    j: u32,
    z: Complex64,
    t: f64,
    family: &CutoffFamily,
    spec: &PolarQuadSpec,
) -> Result<Complex64> {
    let (inner, outer) = family.psi_support(j);
    if f.is_zero() {
        let needed = outer + z.norm();
        return if spec.r_max < needed {
            Err(Error::Coverage {
                r_max: spec.r_max,
                needed,
            })
        } else {
            Ok(Complex64::new(0.0, 0.0))
        };
    }
    let params = FoliationParams::new(family.lambda())?;
    cauchy_transform(
        |xi, t| {
            let w = family.psi_radial(j, xi.norm());
            if w == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                f.value(xi, t, params) * w
            }
        },
        Support::annulus(inner, outer),
        z,
        t,
        spec,
    )
}

/// `h_j` bound to a form, family and rule, usable as a leafwise evaluator.
#[derive(Debug, Clone)]
pub struct PartialSolution {
    pub form: LeafwiseForm01,
    pub j: u32,
    pub family: CutoffFamily,
    pub spec: PolarQuadSpec,
}

impl LeafwiseFn for PartialSolution {
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        h_partial(&self.form, self.j, z, t, &self.family, &self.spec)
    }
}

/// Which coefficient formula to apply on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientKind {
    /// `a_n = (1/2iπ) ∮ h(ξ)/(ξ − z₀)^{n+1} dξ`, `n ≥ 0`.
    Taylor,
    /// `b_m = (1/2iπ) ∮ (ξ − z₀)^{m−1} h(ξ) dξ`, `m ≥ 1`.
    Laurent,
}

/// Default number of trapezoid nodes on a coefficient circle.
pub const CONTOUR_NODES: usize = 128;

/// Samples `h(center + radius·e^{2πil/M}, t)` for `l = 0..M`.
pub fn circle_samples<H: LeafwiseFn + ?Sized>(
    h: &H,
    t: f64,
    center: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<Vec<Complex64>> {
    unit_circle(nodes)
        .into_iter()
        .map(|e| h.eval(center + e * radius, t))
        .collect()
}

/// Coefficient of the given kind and index from circle samples.
pub fn coefficient_from_samples(
    samples: &[Complex64],
    radius: f64,
    n: usize,
    kind: CoefficientKind,
) -> Complex64 {
    let m = samples.len();
    let dir = unit_circle(m);
    let (sign, scale) = match kind {
        CoefficientKind::Taylor => (-1i64, radius.powi(-(n as i32))),
        CoefficientKind::Laurent => (1i64, radius.powi(n as i32)),
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for (l, h) in samples.iter().enumerate() {
        // e^{∓inθ_l} read from the table to keep nodes exact
        let idx = ((sign * (n as i64) * l as i64).rem_euclid(m as i64)) as usize;
        acc += h * dir[idx];
    }
    acc * (scale / m as f64)
}

/// Taylor coefficients `a_0..=a_max` from one set of circle samples.
pub fn taylor_from_samples(samples: &[Complex64], radius: f64, max_n: usize) -> Vec<Complex64> {
    (0..=max_n)
        .map(|n| coefficient_from_samples(samples, radius, n, CoefficientKind::Taylor))
        .collect()
}

/// Contour-integral coefficient of `h(·,t)` about `center`.
pub fn contour_coefficient<H: LeafwiseFn + ?Sized>(
    h: &H,
    t: f64,
    center: Complex64,
    radius: f64,
    n: usize,
    kind: CoefficientKind,
) -> Result<Complex64> {
    if kind == CoefficientKind::Laurent && n == 0 {
        return Err(Error::InvalidParams(
            "Laurent coefficients are indexed from m = 1".into(),
        ));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidParams(format!(
            "contour radius must be positive, got {radius}"
        )));
    }
    let samples = circle_samples(h, t, center, radius, CONTOUR_NODES)?;
    Ok(coefficient_from_samples(&samples, radius, n, kind))
}

/// `(1/2iπ) ∫ F(ξ) dξ∧dξ̄ = (−1/π) ∬ F dA` on a polar grid centred at 0.
pub fn area_integral<F>(integrand: F, support: Support, spec: &PolarQuadSpec) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    spec.validate()?;
    if spec.r_max < support.outer {
        return Err(Error::Coverage {
            r_max: spec.r_max,
            needed: support.outer,
        });
    }
    let floor = support.inner.max(FLOOR_ABS * spec.r_max);
    let ds = spec.log_step();
    let dir = unit_circle(spec.n_theta);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0.. {
        let r = spec.radial_node(k, ds);
        if r < floor {
            break;
        }
        if r > support.outer {
            continue;
        }
        let mut ring = Complex64::new(0.0, 0.0);
        for e in &dir {
            ring += integrand(e * r);
        }
        acc += ring * (r * r * ds);
    }
    let out = acc * (-2.0 / spec.n_theta as f64);
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::NonFinite("area integral".into()))
    }
}
