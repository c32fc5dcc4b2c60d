//! Sup-seminorms on a compact exhaustion, the translation-invariant metric
//! `δ`, and truncation of leafwise holomorphic functions to polynomials in
//! `z` with a certified sampled bound.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cutoffs::CutoffFamily;
use crate::error::{Error, Result};
use crate::geometry::{FoliationParams, LeafwiseForm01, LeafwiseFn, Point};
use crate::quadrature::{circle_samples, taylor_from_samples, PartialSolution, PolarQuadSpec, CONTOUR_NODES};

/// Tensor polar grid on the section disc `|z| ≤ radius`, repeated at each
/// sampled `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionGrid {
    pub radius: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub t_values: Vec<f64>,
}

impl SectionGrid {
    pub fn new(radius: f64, n_r: usize, n_theta: usize, t_values: Vec<f64>) -> Self {
        Self {
            radius,
            n_r,
            n_theta,
            t_values,
        }
    }

    /// Nodes `radius·(k+1)/n_r · e^{2πil/n_theta}` for every sampled `t`.
    pub fn points(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.len());
        for &t in &self.t_values {
            for k in 0..self.n_r {
                let r = self.radius * (k + 1) as f64 / self.n_r as f64;
                for l in 0..self.n_theta {
                    let th = 2.0 * PI * l as f64 / self.n_theta as f64;
                    out.push(Point::new(Complex64::from_polar(r, th), t));
                }
            }
        }
        out
    }

    /// The outermost ring `|z| = radius` of the grid.
    pub fn boundary_ring(&self) -> Vec<Point> {
        let mut out = Vec::with_capacity(self.t_values.len() * self.n_theta);
        for &t in &self.t_values {
            for l in 0..self.n_theta {
                let th = 2.0 * PI * l as f64 / self.n_theta as f64;
                out.push(Point::new(Complex64::from_polar(self.radius, th), t));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.t_values.len() * self.n_r * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `n` uniform samples of `[-half_width, half_width]`.
pub fn t_window(half_width: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n)
            .map(|i| -half_width + 2.0 * half_width * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Sample grids for `K_n = λ^{-n}(L×ℝ)` cut to a `t`-window, with metric
/// weights `2^{-(n+1)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactExhaustion {
    pub levels: Vec<SectionGrid>,
    pub weights: Vec<f64>,
}

impl CompactExhaustion {
    pub fn new(
        lambda: f64,
        base_radius: f64,
        n_levels: usize,
        t_values: Vec<f64>,
        n_r: usize,
        n_theta: usize,
    ) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) || !(base_radius > 0.0) {
            return Err(Error::InvalidParams(format!(
                "exhaustion needs 0 < lambda < 1 and a positive radius, got {lambda}, {base_radius}"
            )));
        }
        let levels = (0..n_levels)
            .map(|n| SectionGrid::new(base_radius / lambda.powi(n as i32), n_r, n_theta, t_values.clone()))
            .collect();
        let weights = (0..n_levels).map(|n| 0.5f64.powi(n as i32 + 1)).collect();
        Ok(Self { levels, weights })
    }

    /// Levels over the plateau radius `R` of `family`, `t ∈ [−1, 1]` at 17
    /// samples, 64×64 nodes per section disc.
    pub fn default_for(family: &CutoffFamily, n_levels: usize) -> Self {
        Self::new(family.lambda(), family.r_inner(), n_levels, t_window(1.0, 17), 64, 64)
            .expect("a valid cutoff family yields a valid exhaustion")
    }

    pub fn weight_sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// `sup |f|` over the nodes.
pub fn sup_seminorm(f: &dyn LeafwiseFn, points: &[Point]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let vals: Vec<f64> = points
        .par_iter()
        .map(|p| f.eval_at(*p).map(|v| v.norm()))
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(0.0, f64::max))
}

/// `δ(f,g) = Σ_n 2^{-(n+1)} min(1, sup_{K_n} |f − g|)`.
pub fn delta_metric(f: &dyn LeafwiseFn, g: &dyn LeafwiseFn, exhaustion: &CompactExhaustion) -> Result<f64> {
    let diff = |z: Complex64, t: f64| -> Result<Complex64> { Ok(f.eval(z, t)? - g.eval(z, t)?) };
    struct Diff<F>(F);
    impl<F: Fn(Complex64, f64) -> Result<Complex64> + Send + Sync> LeafwiseFn for Diff<F> {
        fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
            (self.0)(z, t)
        }
    }
    let d = Diff(diff);
    let mut total = 0.0;
    for (grid, w) in exhaustion.levels.iter().zip(&exhaustion.weights) {
        total += w * sup_seminorm(&d, &grid.points())?.min(1.0);
    }
    Ok(total)
}

/// Where the coefficients `c_k(t)` of a polynomial come from.
enum CoeffSource {
    /// Coefficients independent of `t`.
    Fixed(Vec<Complex64>),
    /// Taylor coefficients of a holomorphic evaluator, computed per `t` from
    /// trapezoid samples on a circle and cached.
    Contour {
        h: Arc<dyn LeafwiseFn>,
        radius: f64,
        max_degree: usize,
        cache: Mutex<HashMap<u64, Arc<Vec<Complex64>>>>,
    },
}

/// `v(z,t) = Σ_{k≤d} c_k(t) z^k`, entire in `z`.
#[derive(Clone)]
pub struct PolyInZ {
    degree: usize,
    source: Arc<CoeffSource>,
}

impl fmt::Debug for PolyInZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &*self.source {
            CoeffSource::Fixed(_) => "fixed",
            CoeffSource::Contour { .. } => "contour",
        };
        f.debug_struct("PolyInZ")
            .field("degree", &self.degree)
            .field("source", &kind)
            .finish()
    }
}

impl PolyInZ {
    pub fn from_coefficients(coeffs: Vec<Complex64>) -> Self {
        Self {
            degree: coeffs.len().saturating_sub(1),
            source: Arc::new(CoeffSource::Fixed(coeffs)),
        }
    }

    pub fn zero() -> Self {
        Self::from_coefficients(vec![Complex64::new(0.0, 0.0)])
    }

    fn contour(h: Arc<dyn LeafwiseFn>, radius: f64, max_degree: usize, degree: usize) -> Self {
        Self {
            degree,
            source: Arc::new(CoeffSource::Contour {
                h,
                radius,
                max_degree,
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `c_0(t), …, c_d(t)`.
    pub fn coefficients(&self, t: f64) -> Result<Vec<Complex64>> {
        let all = self.all_coefficients(t)?;
        Ok(all.iter().take(self.degree + 1).copied().collect())
    }

    fn all_coefficients(&self, t: f64) -> Result<Arc<Vec<Complex64>>> {
        match &*self.source {
            CoeffSource::Fixed(c) => Ok(Arc::new(c.clone())),
            CoeffSource::Contour {
                h,
                radius,
                max_degree,
                cache,
            } => {
                if let Some(c) = cache.lock().expect("coefficient cache poisoned").get(&t.to_bits()) {
                    return Ok(c.clone());
                }
                let samples = circle_samples(h.as_ref(), t, Complex64::new(0.0, 0.0), *radius, CONTOUR_NODES)?;
                let c = Arc::new(taylor_from_samples(&samples, *radius, *max_degree));
                cache
                    .lock()
                    .expect("coefficient cache poisoned")
                    .insert(t.to_bits(), c.clone());
                Ok(c)
            }
        }
    }

    fn seed(&self, t: f64, coeffs: Vec<Complex64>) {
        if let CoeffSource::Contour { cache, .. } = &*self.source {
            cache
                .lock()
                .expect("coefficient cache poisoned")
                .insert(t.to_bits(), Arc::new(coeffs));
        }
    }

    pub fn value(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let c = self.all_coefficients(t)?;
        Ok(horner(&c[..(self.degree + 1).min(c.len())], z))
    }
}

impl LeafwiseFn for PolyInZ {
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        self.value(z, t)
    }
}

#[inline]
fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// Degree cap for the truncation.
pub const DEFAULT_DEGREE_CAP: usize = 64;
/// Ratio of the expansion circle to the radius of the holomorphy disc.
pub const EXPANSION_FRACTION: f64 = 0.9;

/// Outcome of one truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    pub j: usize,
    pub degree: usize,
    /// Sampled `sup |h_j − v_j|` on the certification set.
    pub bound: f64,
    pub target: f64,
}

/// Settings shared by every truncation of one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationSettings {
    pub degree_cap: usize,
}

impl Default for TruncationSettings {
    fn default() -> Self {
        Self {
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

/// Truncates a function holomorphic on `|z| < expansion_radius / 0.9` to the
/// lowest-degree Taylor polynomial about 0 whose sampled error on
/// `certify_on` stays below `target`.
///
/// `certify_on` is the boundary ring of a section grid: the error is
/// holomorphic on the disc, so its maximum over the disc sits on the ring.
pub fn truncate_holomorphic(
    h: Arc<dyn LeafwiseFn>,
    j: usize,
    expansion_radius: f64,
    certify_on: &SectionGrid,
    target: f64,
    settings: &TruncationSettings,
) -> Result<(PolyInZ, TruncationReport)> {
    if certify_on.t_values.is_empty() || certify_on.n_theta == 0 {
        return Err(Error::EmptyGrid);
    }
    let cap = settings.degree_cap;
    let ring = certify_on.boundary_ring();
    let per_t: Vec<(f64, Vec<Complex64>, Vec<(Complex64, Complex64)>)> = certify_on
        .t_values
        .par_iter()
        .map(|&t| {
            let samples = circle_samples(h.as_ref(), t, Complex64::new(0.0, 0.0), expansion_radius, CONTOUR_NODES)?;
            let coeffs = taylor_from_samples(&samples, expansion_radius, cap);
            let vals = ring
                .iter()
                .filter(|p| p.t.to_bits() == t.to_bits())
                .map(|p| Ok((p.z, h.eval_at(*p)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok((t, coeffs, vals))
        })
        .collect::<Result<_>>()?;

    // running partial sums, one per (t, node)
    let mut partial: Vec<Vec<Complex64>> = per_t.iter().map(|(_, _, v)| vec![Complex64::new(0.0, 0.0); v.len()]).collect();
    let mut powers: Vec<Vec<Complex64>> = per_t.iter().map(|(_, _, v)| vec![Complex64::new(1.0, 0.0); v.len()]).collect();
    let mut best = (usize::MAX, f64::INFINITY);
    for d in 0..=cap {
        let mut err: f64 = 0.0;
        for (i, (_, coeffs, vals)) in per_t.iter().enumerate() {
            for (l, (z, hv)) in vals.iter().enumerate() {
                partial[i][l] += coeffs[d] * powers[i][l];
                powers[i][l] *= z;
                err = err.max((hv - partial[i][l]).norm());
            }
        }
        if err < best.1 {
            best = (d, err);
        }
        if err < target {
            let poly = PolyInZ::contour(h.clone(), expansion_radius, cap, d);
            for (t, coeffs, _) in per_t {
                poly.seed(t, coeffs);
            }
            return Ok((
                poly,
                TruncationReport {
                    j,
                    degree: d,
                    bound: err,
                    target,
                },
            ));
        }
    }
    Err(Error::TruncationFailure {
        j,
        cap,
        achieved: best.1,
        target,
    })
}

/// Expansion radius `0.9·λ^{-(j−1)}(R+ε)` used for `h_j`.
pub fn expansion_radius(family: &CutoffFamily, j: usize) -> f64 {
    EXPANSION_FRACTION * family.plateau() / family.lambda().powi(j as i32 - 1)
}

/// Builds `v_j` from `h_j` with `δ`-contribution below `2^{-j}` on the
/// `K_{j−1}` grids of `exhaustion`.
pub fn truncate_runge(
    f: &LeafwiseForm01,
    j: usize,
    family: &CutoffFamily,
    spec: &PolarQuadSpec,
    exhaustion: &CompactExhaustion,
    settings: &TruncationSettings,
) -> Result<(PolyInZ, TruncationReport)> {
    if j == 0 {
        return Err(Error::InvalidParams("h_0 is never truncated; j must be at least 1".into()));
    }
    let grid = exhaustion.levels.get(j - 1).ok_or_else(|| {
        Error::InvalidParams(format!(
            "exhaustion has {} levels, truncation of h_{j} needs K_{}",
            exhaustion.levels.len(),
            j - 1
        ))
    })?;
    let target = 0.5f64.powi(j as i32);
    if f.is_zero() {
        return Ok((
            PolyInZ::zero(),
            TruncationReport {
                j,
                degree: 0,
                bound: 0.0,
                target,
            },
        ));
    }
    let h: Arc<dyn LeafwiseFn> = Arc::new(PartialSolution {
        form: f.clone(),
        j: j as u32,
        family: *family,
        spec: *spec,
    });
    truncate_holomorphic(h, j, expansion_radius(family, j), grid, target, settings)
}

/// 32 points of the fundamental annulus `λ < ρ ≤ 1`, away from `t = 0`, used
/// for residual sweeps. The `t`-values are `±τ` and `±λτ` with `τ = 0.8`, so
/// the γ-orbits of all nodes share their `t`-coordinates.
pub fn fundamental_grid(params: FoliationParams) -> Vec<Point> {
    let lambda = params.lambda();
    let tau = 0.8;
    let mut out = Vec::with_capacity(32);
    for sign in [1.0, -1.0] {
        for t in [tau, lambda * tau] {
            let lo = (lambda * lambda - t * t).max(0.0).sqrt();
            let hi = (1.0 - t * t).sqrt();
            for frac in [0.3, 0.8] {
                let r = lo + frac * (hi - lo);
                for k in 0..4 {
                    let th = 0.3 + 0.5 * PI * k as f64;
                    out.push(Point::new(Complex64::from_polar(r, th), sign * t));
                }
            }
        }
    }
    out
}
