//! Decomposition of invariant leafwise `(0,1)`-forms as `c·ω₀ + ∂̄h`.
//!
//! The pipeline: evaluate the obstruction functional `𝓘`, subtract the class
//! part `c·ω₀`, glue the partial solutions `h_j` into `h̃` with Runge
//! corrections `v_j`, form the coboundary `H = h̃∘γ − h̃`, and solve
//! `K − K∘γ = H`. The primitive is `h = h̃ + K`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::approximation::{
    fundamental_grid, t_window, truncate_runge, CompactExhaustion, PolyInZ, TruncationReport, TruncationSettings,
};
use crate::cutoffs::CutoffFamily;
use crate::error::{Error, Result};
use crate::geometry::{
    fundamental_index, gamma_pow, omega0, EquivariantFunction, FoliationParams, LeafwiseForm01, LeafwiseFn, Point,
};
use crate::quadrature::{
    area_integral, cauchy_transform, circle_samples, contour_coefficient, h_partial, CoefficientKind, PolarQuadSpec,
    Support, CONTOUR_NODES,
};
use crate::verify::{bundle, pointwise_residuals, PointResidual, ResidualBundle, DEFAULT_FD_STEP};

/// `𝓘_N(f) = (1/2iπ) ∫ ψ_N(ξ) f(ξ,0)/ξ dξ∧dξ̄` for `N ≥ 1`.
pub fn obstruction_at_scale(f: &LeafwiseForm01, n: u32, family: &CutoffFamily, spec: &PolarQuadSpec) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidParams("ψ_0 meets the origin; the functional uses N >= 1".into()));
    }
    let (inner, outer) = family.psi_support(n);
    if f.is_zero() {
        return area_integral(|_| Complex64::new(0.0, 0.0), Support::annulus(inner, outer), spec);
    }
    let params = FoliationParams::new(family.lambda())?;
    area_integral(
        |xi| {
            let w = family.psi_radial(n, xi.norm());
            if w == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                f.value(xi, 0.0, params) * w / xi
            }
        },
        Support::annulus(inner, outer),
        spec,
    )
}

/// The obstruction functional `𝓘(f)`.
pub fn obstruction(f: &LeafwiseForm01, family: &CutoffFamily, spec: &PolarQuadSpec) -> Result<Complex64> {
    obstruction_at_scale(f, 1, family, spec)
}

/// `c = 𝓘(f)/𝓘(ω₀)` together with both raw values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassCoefficient {
    pub c: Complex64,
    pub obstruction_f: Complex64,
    pub obstruction_omega0: Complex64,
}

pub fn class_coefficient(f: &LeafwiseForm01, family: &CutoffFamily, spec: &PolarQuadSpec) -> Result<ClassCoefficient> {
    let i_f = obstruction(f, family, spec)?;
    let i_w = obstruction(&omega0(), family, spec)?;
    Ok(ClassCoefficient {
        c: i_f / i_w,
        obstruction_f: i_f,
        obstruction_omega0: i_w,
    })
}

/// `Σ_{j<N} {h_j(γp) − h_j(p)}`, which telescopes to the single transform
/// of `ψ_N f` at `p`.
pub fn telescoped_coboundary(
    f: &LeafwiseForm01,
    n: u32,
    p: Point,
    family: &CutoffFamily,
    spec: &PolarQuadSpec,
) -> Result<Complex64> {
    let params = FoliationParams::new(family.lambda())?;
    let q = gamma_pow(p, 1, params);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        acc += h_partial(f, j, q.z, q.t, family, spec)? - h_partial(f, j, p.z, p.t, family, spec)?;
    }
    Ok(acc)
}

/// `h̃ = h₀ + Σ_{j=1}^{J} (h_j − v_j)`.
#[derive(Clone)]
pub struct Htilde {
    form: LeafwiseForm01,
    family: CutoffFamily,
    spec: PolarQuadSpec,
    params: FoliationParams,
    polys: Vec<PolyInZ>,
    truncations: Vec<TruncationReport>,
}

impl fmt::Debug for Htilde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Htilde")
            .field("j_max", &self.j_max())
            .field("truncations", &self.truncations)
            .finish()
    }
}

impl Htilde {
    pub fn j_max(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[PolyInZ] {
        &self.polys
    }

    pub fn truncations(&self) -> &[TruncationReport] {
        &self.truncations
    }

    pub fn params(&self) -> FoliationParams {
        self.params
    }

    pub fn form(&self) -> &LeafwiseForm01 {
        &self.form
    }

    fn sum_v(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for v in &self.polys {
            acc += v.value(z, t)?;
        }
        Ok(acc)
    }
}

impl LeafwiseFn for Htilde {
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        if self.form.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut acc = h_partial(&self.form, 0, z, t, &self.family, &self.spec)?;
        for j in 1..=self.j_max() {
            acc += h_partial(&self.form, j as u32, z, t, &self.family, &self.spec)?;
        }
        Ok(acc - self.sum_v(z, t)?)
    }
}

/// Runs the `J` truncations and bundles them into `h̃`.
pub fn assemble_htilde(
    f: &LeafwiseForm01,
    j_max: usize,
    family: &CutoffFamily,
    spec: &PolarQuadSpec,
    exhaustion: &CompactExhaustion,
    settings: &TruncationSettings,
) -> Result<Htilde> {
    if j_max == 0 {
        return Err(Error::InvalidParams("J_max must be at least 1".into()));
    }
    let mut polys = Vec::with_capacity(j_max);
    let mut truncations = Vec::with_capacity(j_max);
    for j in 1..=j_max {
        let (v, rep) = truncate_runge(f, j, family, spec, exhaustion, settings)?;
        polys.push(v);
        truncations.push(rep);
    }
    Ok(Htilde {
        form: f.clone(),
        family: *family,
        spec: *spec,
        params: FoliationParams::new(family.lambda())?,
        polys,
        truncations,
    })
}

/// `H = g∘γ − g` for an arbitrary leafwise evaluator `g`.
pub struct Coboundary {
    pub inner: Arc<dyn LeafwiseFn>,
    pub params: FoliationParams,
}

impl LeafwiseFn for Coboundary {
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let l = self.params.lambda();
        Ok(self.inner.eval(z * l, t * l)? - self.inner.eval(z, t)?)
    }
}

pub fn coboundary(inner: Arc<dyn LeafwiseFn>, params: FoliationParams) -> Coboundary {
    Coboundary { inner, params }
}

/// Coboundary of `h̃` through the scale identities of the partial solutions:
/// `H(p) = h_{J+1}(p) − Σ_j {v_j(γp) − v_j(p)}`, with `h_{J+1}(p)` evaluated
/// as `h_1(γ^J p)` so that its support stays within the quadrature disc.
#[derive(Debug, Clone)]
pub struct HtildeCoboundary {
    pub htilde: Arc<Htilde>,
}

impl LeafwiseFn for HtildeCoboundary {
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let h = &self.htilde;
        if h.form.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let l = h.params.lambda();
        let s = l.powi(h.j_max() as i32);
        let tail = h_partial(&h.form, 1, z * s, t * s, &h.family, &h.spec)?;
        Ok(tail - (h.sum_v(z * l, t * l)? - h.sum_v(z, t)?))
    }
}

/// Number of trapezoid nodes on the Hartogs circle.
const HARTOGS_NODES: usize = CONTOUR_NODES;

/// Value at the puncture `center` of a function holomorphic on the punctured
/// disc, by the mean over the circle of the given radius. A non-zero first
/// Laurent coefficient means the singularity is not removable.
pub fn hartogs_extend(f: &dyn LeafwiseFn, center: Complex64, radius: f64, t: f64, tol: f64) -> Result<Complex64> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParams(format!("Hartogs radius must be positive, got {radius}")));
    }
    let samples = circle_samples(f, t, center, radius, HARTOGS_NODES)?;
    let b1 = contour_coefficient(f, t, center, radius, 1, CoefficientKind::Laurent)?;
    if b1.norm() > tol {
        return Err(Error::NotRemovable { b1: b1.norm() });
    }
    let mean = samples.iter().sum::<Complex64>() / HARTOGS_NODES as f64;
    Ok(mean)
}

/// How the cohomological equation is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KMode {
    /// `K = Σ_n H(γ^n p)`.
    Direct,
    /// `K = −Σ_n Σ_j {v_j(γ^{n+1}p) − v_j(γ^n p)}`; reproduces the direct
    /// series only in the limit `J → ∞`.
    PolySeries,
}

impl KMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            KMode::Direct => "direct",
            KMode::PolySeries => "polyseries",
        }
    }
}

/// Stopping rule and origin check for the cohomological series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// A term below `tol` for `consecutive` terms in a row stops the sum.
    pub tol: f64,
    pub consecutive: usize,
    pub n_max: usize,
    /// Largest accepted `|H(0,0)|`.
    pub origin_tol: f64,
    /// Radius of the circle at `t = 0` used to extend `H` over the origin.
    pub probe_radius: f64,
    pub mode: KMode,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            consecutive: 5,
            n_max: 200,
            origin_tol: 1e-6,
            probe_radius: 0.5,
            mode: KMode::Direct,
        }
    }
}

/// Solution `K` of `K − K∘γ = H`.
#[derive(Clone)]
pub struct CohomologicalSolution {
    h: Arc<dyn LeafwiseFn>,
    polys: Vec<PolyInZ>,
    params: FoliationParams,
    opts: SeriesOptions,
    fixed_terms: Option<usize>,
    h_origin: Complex64,
}

impl fmt::Debug for CohomologicalSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CohomologicalSolution")
            .field("mode", &self.opts.mode)
            .field("fixed_terms", &self.fixed_terms)
            .field("h_origin", &self.h_origin)
            .finish()
    }
}

impl CohomologicalSolution {
    /// `H(0,0)` as extended over the origin.
    pub fn h_origin(&self) -> Complex64 {
        self.h_origin
    }

    /// Sums exactly `n` terms at every point, so the result is a smooth
    /// function of `p` (finite differences see no stopping-index jumps).
    pub fn with_fixed_terms(mut self, n: usize) -> Self {
        self.fixed_terms = Some(n);
        self
    }

    fn term(&self, p: Point, n: usize) -> Result<Complex64> {
        let q = gamma_pow(p, n as i32, self.params);
        match self.opts.mode {
            KMode::Direct => self.h.eval_at(q),
            KMode::PolySeries => {
                let r = gamma_pow(q, 1, self.params);
                let mut acc = Complex64::new(0.0, 0.0);
                for v in &self.polys {
                    acc -= v.value(r.z, r.t)? - v.value(q.z, q.t)?;
                }
                Ok(acc)
            }
        }
    }

    /// Monitored sum; returns the value and the number of terms used.
    pub fn sum_monitored(&self, p: Point) -> Result<(Complex64, usize)> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut quiet = 0;
        let mut last = f64::INFINITY;
        for n in 0..self.opts.n_max {
            let term = self.term(p, n)?;
            acc += term;
            last = term.norm();
            if last < self.opts.tol {
                quiet += 1;
                if quiet >= self.opts.consecutive {
                    return Ok((acc, n + 1));
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::Convergence {
            terms: self.opts.n_max,
            last,
            tol: self.opts.tol,
        })
    }
}

impl LeafwiseFn for CohomologicalSolution {
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let p = Point::new(z, t);
        match self.fixed_terms {
            Some(n) => (0..n).map(|k| self.term(p, k)).sum(),
            None => self.sum_monitored(p).map(|(v, _)| v),
        }
    }
}

/// Solves `K(z,t) − K(λz,λt) = H(z,t)` after checking `H(0,0) = 0`.
///
/// `polys` are the Runge polynomials `v_j`, required in polyseries mode.
pub fn solve_cohomological(
    h: Arc<dyn LeafwiseFn>,
    params: FoliationParams,
    opts: SeriesOptions,
    polys: Option<&[PolyInZ]>,
) -> Result<CohomologicalSolution> {
    if opts.mode == KMode::PolySeries && polys.is_none() {
        return Err(Error::InvalidParams("polyseries mode needs the Runge polynomials v_j".into()));
    }
    if !(opts.tol > 0.0) || opts.consecutive == 0 || opts.n_max == 0 {
        return Err(Error::InvalidParams("series tolerance and term counts must be positive".into()));
    }
    let h_origin = hartogs_extend(h.as_ref(), Complex64::new(0.0, 0.0), opts.probe_radius, 0.0, opts.origin_tol)
        .map_err(|e| match e {
            // a pole at the origin is an obstruction of a different kind; report its size
            Error::NotRemovable { b1 } => Error::Obstruction {
                re: b1,
                im: 0.0,
                tol: opts.origin_tol,
            },
            other => other,
        })?;
    if h_origin.norm() > opts.origin_tol {
        return Err(Error::Obstruction {
            re: h_origin.re,
            im: h_origin.im,
            tol: opts.origin_tol,
        });
    }
    Ok(CohomologicalSolution {
        h,
        polys: polys.map(<[PolyInZ]>::to_vec).unwrap_or_default(),
        params,
        opts,
        fixed_terms: None,
        h_origin,
    })
}

/// `h = h̃ + K`, optionally folded into the fundamental domain.
#[derive(Clone)]
pub struct Primitive {
    htilde: Option<Arc<Htilde>>,
    k: Option<CohomologicalSolution>,
    params: FoliationParams,
    fold: bool,
}

impl fmt::Debug for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Primitive")
            .field("htilde", &self.htilde)
            .field("k", &self.k)
            .field("fold", &self.fold)
            .finish()
    }
}

impl Primitive {
    pub fn zero(params: FoliationParams) -> Self {
        Self {
            htilde: None,
            k: None,
            params,
            fold: true,
        }
    }

    /// The same primitive evaluated without folding, so that `h∘γ − h`
    /// measures a genuine invariance defect.
    pub fn unfolded(&self) -> Self {
        Self {
            fold: false,
            ..self.clone()
        }
    }

    fn raw(&self, z: Complex64, t: f64) -> Result<Complex64> {
        let (Some(ht), Some(k)) = (&self.htilde, &self.k) else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        Ok(ht.eval(z, t)? + k.eval(z, t)?)
    }
}

impl LeafwiseFn for Primitive {
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        if !self.fold {
            return self.raw(z, t);
        }
        let p = Point::new(z, t);
        let q = gamma_pow(p, fundamental_index(p, self.params)?, self.params);
        self.raw(q.z, q.t)
    }
}

/// Everything a decomposition needs besides the form.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub family: CutoffFamily,
    pub spec: PolarQuadSpec,
    pub j_max: usize,
    pub series: SeriesOptions,
    pub truncation: TruncationSettings,
    /// `t`-samples and per-disc node counts of the exhaustion grids.
    pub t_samples: Vec<f64>,
    pub grid_n_r: usize,
    pub grid_n_theta: usize,
    pub fd_step: f64,
    /// Residual sweep points; empty means the default fundamental grid.
    pub grid: Vec<Point>,
}

/// Quadrature radius covering every transform a solve with `J` partial
/// solutions evaluates.
pub fn derived_r_max(family: &CutoffFamily, j_max: usize) -> f64 {
    let l = family.lambda();
    family.r_out() / l.powi(j_max as i32) + family.plateau() / l.powi(j_max as i32 - 1) + 1.0
}

/// Smallest `J ≥ 2` whose region `|z| ≤ λ^{-J}(R+ε)`, where `∂̄h̃ = f`,
/// has radius at least 2.
pub fn suggested_j_max(family: &CutoffFamily) -> usize {
    let mut j = 2;
    while family.plateau() / family.lambda().powi(j as i32) < 2.0 {
        j += 1;
    }
    j
}

impl SolveConfig {
    /// Defaults for `λ`: derived cutoff geometry, `J = 2`, 256×256 nodes.
    pub fn default_for(lambda: f64) -> Result<Self> {
        let family = CutoffFamily::default_for(lambda)?;
        Self::with_family(family, 2)
    }

    pub fn with_family(family: CutoffFamily, j_max: usize) -> Result<Self> {
        let spec = PolarQuadSpec::new(256, 256, derived_r_max(&family, j_max), family.lambda())?;
        Ok(Self {
            family,
            spec,
            j_max,
            series: SeriesOptions::default(),
            truncation: TruncationSettings::default(),
            t_samples: t_window(1.0, 17),
            grid_n_r: 64,
            grid_n_theta: 64,
            fd_step: DEFAULT_FD_STEP,
            grid: Vec::new(),
        })
    }

    pub fn params(&self) -> FoliationParams {
        FoliationParams::new(self.family.lambda()).expect("family validated λ")
    }

    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        if (self.spec.scale_ratio - self.family.lambda()).abs() > 1e-15 {
            return Err(Error::InvalidParams(
                "the quadrature must be invariant under the contraction: scale_ratio = lambda".into(),
            ));
        }
        if self.j_max == 0 {
            return Err(Error::InvalidParams("J_max must be at least 1".into()));
        }
        if !(self.fd_step > 0.0) {
            return Err(Error::InvalidParams("fd_step must be positive".into()));
        }
        Ok(())
    }

    pub fn exhaustion(&self) -> Result<CompactExhaustion> {
        CompactExhaustion::new(
            self.family.lambda(),
            self.family.r_inner(),
            self.j_max,
            self.t_samples.clone(),
            self.grid_n_r,
            self.grid_n_theta,
        )
    }

    pub fn residual_grid(&self) -> Vec<Point> {
        if self.grid.is_empty() {
            fundamental_grid(self.params())
        } else {
            self.grid.clone()
        }
    }
}

/// Counters reported with a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub j_max: usize,
    pub k_terms: usize,
    pub degrees: Vec<usize>,
    pub truncation_bounds: Vec<f64>,
    pub mode: KMode,
    pub h_origin: Complex64,
}

/// Result of [`decompose`].
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub class_coeff: Complex64,
    pub obstruction_f: Complex64,
    pub obstruction_omega0: Complex64,
    /// The primitive, folded into the fundamental domain (weight 0).
    pub primitive: Primitive,
    pub residuals: ResidualBundle,
    /// Per-node values behind `residuals`.
    pub rows: Vec<PointResidual>,
    /// Root-mean-square spread of `h` over the residual grid.
    pub h_grid_std: f64,
    pub diagnostics: Diagnostics,
}

impl SolveReport {
    pub fn within(&self, tol: f64) -> bool {
        self.residuals.pde < tol && self.residuals.invariance < tol && self.residuals.holo < tol
    }
}

/// Root-mean-square deviation from the mean.
pub fn grid_std(values: &[Complex64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<Complex64>() / n;
    (values.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / n).sqrt()
}

/// `f = c·ω₀ + ∂̄h` with residuals on the sweep grid.
pub fn decompose(f: &LeafwiseForm01, config: &SolveConfig) -> Result<SolveReport> {
    config.validate()?;
    let params = config.params();
    let family = &config.family;
    let spec = &config.spec;
    let class = class_coefficient(f, family, spec)?;
    let remainder = LeafwiseForm01::linear_combination(&[
        (Complex64::new(1.0, 0.0), f.clone()),
        (-class.c, omega0()),
    ])
    .simplified();
    let grid = config.residual_grid();

    if remainder.is_zero() {
        let primitive = Primitive::zero(params);
        let rows = pointwise_residuals(&remainder, &primitive, None, &grid, params, config.fd_step)?;
        return Ok(SolveReport {
            class_coeff: class.c,
            obstruction_f: class.obstruction_f,
            obstruction_omega0: class.obstruction_omega0,
            residuals: bundle(&rows, format!("{} points", grid.len())),
            h_grid_std: grid_std(&rows.iter().map(|r| r.h).collect::<Vec<_>>()),
            rows,
            primitive,
            diagnostics: Diagnostics {
                j_max: config.j_max,
                k_terms: 0,
                degrees: vec![0; config.j_max],
                truncation_bounds: vec![0.0; config.j_max],
                mode: config.series.mode,
                h_origin: Complex64::new(0.0, 0.0),
            },
        });
    }

    let exhaustion = config.exhaustion()?;
    let htilde = Arc::new(assemble_htilde(&remainder, config.j_max, family, spec, &exhaustion, &config.truncation)?);
    let big_h: Arc<dyn LeafwiseFn> = Arc::new(HtildeCoboundary { htilde: htilde.clone() });
    let k = solve_cohomological(big_h.clone(), params, config.series, Some(htilde.polys()))?;

    // one term count for the whole sweep keeps K smooth across FD stencils
    let counts: Vec<usize> = grid
        .par_iter()
        .map(|p| k.sum_monitored(*p).map(|(_, n)| n))
        .collect::<Result<_>>()?;
    let k_terms = counts.into_iter().max().unwrap_or(0);
    let k = k.with_fixed_terms(k_terms);
    let h_origin = k.h_origin();

    let primitive = Primitive {
        htilde: Some(htilde.clone()),
        k: Some(k),
        params,
        fold: true,
    };
    let raw = primitive.unfolded();
    let rows = pointwise_residuals(&remainder, &raw, Some(big_h.as_ref()), &grid, params, config.fd_step)?;
    Ok(SolveReport {
        class_coeff: class.c,
        obstruction_f: class.obstruction_f,
        obstruction_omega0: class.obstruction_omega0,
        residuals: bundle(&rows, format!("{} points", grid.len())),
        h_grid_std: grid_std(&rows.iter().map(|r| r.h).collect::<Vec<_>>()),
        rows,
        primitive,
        diagnostics: Diagnostics {
            j_max: config.j_max,
            k_terms,
            degrees: htilde.truncations().iter().map(|r| r.degree).collect(),
            truncation_bounds: htilde.truncations().iter().map(|r| r.bound).collect(),
            mode: config.series.mode,
            h_origin,
        },
    })
}

/// `ℓ`-th Taylor coefficient in `z` of a weight-0 function at `t`, from a
/// circle of radius `|t|/2`.
pub fn leaf_taylor_coefficient(
    function: &EquivariantFunction,
    params: FoliationParams,
    t: f64,
    ell: usize,
) -> Result<Complex64> {
    if function.weight() != 0 {
        return Err(Error::InvalidParams("Taylor profile expects a weight-0 function".into()));
    }
    if t == 0.0 {
        return Err(Error::Domain("the leaf t = 0 passes through the origin".into()));
    }
    let eval = |z: Complex64, tt: f64| function.value(z, tt, params);
    contour_coefficient(&eval, t, Complex64::new(0.0, 0.0), 0.5 * t.abs(), ell, CoefficientKind::Taylor)
}

/// `f_ℓ(λ^k t₀)` for `k = 0..=k_max`. For an invariant function these obey
/// `f_ℓ(λt) = λ^{-ℓ} f_ℓ(t)`, so a non-zero `f_ℓ` blows up as `t → 0`.
pub fn rigidity_profile(
    function: &EquivariantFunction,
    params: FoliationParams,
    t0: f64,
    ell: usize,
    k_max: usize,
) -> Result<Vec<(f64, Complex64)>> {
    (0..=k_max)
        .map(|k| {
            let t = t0 * params.lambda().powi(k as i32);
            Ok((t, leaf_taylor_coefficient(function, params, t, ell)?))
        })
        .collect()
}

/// `(1/2iπ)∫ ψ_N(ξ) f(ξ,t)/(ξ − z)` written out with the `ψ_N` support.
pub fn transform_of_psi(
    f: &LeafwiseForm01,
    n: u32,
    p: Point,
    family: &CutoffFamily,
    spec: &PolarQuadSpec,
) -> Result<Complex64> {
    let params = FoliationParams::new(family.lambda())?;
    let (inner, outer) = family.psi_support(n);
    cauchy_transform(
        |xi, t| f.value(xi, t, params) * family.psi(n, xi),
        Support::annulus(inner, outer),
        p.z,
        p.t,
        spec,
    )
}
