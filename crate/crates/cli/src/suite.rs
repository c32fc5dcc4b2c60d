//! Property suite behind `leafdbar verify`.

use leafdbar::geometry::omega0;
use leafdbar::solver::{
    derived_r_max, obstruction_at_scale, rigidity_profile, suggested_j_max, telescoped_coboundary, transform_of_psi,
};
use leafdbar::{Complex64, CutoffFamily, EquivariantFunction, FoliationParams, PolarQuadSpec, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Validated;
use crate::error::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub command: &'static str,
    pub lambda: f64,
    pub j_max: usize,
    pub suggested_j_max: usize,
    pub all_passed: bool,
    pub properties: Vec<PropertyResult>,
}

fn property(name: &'static str, measured: f64, tolerance: f64, samples: usize) -> PropertyResult {
    PropertyResult {
        name,
        passed: measured.is_finite() && measured < tolerance,
        measured,
        tolerance,
        samples,
    }
}

fn random_xi(rng: &mut ChaCha8Rng, r_max: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.0..r_max), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// `φ_j(ξ) = ρ₀(λ^j ξ)` and `ψ_j(λξ) = ψ_{j+1}(ξ)` for `j ≥ 1`.
fn cutoff_scaling(family: &CutoffFamily, rng: &mut ChaCha8Rng, n: usize) -> PropertyResult {
    let lambda = family.lambda();
    let reach = family.r_out() / lambda.powi(7);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let j = rng.gen_range(0..=6u32);
        let xi = random_xi(rng, reach);
        worst = worst.max((family.phi(j, xi) - family.rho0(xi * lambda.powi(j as i32))).abs());
        if j >= 1 {
            worst = worst.max((family.psi(j, xi * lambda) - family.psi(j + 1, xi)).abs());
        }
    }
    property("cutoff_scaling", worst, 1e-14, n)
}

/// `Σ_{n≤N} {ψ₀(λ^{n+1}ξ) − ψ₀(λ^n ξ)} = ψ₀(λ^{N+1}ξ) − ψ₀(ξ)`.
fn cutoff_telescoping(family: &CutoffFamily, rng: &mut ChaCha8Rng, n: usize) -> PropertyResult {
    let lambda = family.lambda();
    let reach = family.r_out() / lambda.powi(21);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let big_n = rng.gen_range(0..=20i32);
        let xi = random_xi(rng, reach);
        let psi0 = |k: i32| family.psi(0, xi * lambda.powi(k));
        let sum: f64 = (0..=big_n).map(|k| psi0(k + 1) - psi0(k)).sum();
        worst = worst.max((sum - (psi0(big_n + 1) - psi0(0))).abs());
    }
    property("cutoff_telescoping", worst, 1e-14, n)
}

/// `Σ_{j≤N} ψ_j = φ_N`.
fn partition_sums(family: &CutoffFamily, rng: &mut ChaCha8Rng, n: usize) -> PropertyResult {
    let reach = family.r_out() / family.lambda().powi(13);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let big_n = rng.gen_range(0..=12u32);
        let xi = random_xi(rng, reach);
        let sum: f64 = (0..=big_n).map(|j| family.psi(j, xi)).sum();
        worst = worst.max((sum - family.phi(big_n, xi)).abs());
    }
    property("partition_sums", worst, 1e-14, n)
}

/// Area quadrature of `𝓘(ω₀)` against the radial line integral.
fn obstruction_identity(family: &CutoffFamily, spec: &PolarQuadSpec) -> Result<PropertyResult, CliError> {
    let area = obstruction_at_scale(&omega0(), 1, family, spec)?;
    let (r1, r2) = family.support_annulus();
    let line = -2.0 * simpson(|r| family.psi_radial(1, r) / r, r1, r2, 20_000);
    let mut p = property("obstruction_identity", (area - line).norm() / line.abs(), 1e-6, 1);
    p.passed &= area.re < 0.0;
    Ok(p)
}

fn scale_constancy(family: &CutoffFamily, spec: &PolarQuadSpec) -> Result<PropertyResult, CliError> {
    let reach = family.r_out() / family.lambda().powi(5) + 1.0;
    let spec = spec.with_r_max(spec.r_max.max(reach));
    let i1 = obstruction_at_scale(&omega0(), 1, family, &spec)?;
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        worst = worst.max((obstruction_at_scale(&omega0(), n, family, &spec)? - i1).norm());
    }
    Ok(property("scale_constancy", worst, 1e-8, 4))
}

fn coboundary_telescoping(
    family: &CutoffFamily,
    spec: &PolarQuadSpec,
    rng: &mut ChaCha8Rng,
    n_points: usize,
) -> Result<PropertyResult, CliError> {
    let spec = spec.with_r_max(spec.r_max.max(derived_r_max(family, 3) + 1.0));
    let mut worst: f64 = 0.0;
    for i in 0..n_points {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let p = Point::new(
            Complex64::new(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8)),
            sign * rng.gen_range(0.2..0.9),
        );
        for n in 1..=3u32 {
            let lhs = telescoped_coboundary(&omega0(), n, p, family, &spec)?;
            let rhs = transform_of_psi(&omega0(), n, p, family, &spec)?;
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(property("coboundary_telescoping", worst, 1e-5, n_points))
}

/// Leaf Taylor coefficients of an invariant weight-0 function scale as
/// `f₁(λt) = λ^{-1} f₁(t)`.
fn rigidity(params: FoliationParams) -> Result<[PropertyResult; 2], CliError> {
    let f = EquivariantFunction::from_fundamental(0, |z: Complex64, t: f64| {
        let w = z / t;
        w + 0.25 * w * w + (0.3 * w).sin()
    });
    let lambda = params.lambda();
    let prof = rigidity_profile(&f, params, 0.8, 1, 5)?;
    let relation = prof
        .windows(2)
        .map(|w| (w[0].1 / lambda - w[1].1).norm() / w[1].1.norm())
        .fold(0.0, f64::max);
    let f0 = prof[0].1.norm();
    let growth = prof
        .iter()
        .enumerate()
        .map(|(k, (_, fk))| (fk.norm() / f0 * lambda.powi(k as i32) - 1.0).abs())
        .fold(0.0, f64::max);
    Ok([
        property("rigidity_relation", relation, 1e-8, prof.len()),
        property("rigidity_growth", growth, 1e-2, prof.len()),
    ])
}

pub fn run(cfg: &Validated) -> Result<SuiteReport, CliError> {
    let family = cfg.family();
    let spec = &cfg.solve.spec;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.raw.seed);
    let mut properties = vec![
        cutoff_scaling(family, &mut rng, 1000),
        cutoff_telescoping(family, &mut rng, 1000),
        partition_sums(family, &mut rng, 1000),
        obstruction_identity(family, spec)?,
        scale_constancy(family, spec)?,
        coboundary_telescoping(family, spec, &mut rng, 10)?,
    ];
    properties.extend(rigidity(cfg.solve.params())?);
    Ok(SuiteReport {
        command: "verify",
        lambda: family.lambda(),
        j_max: cfg.solve.j_max,
        suggested_j_max: suggested_j_max(family),
        all_passed: properties.iter().all(|p| p.passed),
        properties,
    })
}
