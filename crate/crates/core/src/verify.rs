//! Finite-difference Wirtinger derivatives and residual bundles.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{gamma_pow, FoliationParams, LeafwiseForm01, LeafwiseFn, Point};

/// Default finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Central-difference `∂h/∂z̄ = ½(∂_x + i∂_y) h` at `p`, second order in `step`.
pub fn dbar_fd<H: LeafwiseFn + ?Sized>(h: &H, p: Point, step: f64) -> Result<Complex64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    let dx = Complex64::new(step, 0.0);
    let dy = Complex64::new(0.0, step);
    let stencil = [p.z + dx, p.z - dx, p.z + dy, p.z - dy];
    if p.t == 0.0 && stencil.iter().any(|z| z.norm() == 0.0) {
        return Err(Error::Domain(format!(
            "finite-difference stencil at {p} touches the origin"
        )));
    }
    let [xp, xm, yp, ym] = stencil.map(|z| h.eval(z, p.t));
    let d_x = (xp? - xm?) / (2.0 * step);
    let d_y = (yp? - ym?) / (2.0 * step);
    Ok(0.5 * (d_x + Complex64::i() * d_y))
}

/// Suprema of the three defect fields over a sample grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualBundle {
    /// `sup |∂̄h − f|`.
    pub pde: f64,
    /// `sup |h∘γ − h|`.
    pub invariance: f64,
    /// `sup |∂̄H|` for the coboundary `H`, zero when none was supplied.
    pub holo: f64,
    pub grid: String,
}

/// Per-point defects at one grid node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResidual {
    pub point: Point,
    pub h: Complex64,
    pub pde: f64,
    pub invariance: f64,
    pub holo: f64,
}

/// Defects of `h` as a γ-invariant solution of `∂̄h = f` at each grid node.
pub fn pointwise_residuals(
    f: &LeafwiseForm01,
    h: &dyn LeafwiseFn,
    coboundary: Option<&dyn LeafwiseFn>,
    grid: &[Point],
    params: FoliationParams,
    step: f64,
) -> Result<Vec<PointResidual>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    grid.par_iter()
        .map(|&p| {
            let hp = h.eval_at(p)?;
            let pde = (dbar_fd(h, p, step)? - f.value(p.z, p.t, params)).norm();
            let invariance = (h.eval_at(gamma_pow(p, 1, params))? - hp).norm();
            let holo = match coboundary {
                Some(hc) => dbar_fd(hc, p, step)?.norm(),
                None => 0.0,
            };
            Ok(PointResidual {
                point: p,
                h: hp,
                pde,
                invariance,
                holo,
            })
        })
        .collect()
}

/// Suprema of [`pointwise_residuals`].
pub fn residual_report(
    f: &LeafwiseForm01,
    h: &dyn LeafwiseFn,
    coboundary: Option<&dyn LeafwiseFn>,
    grid: &[Point],
    params: FoliationParams,
    step: f64,
) -> Result<ResidualBundle> {
    let rows = pointwise_residuals(f, h, coboundary, grid, params, step)?;
    Ok(bundle(&rows, format!("{} points", grid.len())))
}

pub(crate) fn bundle(rows: &[PointResidual], grid: String) -> ResidualBundle {
    let sup = |g: fn(&PointResidual) -> f64| rows.iter().map(g).fold(0.0, f64::max);
    ResidualBundle {
        pde: sup(|r| r.pde),
        invariance: sup(|r| r.invariance),
        holo: sup(|r| r.holo),
        grid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approximation::fundamental_grid;
    use crate::geometry::{exact_g0, g0, EquivariantEval};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dbar_of_simple_functions() {
        let p = Point::new(c(1.0, 2.0), 0.3);
        let conj = |z: Complex64, _t: f64| z.conj();
        assert!((dbar_fd(&conj, p, 1e-4).unwrap() - c(1.0, 0.0)).norm() < 1e-10);
        let sq = |z: Complex64, _t: f64| z * z;
        assert!(dbar_fd(&sq, p, 1e-4).unwrap().norm() < 1e-8);
        // ∂̄(z z̄) = z
        let modsq = |z: Complex64, _t: f64| z * z.conj();
        assert!((dbar_fd(&modsq, p, 1e-4).unwrap() - c(1.0, 2.0)).norm() < 1e-6);
        assert!(dbar_fd(&sq, p, 0.0).is_err());
    }

    #[test]
    fn stencil_through_origin_is_rejected() {
        let sq = |z: Complex64, _t: f64| z * z;
        let p = Point::new(c(1e-4, 0.0), 0.0);
        assert!(matches!(dbar_fd(&sq, p, 1e-4), Err(Error::Domain(_))));
    }

    #[test]
    fn second_order_convergence() {
        // smooth, non-holomorphic: ∂̄ (e^{z̄} z) = e^{z̄} z
        let h = |z: Complex64, _t: f64| z.conj().exp() * z;
        let p = Point::new(c(0.4, -0.7), 0.0);
        let exact = p.z.conj().exp() * p.z;
        let e1 = (dbar_fd(&h, p, 1e-2).unwrap() - exact).norm();
        let e2 = (dbar_fd(&h, p, 5e-3).unwrap() - exact).norm();
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn exact_g0_is_the_dbar_of_g0() {
        let params = FoliationParams::default();
        let g = g0();
        let h = EquivariantEval {
            function: &g,
            params,
        };
        let f = exact_g0();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let p = Point::new(c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)), rng.gen_range(0.1..1.5));
            let d = dbar_fd(&h, p, 1e-4).unwrap();
            assert!((d - f.value(p.z, p.t, params)).norm() < 1e-6);
        }
    }

    #[test]
    fn residual_examples() {
        let params = FoliationParams::default();
        let grid = fundamental_grid(params);
        let zero = |_z: Complex64, _t: f64| c(0.0, 0.0);
        let r = residual_report(&LeafwiseForm01::zero(), &zero, Some(&zero), &grid, params, 1e-4).unwrap();
        assert_eq!((r.pde, r.invariance, r.holo), (0.0, 0.0, 0.0));

        let g = g0();
        let h = EquivariantEval {
            function: &g,
            params,
        };
        let r = residual_report(&exact_g0(), &h, None, &grid, params, 1e-4).unwrap();
        assert!(r.pde < 1e-6 && r.invariance < 1e-12, "{r:?}");

        let ident = |z: Complex64, _t: f64| z;
        let r = residual_report(&LeafwiseForm01::zero(), &ident, None, &grid, params, 1e-4).unwrap();
        let expect = grid.iter().map(|p| p.z.norm() * 0.5).fold(0.0, f64::max);
        assert!((r.invariance - expect).abs() < 1e-15 && r.invariance > 0.0);

        assert_eq!(
            residual_report(&LeafwiseForm01::zero(), &zero, None, &[], params, 1e-4),
            Err(Error::EmptyGrid)
        );
    }
}
