//! Scaled radial cutoffs `ρ₀`, `φ_j(ξ) = ρ₀(λ^j ξ)` and the partition
//! `ψ₀ = φ₀`, `ψ_j = φ_j − φ_{j−1}`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `σ(u) = exp(−1/u)` for `u > 0`.
#[inline]
fn sigma(u: f64) -> f64 {
    if u > 0.0 {
        (-1.0 / u).exp()
    } else {
        0.0
    }
}

/// C^∞ monotone step from 0 (at `u ≤ 0`) to 1 (at `u ≥ 1`) with `S(1/2) = 1/2`.
#[inline]
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let a = sigma(u);
        a / (a + sigma(1.0 - u))
    }
}

/// Radial cutoff geometry `(R, ε, R_out)` for a contraction ratio `λ`.
///
/// `ρ₀` equals 1 on `|ξ| ≤ R + ε`, vanishes for `|ξ| ≥ R_out`, and the
/// nesting `R + ε < R_out < λ^{-1} R` keeps `supp ψ₁` inside one scale step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffFamily {
    r_inner: f64,
    eps: f64,
    r_out: f64,
    lambda: f64,
}

impl CutoffFamily {
    pub fn new(r_inner: f64, eps: f64, r_out: f64, lambda: f64) -> Result<Self> {
        let finite = [r_inner, eps, r_out, lambda].iter().all(|v| v.is_finite());
        if !finite || r_inner <= 0.0 || eps <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "cutoff needs R > 0 and eps > 0, got R = {r_inner}, eps = {eps}"
            )));
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::InvalidParams(format!(
                "lambda must lie in (0,1), got {lambda}"
            )));
        }
        let outer = r_inner / lambda;
        if r_inner + eps >= outer {
            return Err(Error::InvalidParams(format!(
                "nesting condition R + eps < R/lambda fails: {} >= {outer}",
                r_inner + eps
            )));
        }
        if !(r_inner + eps < r_out && r_out < outer) {
            return Err(Error::InvalidParams(format!(
                "support radius must satisfy R + eps < R_out < R/lambda, got R_out = {r_out} (bounds {}, {outer})",
                r_inner + eps
            )));
        }
        Ok(Self {
            r_inner,
            eps,
            r_out,
            lambda,
        })
    }

    /// Default geometry for `λ`: `R = 1` and the gap `g = R/λ − R` split as
    /// `ε = g/4`, `R_out = R + 3g/4`. For `λ = 0.5` this is `(1, 0.25, 1.75)`.
    pub fn default_for(lambda: f64) -> Result<Self> {
        let gap = 1.0 / lambda - 1.0;
        Self::new(1.0, 0.25 * gap, 1.0 + 0.75 * gap, lambda)
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn r_out(&self) -> f64 {
        self.r_out
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Radius of the plateau `Ω` on which `ρ₀ ≡ 1`.
    pub fn plateau(&self) -> f64 {
        self.r_inner + self.eps
    }

    #[inline]
    pub fn rho0_radial(&self, r: f64) -> f64 {
        smooth_step((self.r_out - r) / (self.r_out - self.plateau()))
    }

    #[inline]
    pub fn rho0(&self, x: Complex64) -> f64 {
        self.rho0_radial(x.norm())
    }

    #[inline]
    pub fn phi(&self, j: u32, xi: Complex64) -> f64 {
        self.rho0(xi * self.lambda.powi(j as i32))
    }

    #[inline]
    pub fn psi(&self, j: u32, xi: Complex64) -> f64 {
        if j == 0 {
            self.phi(0, xi)
        } else {
            self.phi(j, xi) - self.phi(j - 1, xi)
        }
    }

    /// Radial form of `ψ_j`, used by the quadrature kernels.
    #[inline]
    pub fn psi_radial(&self, j: u32, r: f64) -> f64 {
        let s = self.lambda.powi(j as i32);
        if j == 0 {
            self.rho0_radial(r)
        } else {
            self.rho0_radial(r * s) - self.rho0_radial(r * self.lambda.powi(j as i32 - 1))
        }
    }

    /// Closed annulus `[inner, outer]` containing `supp ψ_j`; `inner = 0`
    /// for `j = 0`.
    pub fn psi_support(&self, j: u32) -> (f64, f64) {
        let outer = self.r_out / self.lambda.powi(j as i32);
        if j == 0 {
            (0.0, outer)
        } else {
            (self.plateau() / self.lambda.powi(j as i32 - 1), outer)
        }
    }

    /// `(R1, R2) = (R + ε, λ^{-1} R_out)`: the annulus carrying `ψ₁`.
    pub fn support_annulus(&self) -> (f64, f64) {
        self.psi_support(1)
    }
}
