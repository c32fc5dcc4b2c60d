//! JSON run configuration. Every omitted field takes its default.

use std::path::{Path, PathBuf};

use leafdbar::approximation::{t_window, TruncationSettings};
use leafdbar::solver::{derived_r_max, SeriesOptions};
use leafdbar::{CutoffFamily, KMode, LeafwiseForm01, PolarQuadSpec, SolveConfig};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::form::parse_form;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub lambda: f64,
    pub cutoff: CutoffConfig,
    pub quadrature: QuadratureConfig,
    pub j_max: usize,
    pub tolerances: Tolerances,
    pub series_mode: SeriesMode,
    pub grid: GridConfig,
    /// Linear combination of builtins, e.g. `2.5*omega0 + 1*exact_g0`.
    pub form: String,
    pub seed: u64,
    pub dump: DumpConfig,
    pub output: OutputConfig,
}

/// Missing entries fall back to the geometry derived from `lambda`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CutoffConfig {
    pub r: Option<f64>,
    pub eps: Option<f64>,
    pub r_out: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub n_r: usize,
    pub n_theta: usize,
    /// Defaults to the smallest radius covering every transform of the solve.
    pub r_max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub series: f64,
    pub consecutive: usize,
    pub n_max: usize,
    pub origin: f64,
    pub residual: f64,
    pub fd_step: f64,
    pub degree_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesMode {
    Direct,
    Polyseries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub t_half_width: f64,
    pub t_samples: usize,
    pub n_r: usize,
    pub n_theta: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DumpConfig {
    pub levels: u32,
    pub samples: usize,
    /// Defaults to the outer edge of the last `ψ_j`.
    pub r_max: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            lambda: 0.5,
            cutoff: CutoffConfig::default(),
            quadrature: QuadratureConfig::default(),
            j_max: 2,
            tolerances: Tolerances::default(),
            series_mode: SeriesMode::Direct,
            grid: GridConfig::default(),
            form: "exact_g0".into(),
            seed: 7,
            dump: DumpConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            n_r: 256,
            n_theta: 256,
            r_max: None,
        }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        let s = SeriesOptions::default();
        Self {
            series: s.tol,
            consecutive: s.consecutive,
            n_max: s.n_max,
            origin: s.origin_tol,
            residual: 1e-3,
            fd_step: 1e-4,
            degree_cap: TruncationSettings::default().degree_cap,
        }
    }
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            t_half_width: 1.0,
            t_samples: 17,
            n_r: 64,
            n_theta: 64,
        }
    }
}

impl Default for DumpConfig {
    fn default() -> Self {
        Self {
            levels: 4,
            samples: 401,
            r_max: None,
        }
    }
}

/// A configuration after every constraint has been checked.
#[derive(Debug, Clone)]
pub struct Validated {
    pub raw: RunConfig,
    pub solve: SolveConfig,
    pub form: LeafwiseForm01,
}

impl Validated {
    pub fn family(&self) -> &CutoffFamily {
        &self.solve.family
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("malformed config: {e}")))
    }

    pub fn family(&self) -> Result<CutoffFamily, CliError> {
        let base = CutoffFamily::default_for(self.lambda)?;
        let c = &self.cutoff;
        Ok(CutoffFamily::new(
            c.r.unwrap_or(base.r_inner()),
            c.eps.unwrap_or(base.eps()),
            c.r_out.unwrap_or(base.r_out()),
            self.lambda,
        )?)
    }

    pub fn validate(&self) -> Result<Validated, CliError> {
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(CliError::Config(format!("lambda must lie in (0,1), got {}", self.lambda)));
        }
        let family = self.family()?;
        if self.j_max == 0 {
            return Err(CliError::Config("j_max must be at least 1".into()));
        }
        let t = &self.tolerances;
        let positive = [t.series, t.origin, t.residual, t.fd_step];
        if positive.iter().any(|v| !(v.is_finite() && *v > 0.0)) || t.consecutive == 0 || t.n_max == 0 {
            return Err(CliError::Config("tolerances must be positive and finite".into()));
        }
        let g = &self.grid;
        if !(g.t_half_width.is_finite() && g.t_half_width > 0.0) || g.t_samples == 0 || g.n_r == 0 || g.n_theta == 0 {
            return Err(CliError::Config("grid densities and t-window must be positive".into()));
        }
        if self.dump.samples < 2 || self.dump.r_max.is_some_and(|r| !(r.is_finite() && r > 0.0)) {
            return Err(CliError::Config("dump needs at least 2 samples and a positive r_max".into()));
        }
        let r_max = self.quadrature.r_max.unwrap_or_else(|| derived_r_max(&family, self.j_max));
        let spec = PolarQuadSpec::new(self.quadrature.n_r, self.quadrature.n_theta, r_max, self.lambda)?;

        let mut solve = SolveConfig::with_family(family, self.j_max)?;
        solve.spec = spec;
        solve.series = SeriesOptions {
            tol: t.series,
            consecutive: t.consecutive,
            n_max: t.n_max,
            origin_tol: t.origin,
            mode: match self.series_mode {
                SeriesMode::Direct => KMode::Direct,
                SeriesMode::Polyseries => KMode::PolySeries,
            },
            ..SeriesOptions::default()
        };
        solve.truncation = TruncationSettings {
            degree_cap: t.degree_cap,
        };
        solve.t_samples = t_window(g.t_half_width, g.t_samples);
        solve.grid_n_r = g.n_r;
        solve.grid_n_theta = g.n_theta;
        solve.fd_step = t.fd_step;
        solve.validate()?;

        let form = parse_form(&self.form)?;
        Ok(Validated {
            raw: self.clone(),
            solve,
            form,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_takes_defaults() {
        let cfg = RunConfig::from_json("{}").unwrap();
        assert_eq!(cfg, RunConfig::default());
        let v = cfg.validate().unwrap();
        assert_eq!(v.solve.spec.r_max, 10.5);
        assert_eq!(v.family().support_annulus(), (1.25, 3.5));
    }

    #[test]
    fn partial_documents_merge_with_defaults() {
        let cfg = RunConfig::from_json(r#"{"lambda": 0.9, "cutoff": {"r": 1.0}, "tolerances": {"residual": 0.01}}"#).unwrap();
        assert_eq!(cfg.tolerances.residual, 0.01);
        assert_eq!(cfg.tolerances.n_max, 200);
        let v = cfg.validate().unwrap();
        assert_eq!(v.family().lambda(), 0.9);
    }

    #[test]
    fn invalid_documents_are_config_errors() {
        let bad = [
            r#"{"lambda": 1.5}"#,
            r#"{"cutoff": {"r": 1.0, "eps": 1.1, "r_out": 2.05}}"#,
            r#"{"quadrature": {"n_r": 0}}"#,
            r#"{"j_max": 0}"#,
            r#"{"form": "omega7"}"#,
            r#"{"tolerances": {"fd_step": -1}}"#,
        ];
        for doc in bad {
            let err = RunConfig::from_json(doc).and_then(|c| c.validate().map(|_| ())).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{doc}: {err}");
        }
        assert!(RunConfig::from_json(r#"{"lamda": 0.5}"#).is_err());
        assert!(RunConfig::from_json("[").is_err());
    }
}
