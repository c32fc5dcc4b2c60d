//! `leafdbar`: decompositions, obstruction values, property checks and
//! cutoff profiles from a JSON run configuration.

mod config;
mod error;
mod form;
mod output;
mod suite;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use leafdbar::solver::{class_coefficient, decompose, suggested_j_max};
use serde::Serialize;

use config::{RunConfig, Validated};
use error::CliError;
use output::{check_targets, render_csv, render_json, write_atomic, JsonComplex};

#[derive(Debug, Parser)]
#[command(name = "leafdbar", version, about = "Leafwise dbar decompositions on the Reeb foliation of a Hopf manifold")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the obstruction functional and the class coefficient c.
    Obstruction(Common),
    /// Split the form into c*omega0 plus an exact part and report residuals.
    Decompose(Common),
    /// Run the property suite; exits 4 if any property fails.
    Verify(Common),
    /// Write rho0, phi_j and psi_j radial profiles as CSV.
    DumpCutoffs(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// JSON run configuration; omitted fields take their defaults.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Override the input form, e.g. "2.5*omega0 + 1*exact_g0".
    #[arg(long)]
    form: Option<String>,
    /// Also write the JSON record to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// CSV output path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

impl Common {
    fn load(&self) -> Result<Validated, CliError> {
        let mut raw = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(f) = &self.form {
            raw.form = f.clone();
        }
        if self.json.is_some() {
            raw.output.json = self.json.clone();
        }
        if self.csv.is_some() {
            raw.output.csv = self.csv.clone();
        }
        raw.validate()
    }
}

#[derive(Serialize)]
struct ObstructionRecord<'a> {
    command: &'static str,
    form: &'a str,
    lambda: f64,
    #[serde(rename = "I_f")]
    i_f: JsonComplex,
    #[serde(rename = "I_omega0")]
    i_omega0: JsonComplex,
    c: JsonComplex,
}

#[derive(Serialize)]
struct ResidualRecord {
    pde: f64,
    invariance: f64,
    holo: f64,
    grid: String,
    tolerance: f64,
    within_tolerance: bool,
}

#[derive(Serialize)]
struct DiagnosticsRecord {
    j_max: usize,
    suggested_j_max: usize,
    k_terms: usize,
    degrees: Vec<usize>,
    truncation_bounds: Vec<f64>,
    mode: &'static str,
    h_origin: JsonComplex,
    r_max: f64,
    n_r: usize,
    n_theta: usize,
}

#[derive(Serialize)]
struct DecomposeRecord<'a> {
    command: &'static str,
    form: &'a str,
    lambda: f64,
    c: JsonComplex,
    #[serde(rename = "I_f")]
    i_f: JsonComplex,
    #[serde(rename = "I_omega0")]
    i_omega0: JsonComplex,
    h_grid_std: f64,
    residuals: ResidualRecord,
    diagnostics: DiagnosticsRecord,
}

fn emit_json(text: &str, target: Option<&Path>) -> Result<(), CliError> {
    if let Some(p) = target {
        write_atomic(p, text)?;
    }
    to_stdout(text)
}

/// A closed downstream pipe is not an error.
fn to_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn cmd_obstruction(cfg: &Validated) -> Result<(), CliError> {
    let json = cfg.raw.output.json.as_deref();
    check_targets(&json.into_iter().collect::<Vec<_>>())?;
    let class = class_coefficient(&cfg.form, cfg.family(), &cfg.solve.spec)?;
    let rec = ObstructionRecord {
        command: "obstruction",
        form: &cfg.raw.form,
        lambda: cfg.raw.lambda,
        i_f: class.obstruction_f.into(),
        i_omega0: class.obstruction_omega0.into(),
        c: class.c.into(),
    };
    emit_json(&render_json(&rec)?, json)
}

fn cmd_decompose(cfg: &Validated) -> Result<(), CliError> {
    let json = cfg.raw.output.json.as_deref();
    let csv = cfg.raw.output.csv.as_deref();
    check_targets(&json.into_iter().chain(csv).collect::<Vec<_>>())?;
    let rep = decompose(&cfg.form, &cfg.solve)?;
    let tol = cfg.raw.tolerances.residual;
    let within = rep.within(tol);
    let d = &rep.diagnostics;
    let spec = &cfg.solve.spec;
    let rec = DecomposeRecord {
        command: "decompose",
        form: &cfg.raw.form,
        lambda: cfg.raw.lambda,
        c: rep.class_coeff.into(),
        i_f: rep.obstruction_f.into(),
        i_omega0: rep.obstruction_omega0.into(),
        h_grid_std: rep.h_grid_std,
        residuals: ResidualRecord {
            pde: rep.residuals.pde,
            invariance: rep.residuals.invariance,
            holo: rep.residuals.holo,
            grid: rep.residuals.grid.clone(),
            tolerance: tol,
            within_tolerance: within,
        },
        diagnostics: DiagnosticsRecord {
            j_max: d.j_max,
            suggested_j_max: suggested_j_max(cfg.family()),
            k_terms: d.k_terms,
            degrees: d.degrees.clone(),
            truncation_bounds: d.truncation_bounds.clone(),
            mode: d.mode.as_str(),
            h_origin: d.h_origin.into(),
            r_max: spec.r_max,
            n_r: spec.n_r,
            n_theta: spec.n_theta,
        },
    };
    if let Some(path) = csv {
        let rows: Vec<Vec<f64>> = rep
            .rows
            .iter()
            .map(|r| vec![r.point.z.re, r.point.z.im, r.point.t, r.h.re, r.h.im, r.pde, r.invariance])
            .collect();
        let header = ["re_z", "im_z", "t", "re_h", "im_h", "pde_residual", "inv_residual"];
        write_atomic(path, &render_csv(&header, &rows))?;
    }
    emit_json(&render_json(&rec)?, json)?;
    if within {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "residuals exceed {tol:e}: pde {:e}, invariance {:e}, holo {:e}",
            rep.residuals.pde, rep.residuals.invariance, rep.residuals.holo
        )))
    }
}

fn cmd_verify(cfg: &Validated) -> Result<(), CliError> {
    let json = cfg.raw.output.json.as_deref();
    check_targets(&json.into_iter().collect::<Vec<_>>())?;
    let report = suite::run(cfg)?;
    emit_json(&render_json(&report)?, json)?;
    if report.all_passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report.properties.iter().filter(|p| !p.passed).map(|p| p.name).collect();
        Err(CliError::Property(format!("failed: {}", failed.join(", "))))
    }
}

fn cmd_dump_cutoffs(cfg: &Validated) -> Result<(), CliError> {
    let family = cfg.family();
    let levels = cfg.raw.dump.levels;
    let samples = cfg.raw.dump.samples;
    let r_max = cfg.raw.dump.r_max.unwrap_or_else(|| family.psi_support(levels).1 * 1.1);
    let mut header = vec!["r".to_string(), "rho0".to_string()];
    header.extend((0..=levels).map(|j| format!("phi_{j}")));
    header.extend((0..=levels).map(|j| format!("psi_{j}")));
    let rows: Vec<Vec<f64>> = (0..samples)
        .map(|i| {
            let r = r_max * i as f64 / (samples - 1) as f64;
            let xi = leafdbar::Complex64::new(r, 0.0);
            let mut row = vec![r, family.rho0_radial(r)];
            row.extend((0..=levels).map(|j| family.phi(j, xi)));
            row.extend((0..=levels).map(|j| family.psi_radial(j, r)));
            row
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let text = render_csv(&header, &rows);
    match cfg.raw.output.csv.as_deref() {
        Some(p) => write_atomic(p, &text),
        None => to_stdout(&text),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Obstruction(c) => cmd_obstruction(&c.load()?),
        Command::Decompose(c) => cmd_decompose(&c.load()?),
        Command::Verify(c) => cmd_verify(&c.load()?),
        Command::DumpCutoffs(c) => cmd_dump_cutoffs(&c.load()?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("leafdbar: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
