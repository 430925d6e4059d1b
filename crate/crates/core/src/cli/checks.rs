//! Cross-checks run by `validate`.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use super::config::{ModelSpec, RunConfig};
use super::engine::discrete_bath;
use crate::bathmodel::{
    dephase_closed_high_t, phase_closed, quadrature_exponent, spectral_integral_quadrature, CutoffShape,
    DephasingWeight, WeightFunction,
};
use crate::devices::{strip_validity, DeviceSpec};
use crate::error::Result;
use crate::exactsum::{evolve_with, BathEvaluator, FockDensityMatrix};

/// Closed forms vs quadrature.
pub const CLOSED_FORM_TOL: f64 = 1e-6;
pub const STRIP_CONTINUUM_TOL: f64 = 0.05;
pub const MEMBRANE_CONTINUUM_TOL: f64 = 0.10;
/// Strip dephasing at 2π/ω₁ relative to its maximum.
pub const REPHASING_TOL: f64 = 1e-8;
/// Minimum late-time membrane dephasing relative to its maximum.
pub const NON_REPHASING_FLOOR: f64 = 0.2;
/// Zero crossings are measured against this fraction of the largest value.
const RELATIVE_FLOOR: f64 = 1e-3;
const REPHASING_SAMPLES: usize = 2000;
const NON_REPHASING_SAMPLES: usize = 400;
const DENSITY_TIMES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// `true` for physical validity conditions rather than numerical checks.
    pub validity: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
            validity: false,
        }
    }

    fn at_least(name: impl Into<String>, value: f64, floor: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tolerance: floor,
            passed: value >= floor,
            validity: false,
        }
    }
}

/// Largest `|a − b| / max(|b|, floor)` with the floor a fixed fraction of `max |b|`.
pub fn max_relative_error(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = RELATIVE_FLOOR * scale;
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).abs();
            if d == 0.0 {
                0.0
            } else {
                d / y.abs().max(floor)
            }
        })
        .fold(0.0, f64::max)
}

pub fn run_checks(cfg: &RunConfig) -> Result<Vec<Check>> {
    let spec = cfg.model_spec()?;
    let mut checks = density_matrix_checks(cfg, &spec)?;
    match &spec {
        ModelSpec::Generic { model, .. } if model.cutoff == CutoffShape::Exponential => {
            checks.extend(closed_form_checks(cfg, &spec)?);
        }
        ModelSpec::Generic { .. } => {}
        ModelSpec::Device(d @ DeviceSpec::Strip(p)) => {
            let v = strip_validity(p)?;
            checks.push(Check {
                name: "strip validity sum <= 0.1".into(),
                value: v.lhs,
                tolerance: 0.1,
                passed: v.ok,
                validity: true,
            });
            checks.extend(strip_checks(d)?);
        }
        ModelSpec::Device(d @ DeviceSpec::Membrane(_)) => checks.extend(membrane_checks(d)?),
    }
    Ok(checks)
}

fn density_matrix_checks(cfg: &RunConfig, spec: &ModelSpec) -> Result<Vec<Check>> {
    let rho0 = cfg.initial_state()?;
    let evaluator = BathEvaluator::new(&discrete_bath(spec)?, &spec.cavity()?, &spec.thermal()?)?;
    let grid = cfg.time.grid();
    let step = (grid.len() / DENSITY_TIMES).max(1);
    let states: Vec<FockDensityMatrix> = grid
        .par_iter()
        .step_by(step)
        .map(|&t| evolve_with(&rho0, &evaluator, t))
        .collect::<Result<_>>()?;
    let mut trace = 0.0f64;
    let mut herm = 0.0f64;
    let mut neg = 0.0f64;
    let mut diag = 0.0f64;
    for rho in &states {
        trace = trace.max((rho.trace() - 1.0).norm());
        herm = herm.max(rho.hermiticity_error());
        neg = neg.max(-rho.min_eigenvalue());
        for n in 0..rho.dim() {
            diag = diag.max((rho.entries()[(n, n)] - rho0.entries()[(n, n)]).norm());
        }
    }
    Ok(vec![
        Check::at_most("trace deviation", trace, FockDensityMatrix::TRACE_TOL),
        Check::at_most("hermiticity deviation", herm, FockDensityMatrix::HERMITIAN_TOL),
        Check::at_most("negative eigenvalue", neg, FockDensityMatrix::POSITIVITY_TOL),
        Check::at_most("diagonal drift", diag, FockDensityMatrix::TRACE_TOL),
    ])
}

fn closed_form_checks(cfg: &RunConfig, spec: &ModelSpec) -> Result<Vec<Check>> {
    let model = spec.spectral_model()?;
    let cavity = spec.cavity()?;
    let thermal = spec.thermal()?;
    let grid = cfg.time.grid();
    let rows: Vec<[f64; 6]> = grid
        .par_iter()
        .map(|&t| {
            let (kerr, osc) = phase_closed(&model, &cavity, 1, 0, t)?;
            let deph = dephase_closed_high_t(&model, &cavity, &thermal, 1, 0, t)?;
            let q = quadrature_exponent(&model, &cavity, &thermal, 1, 0, t, DephasingWeight::HighTemperature)?;
            Ok([kerr, osc, deph, q.kerr_phase, q.osc_phase, q.dephase])
        })
        .collect::<Result<_>>()?;
    let column = |j: usize| rows.iter().map(|r| r[j]).collect::<Vec<_>>();
    Ok(["kerr phase", "oscillating phase", "high-temperature dephasing"]
        .iter()
        .enumerate()
        .map(|(j, name)| {
            Check::at_most(
                format!("closed form vs quadrature: {name}"),
                max_relative_error(&column(j), &column(j + 3)),
                CLOSED_FORM_TOL,
            )
        })
        .collect())
}

fn continuum_dephasing_sum(device: &DeviceSpec, t: f64) -> Result<f64> {
    let model = device.spectral_model()?;
    let cavity = device.cavity()?;
    let thermal = device.thermal()?;
    let q = spectral_integral_quadrature(&model, &WeightFunction::deph_high_t(t, thermal.beta_hbar()))?;
    Ok(cavity.omega().powi(2) * q / PI)
}

/// Discrete high-temperature sum `Σ(Ωλ/ω)² (2/βħω) sin²(ωt/2)`.
fn discrete_high_t_sum(device: &DeviceSpec, t: f64) -> Result<f64> {
    let bath = device.discrete_bath()?;
    let w2 = device.cavity()?.omega().powi(2);
    let bh = device.thermal()?.beta_hbar();
    Ok(bath
        .modes()
        .iter()
        .map(|m| {
            let s = (0.5 * m.omega * t).sin();
            w2 * (m.lambda / m.omega).powi(2) * 2.0 / (bh * m.omega) * s * s
        })
        .collect::<crate::sum::NeumaierSum>()
        .value())
}

/// Dephasing sums on `samples` evenly spaced times in `(lo, hi]`.
fn sampled_dephasing(evaluator: &BathEvaluator, lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>> {
    (1..=samples)
        .into_par_iter()
        .map(|j| evaluator.dephasing_sum(lo + (hi - lo) * j as f64 / samples as f64))
        .collect()
}

fn strip_checks(device: &DeviceSpec) -> Result<Vec<Check>> {
    let model = device.spectral_model()?;
    let t_mid = 1.0 / (model.omega_u * model.omega_1).sqrt();
    let discrete = discrete_high_t_sum(device, t_mid)?;
    let continuum = continuum_dephasing_sum(device, t_mid)?;
    let evaluator = BathEvaluator::new(&device.discrete_bath()?, &device.cavity()?, &device.thermal()?)?;
    let period = 2.0 * PI / model.omega_1;
    let window = sampled_dephasing(&evaluator, 0.0, period, REPHASING_SAMPLES)?;
    let max = window.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let at_period = evaluator.dephasing_sum(period)?.abs();
    Ok(vec![
        Check::at_most(
            "strip discrete vs corrected continuum at window midpoint",
            (continuum / discrete - 1.0).abs(),
            STRIP_CONTINUUM_TOL,
        ),
        Check::at_most("strip rephasing at 2 pi / omega_1", at_period / max, REPHASING_TOL),
    ])
}

fn membrane_checks(device: &DeviceSpec) -> Result<Vec<Check>> {
    let model = device.spectral_model()?;
    let t_mid = 1.0 / (model.omega_u * model.omega_1).sqrt();
    let discrete = discrete_high_t_sum(device, t_mid)?;
    let continuum = continuum_dephasing_sum(device, t_mid)?;
    let evaluator = BathEvaluator::new(&device.discrete_bath()?, &device.cavity()?, &device.thermal()?)?;
    let period = 2.0 * PI / model.omega_1;
    let all = sampled_dephasing(&evaluator, 0.0, 5.0 * period, 5 * NON_REPHASING_SAMPLES)?;
    let max = all.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let late_min = all[NON_REPHASING_SAMPLES - 1..]
        .iter()
        .fold(f64::INFINITY, |m, v| m.min(v.abs()));
    Ok(vec![
        Check::at_most(
            "membrane discrete vs scaled continuum at window midpoint",
            (continuum / discrete - 1.0).abs(),
            MEMBRANE_CONTINUUM_TOL,
        ),
        Check::at_least("membrane late-time minimum / maximum", late_min / max, NON_REPHASING_FLOOR),
    ])
}

/// Fixed-width table of checks.
pub fn render_checks(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        let status = match (c.passed, c.validity) {
            (true, _) => "PASS",
            (false, true) => "INVALID",
            (false, false) => "FAIL",
        };
        out.push_str(&format!(
            "{status:<7} {:<width$}  value {:.6e}  bound {:.1e}\n",
            c.name, c.value, c.tolerance
        ));
    }
    out
}
