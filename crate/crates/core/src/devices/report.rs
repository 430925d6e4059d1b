use serde::Serialize;
use std::f64::consts::PI;

use super::membrane::{beam_waist, membrane_bath, membrane_spectral_model, MembraneParams};
use super::strip::{strip_bath, strip_spectral_model, strip_validity, StripParams, StripValidity};
use crate::bathmodel::{long_time_dephase_plateau, spectral_integral_quadrature, SpectralModel, WeightFunction};
use crate::constants::EULER_GAMMA;
use crate::error::{Error, Result};
use crate::exactsum::{CavityParams, ModeBath, ThermalParams};

const MICROSECOND: f64 = 1e-6;
const REPORT_SAMPLES: usize = 9;

/// A physical realization of the cavity-bath system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "device", rename_all = "snake_case")]
pub enum DeviceSpec {
    Strip(StripParams),
    Membrane(MembraneParams),
}

impl DeviceSpec {
    pub fn name(&self) -> &'static str {
        match self {
            DeviceSpec::Strip(_) => "strip",
            DeviceSpec::Membrane(_) => "membrane",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DeviceSpec::Strip(p) => p.validate(),
            DeviceSpec::Membrane(p) => p.validate(),
        }
    }

    pub fn spectral_model(&self) -> Result<SpectralModel> {
        match self {
            DeviceSpec::Strip(p) => strip_spectral_model(p),
            DeviceSpec::Membrane(p) => membrane_spectral_model(p),
        }
    }

    pub fn cavity(&self) -> Result<CavityParams> {
        match self {
            DeviceSpec::Strip(p) => p.cavity(),
            DeviceSpec::Membrane(p) => p.cavity(),
        }
    }

    pub fn thermal(&self) -> Result<ThermalParams> {
        match self {
            DeviceSpec::Strip(p) => p.thermal(),
            DeviceSpec::Membrane(p) => p.thermal(),
        }
    }

    pub fn discrete_bath(&self) -> Result<ModeBath> {
        match self {
            DeviceSpec::Strip(p) => strip_bath(p),
            DeviceSpec::Membrane(p) => membrane_bath(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportSample {
    pub t: f64,
    /// Continuum dephasing with the full coth weight and continuum factor.
    pub dephase: f64,
    /// Leading-order intermediate-time dephasing.
    pub intermediate_asymptote: f64,
}

/// Headline numbers for one device and Fock pair, all derived from the
/// device parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DephasingReport {
    pub device: &'static str,
    pub n: usize,
    pub n_prime: usize,
    pub temperature: f64,
    pub omega_u: f64,
    pub omega_1: f64,
    pub coupling_c: f64,
    pub epsilon: f64,
    pub cavity_omega: f64,
    /// Ω/ω_u; large values justify dropping counter-rotating couplings.
    pub cavity_over_omega_u: f64,
    /// Intermediate window (1/ω_u, 1/ω₁), s.
    pub window_s: (f64, f64),
    /// Intermediate dephasing is `coefficient · shape(t) · t²`.
    pub intermediate_shape: &'static str,
    pub intermediate_coefficient: f64,
    /// Same coefficient with t in μs.
    pub intermediate_coefficient_us2: f64,
    /// Membrane only: coefficient per kelvin with t in μs.
    pub coefficient_per_kelvin_us2: Option<f64>,
    /// Membrane only: ω₁·(1 μs), the argument scale of the logarithm.
    pub log_scale_per_us: Option<f64>,
    /// Time-averaged continuum dephasing for t ≫ 1/ω₁.
    pub long_time_plateau: f64,
    /// Strip only: 2π/ω₁, where the harmonic spectrum rephases completely.
    pub rephasing_time_s: Option<f64>,
    /// Induced Kerr constant Λ, rad/s; the Kerr phase is −t(n+n′+1)(n−n′)Λ.
    pub kerr_constant: f64,
    pub strip_validity: Option<StripValidity>,
    /// Membrane only: w_σ / L.
    pub beam_waist_ratio: Option<f64>,
    pub samples: Vec<ReportSample>,
}

/// Intermediate-time dephasing coefficient and its time shape for a device.
fn intermediate_coefficient(
    spec: &DeviceSpec,
    model: &SpectralModel,
    cavity: &CavityParams,
    thermal: &ThermalParams,
    d2: f64,
) -> (f64, &'static str) {
    let a = model.coupling_c * cavity.omega().powi(2);
    match spec {
        DeviceSpec::Strip(p) => (
            -d2 * p.refinement_factor * a / (PI * model.omega_1 * thermal.beta_hbar()),
            "1",
        ),
        DeviceSpec::Membrane(_) => (
            -d2 * model.continuum_factor * a / (PI * thermal.beta_hbar()),
            "3/2 - gamma - ln(omega_1 t)",
        ),
    }
}

fn shape_value(spec: &DeviceSpec, omega_1: f64, t: f64) -> f64 {
    match spec {
        DeviceSpec::Strip(_) => 1.0,
        DeviceSpec::Membrane(_) => 1.5 - EULER_GAMMA - (omega_1 * t).ln(),
    }
}

/// Device dephasing summary with log-spaced continuum samples over
/// `time_window`.
pub fn device_dephasing_report(
    spec: &DeviceSpec,
    time_window: (f64, f64),
    n: usize,
    n_prime: usize,
) -> Result<DephasingReport> {
    let (t_lo, t_hi) = time_window;
    if !(t_lo > 0.0 && t_hi > t_lo && t_hi.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "time_window",
            message: format!("need 0 < t_lo < t_hi, got ({t_lo:e}, {t_hi:e})"),
        });
    }
    let model = spec.spectral_model()?;
    let cavity = spec.cavity()?;
    let thermal = spec.thermal()?;
    let diff = n as f64 - n_prime as f64;
    let d2 = diff * diff;
    let (coefficient, shape) = intermediate_coefficient(spec, &model, &cavity, &thermal, d2);
    let w2 = cavity.omega().powi(2);
    let kerr_constant = -w2 * spectral_integral_quadrature(&model, &WeightFunction::inv_omega())? / PI;

    let mut samples = Vec::with_capacity(REPORT_SAMPLES);
    for j in 0..REPORT_SAMPLES {
        let t = t_lo * (t_hi / t_lo).powf(j as f64 / (REPORT_SAMPLES - 1) as f64);
        let q = spectral_integral_quadrature(&model, &WeightFunction::deph_full(t, thermal.beta_hbar()))?;
        let dephase = -2.0 * d2 * w2 * q / PI;
        let intermediate_asymptote = coefficient * shape_value(spec, model.omega_1, t) * t * t;
        samples.push(ReportSample {
            t,
            dephase,
            intermediate_asymptote,
        });
    }

    let (validity, waist_ratio, per_kelvin, log_scale, rephasing) = match spec {
        DeviceSpec::Strip(p) => (Some(strip_validity(p)?), None, None, None, Some(2.0 * PI / model.omega_1)),
        DeviceSpec::Membrane(p) => (
            None,
            Some(beam_waist(p)? / p.side_l),
            Some(coefficient * MICROSECOND * MICROSECOND / p.temperature),
            Some(model.omega_1 * MICROSECOND),
            None,
        ),
    };
    Ok(DephasingReport {
        device: spec.name(),
        n,
        n_prime,
        temperature: thermal.temperature(),
        omega_u: model.omega_u,
        omega_1: model.omega_1,
        coupling_c: model.coupling_c,
        epsilon: model.epsilon(),
        cavity_omega: cavity.omega(),
        cavity_over_omega_u: cavity.omega() / model.omega_u,
        window_s: (1.0 / model.omega_u, 1.0 / model.omega_1),
        intermediate_shape: shape,
        intermediate_coefficient: coefficient,
        intermediate_coefficient_us2: coefficient * MICROSECOND * MICROSECOND,
        coefficient_per_kelvin_us2: per_kelvin,
        log_scale_per_us: log_scale,
        long_time_plateau: long_time_dephase_plateau(&model, &cavity, &thermal, n, n_prime)?,
        rephasing_time_s: rephasing,
        kerr_constant,
        strip_validity: validity,
        beam_waist_ratio: waist_ratio,
        samples,
    })
}
