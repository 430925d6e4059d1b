//! Leading-order (in ω₁/ω_u) asymptotics of the net induced phase and the
//! dephasing exponent in the intermediate (ω_u⁻¹ ≪ t ≪ ω₁⁻¹) and long
//! (t ≫ ω₁⁻¹) time ranges.

use serde::Serialize;
use std::f64::consts::PI;

use super::integral::mean_dephasing_integral;
use super::{spectral_integral_quadrature, SpectralModel, WeightFunction};
use crate::constants::EULER_GAMMA;
use crate::error::Result;
use crate::exactsum::{CavityParams, ThermalParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Intermediate,
    Long,
}

/// `(net_phase, dephase)` from the tabulated leading-order expressions.
/// The cutoff shape, boundary weight and continuum factor are ignored.
pub fn asymptotic_exponent(
    model: &SpectralModel,
    cavity: &CavityParams,
    thermal: &ThermalParams,
    n: usize,
    n_prime: usize,
    t: f64,
    regime: Regime,
) -> (f64, f64) {
    if n == n_prime {
        return (0.0, 0.0);
    }
    let diff = n as f64 - n_prime as f64;
    let k = (n + n_prime + 1) as f64 * diff;
    let d2 = diff * diff;
    let a = model.coupling_c * cavity.omega().powi(2);
    let bh = thermal.beta_hbar();
    let w1 = model.omega_1;
    let wu = model.omega_u;
    match (model.s, regime) {
        (1, Regime::Intermediate) => (
            t * k * a * wu / PI,
            -d2 * a * ((bh * wu / (2.0 * PI)).ln() / PI + t / bh),
        ),
        (1, _) => (t * k * a * wu / PI, -d2 * 2.0 * a / (PI * bh * w1)),
        (0, Regime::Intermediate) => (
            t * k * a / PI * ((wu * t).ln() - 1.0),
            -d2 * a / (PI * bh) * (1.5 - EULER_GAMMA - (w1 * t).ln()) * t * t,
        ),
        (0, _) => (
            -t * k * a / PI * ((w1 / wu).ln() + EULER_GAMMA),
            -d2 * a / (PI * bh * w1 * w1),
        ),
        (_, Regime::Intermediate) => (t * t * k * a / 4.0, -d2 * a * t * t / (PI * w1 * bh)),
        (_, _) => (t * k * a / (PI * w1), -d2 * 2.0 * a / (3.0 * PI * bh * w1.powi(3))),
    }
}

/// Oscillating correction on top of the long-time dephasing plateau.
///
/// For s = 1 this is `−(n−n′)²(2CΩ²/πβħω₁)·sin(ω₁t)/(ω₁t)`; for s = 0, −1 it
/// is the high-temperature quadrature value minus the long-time asymptote.
pub fn subleading_oscillation(
    model: &SpectralModel,
    cavity: &CavityParams,
    thermal: &ThermalParams,
    n: usize,
    n_prime: usize,
    t: f64,
) -> Result<f64> {
    if n == n_prime {
        return Ok(0.0);
    }
    let diff = n as f64 - n_prime as f64;
    let d2 = diff * diff;
    let a = model.coupling_c * cavity.omega().powi(2);
    if model.s == 1 {
        let x = model.omega_1 * t;
        let envelope = if x == 0.0 { 1.0 } else { x.sin() / x };
        return Ok(-d2 * 2.0 * a / (PI * thermal.beta_hbar() * model.omega_1) * envelope);
    }
    let q = spectral_integral_quadrature(model, &WeightFunction::deph_high_t(t, thermal.beta_hbar()))?;
    let numeric = -2.0 * d2 * cavity.omega().powi(2) * q / PI;
    let (_, long) = asymptotic_exponent(model, cavity, thermal, n, n_prime, t, Regime::Long);
    Ok(numeric - long)
}

/// Time-averaged long-time dephasing for the full model (cutoff, boundary
/// term, continuum factor and full coth weight included).
pub fn long_time_dephase_plateau(
    model: &SpectralModel,
    cavity: &CavityParams,
    thermal: &ThermalParams,
    n: usize,
    n_prime: usize,
) -> Result<f64> {
    if n == n_prime {
        return Ok(0.0);
    }
    let diff = n as f64 - n_prime as f64;
    let q = mean_dephasing_integral(model, thermal.beta_hbar())?;
    Ok(-2.0 * diff * diff * cavity.omega().powi(2) * q / PI)
}

/// Midpoint-rule mean of `f` over `[center − period/2, center + period/2]`.
pub fn period_average<F>(f: F, center: f64, period: f64, samples: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let samples = samples.max(1);
    let mut acc = 0.0;
    for j in 0..samples {
        let t = center - 0.5 * period + period * (j as f64 + 0.5) / samples as f64;
        acc += f(t)?;
    }
    Ok(acc / samples as f64)
}
