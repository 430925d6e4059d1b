//! Incomplete-Gamma closed forms for the exponential cutoff.
//!
//! With ε = ω₁/ω_u and τ = ω_u t the time dependence enters through
//! `h(τ) = (1 − iτ)^{−a} Γ(a, ε(1 − iτ))`. For τ ≤ 0.5 the differences
//! `h(0) − h(τ)` cancel badly, so they are summed from the Taylor series
//! `h(τ) = Σ_k (iτ)^k/k! · Γ(a + k, ε)` instead.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{CutoffShape, SpectralModel};
use crate::error::{Error, Result};
use crate::exactsum::{CavityParams, ThermalParams};
use crate::specfun::upper_incomplete_gamma;

const SERIES_MAX_TAU: f64 = 0.5;
const SERIES_TERMS: usize = 90;

fn require_exponential(model: &SpectralModel) -> Result<()> {
    model.validate()?;
    if model.cutoff != CutoffShape::Exponential {
        return Err(Error::Model(format!(
            "closed forms need the exponential cutoff, model has {}; use quadrature",
            model.cutoff.name()
        )));
    }
    Ok(())
}

/// `Γ(a + k, ε)` for `k = 0..count`, real ε > 0.
fn gamma_ladder(a: i32, count: usize, eps: f64) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    let z = Complex64::new(eps, 0.0);
    let e = (-eps).exp();
    for k in 0..count {
        let order = a + k as i32;
        let v = if order <= 1 {
            upper_incomplete_gamma(order, z)?.re
        } else {
            // Γ(m+1, ε) = mΓ(m, ε) + ε^m e^{−ε}, stable upward for m ≥ 1
            let m = (order - 1) as f64;
            m * out[k - 1] + eps.powi(order - 1) * e
        };
        out.push(v);
    }
    Ok(out)
}

/// `Im[(1 − iτ)^{−a} Γ(a, ε(1 − iτ))]`.
fn rotated_gamma_im(a: i32, eps: f64, tau: f64) -> Result<f64> {
    if tau <= SERIES_MAX_TAU {
        let ladder = gamma_ladder(a, SERIES_TERMS, eps)?;
        let mut coef = 1.0;
        let mut sum = 0.0;
        for (k, g) in ladder.iter().enumerate().skip(1) {
            coef *= tau / k as f64;
            if k % 2 == 1 {
                let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                sum += sign * coef * g;
            }
        }
        return Ok(sum);
    }
    let w = Complex64::new(1.0, -tau);
    Ok((w.powi(-a) * upper_incomplete_gamma(a, w * eps)?).im)
}

/// `Γ(a, ε) − Re[(1 − iτ)^{−a} Γ(a, ε(1 − iτ))]`.
fn rotated_gamma_re_drop(a: i32, eps: f64, tau: f64) -> Result<f64> {
    if tau <= SERIES_MAX_TAU {
        let ladder = gamma_ladder(a, SERIES_TERMS, eps)?;
        let mut coef = 1.0;
        let mut sum = 0.0;
        for (k, g) in ladder.iter().enumerate().skip(1) {
            coef *= tau / k as f64;
            if k % 2 == 0 {
                let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
                sum -= sign * coef * g;
            }
        }
        return Ok(sum);
    }
    let w = Complex64::new(1.0, -tau);
    let g0 = upper_incomplete_gamma(a, Complex64::new(eps, 0.0))?.re;
    Ok(g0 - (w.powi(-a) * upper_incomplete_gamma(a, w * eps)?).re)
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and non-negative, got {t}")))
    }
}

/// Induced Kerr constant `−(CΩ²ω_u^s/π) Γ(s, ε)`, rad/s.
pub fn kerr_constant_closed(model: &SpectralModel, cavity: &CavityParams) -> Result<f64> {
    require_exponential(model)?;
    let g = upper_incomplete_gamma(model.s, Complex64::new(model.epsilon(), 0.0))?.re;
    Ok(-model.coupling_c * cavity.omega().powi(2) * model.omega_u.powi(model.s) / PI * g)
}

/// `(kerr_phase, osc_phase)` for the exponential cutoff:
/// `kerr = t(n+n′+1)(n−n′)(CΩ²ω_u^s/π)Γ(s, ε)`,
/// `osc = −(n+n′+1)(n−n′)(CΩ²ω_u^{s−1}/π) Im[(1−iω_u t)^{1−s} Γ(s−1, ε(1−iω_u t))]`.
pub fn phase_closed(
    model: &SpectralModel,
    cavity: &CavityParams,
    n: usize,
    n_prime: usize,
    t: f64,
) -> Result<(f64, f64)> {
    require_exponential(model)?;
    check_time(t)?;
    if n == n_prime {
        return Ok((0.0, 0.0));
    }
    let k = (n + n_prime + 1) as f64 * (n as f64 - n_prime as f64);
    let a2 = model.coupling_c * cavity.omega().powi(2);
    let kerr = -t * k * kerr_constant_closed(model, cavity)?;
    let tau = model.omega_u * t;
    let im = if t == 0.0 {
        0.0
    } else {
        rotated_gamma_im(model.s - 1, model.epsilon(), tau)?
    };
    let osc = -k * a2 * model.omega_u.powi(model.s - 1) / PI * im;
    Ok((kerr, osc))
}

/// High-temperature dephasing for the exponential cutoff:
/// `−(2CΩ²/π)(n−n′)²(ω_u^{s−2}/βħ){Γ(s−2, ε) − Re[(1−iω_u t)^{2−s} Γ(s−2, ε(1−iω_u t))]}`,
/// times the model's continuum factor.
pub fn dephase_closed_high_t(
    model: &SpectralModel,
    cavity: &CavityParams,
    thermal: &ThermalParams,
    n: usize,
    n_prime: usize,
    t: f64,
) -> Result<f64> {
    require_exponential(model)?;
    check_time(t)?;
    if n == n_prime || t == 0.0 {
        return Ok(0.0);
    }
    let diff = n as f64 - n_prime as f64;
    let braces = rotated_gamma_re_drop(model.s - 2, model.epsilon(), model.omega_u * t)?;
    let pre = 2.0 * model.coupling_c * cavity.omega().powi(2) / PI * diff * diff * model.omega_u.powi(model.s - 2)
        / thermal.beta_hbar();
    Ok(-pre * braces * model.continuum_factor)
}
