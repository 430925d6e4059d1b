//! Square dielectric membrane inside a Gaussian-beam optical cavity.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::strip::{half_turn_sine, ratio_at_most, Cutoffs};
use crate::bathmodel::{CutoffShape, SpectralModel};
use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{positive, Error, Result};
use crate::exactsum::{CavityParams, Mode, ModeBath, ThermalParams};

/// Default factor on continuum dephasing to match the discrete double sum.
pub const DEFAULT_CONTINUUM_FACTOR: f64 = 1.3;
/// Default truncation of discrete membrane baths, in units of ω_u.
pub const DEFAULT_MODE_CUTOFF_FACTOR: f64 = 3.0;

/// Membrane and cavity parameters, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembraneParams {
    /// Mass density ρ_m, kg/m³.
    pub rho_m: f64,
    /// Edge tension per unit length 𝓕, N/m.
    pub tension_per_length: f64,
    /// Thickness T, m.
    pub thickness_t: f64,
    /// Side length L, m.
    pub side_l: f64,
    /// Cavity length l, m.
    pub cavity_length: f64,
    /// Optical wavelength λ_σ, m; fixes σ = round(2l/λ_σ).
    pub wavelength: f64,
    /// Rayleigh range f, m.
    pub rayleigh_range: f64,
    /// Membrane position on the cavity axis, m.
    pub z0: f64,
    /// Refractive index n.
    pub refractive_n: f64,
    /// Temperature, K.
    pub temperature: f64,
    pub continuum_factor: f64,
    /// Discrete baths keep modes with ω ≤ mode_cutoff_factor·ω_u.
    pub mode_cutoff_factor: f64,
}

impl MembraneParams {
    /// n = 2, ρ_m = 3.4·10³ kg/m³, 𝓕 = 43 N/m, T = 50 nm, L = 10 cm,
    /// l = 3.7 cm, λ = 1064 nm, 90 μm waist, maximal coupling, 1 K.
    pub fn reference() -> Self {
        let mut p = Self {
            rho_m: 3.4e3,
            tension_per_length: 43.0,
            thickness_t: 50e-9,
            side_l: 0.1,
            cavity_length: 0.037,
            wavelength: 1064e-9,
            rayleigh_range: f64::INFINITY,
            z0: 0.0,
            refractive_n: 2.0,
            temperature: 1.0,
            continuum_factor: DEFAULT_CONTINUUM_FACTOR,
            mode_cutoff_factor: DEFAULT_MODE_CUTOFF_FACTOR,
        };
        p.rayleigh_range = rayleigh_range_for_waist(&p, 90e-6).expect("reference waist is valid");
        p.z0 = max_coupling_z0(&p).expect("reference cavity is valid");
        p
    }

    fn validate_optics(&self) -> Result<()> {
        positive("cavity_length", self.cavity_length)?;
        positive("wavelength", self.wavelength)?;
        if !(self.rayleigh_range > 0.0) {
            return Err(Error::InvalidParameter {
                name: "rayleigh_range",
                message: format!("must be positive, got {}", self.rayleigh_range),
            });
        }
        if sigma(self) < 1 {
            return Err(Error::InvalidParameter {
                name: "wavelength",
                message: "cavity shorter than half a wavelength".into(),
            });
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        positive("rho_m", self.rho_m)?;
        positive("tension_per_length", self.tension_per_length)?;
        positive("thickness_t", self.thickness_t)?;
        positive("side_l", self.side_l)?;
        positive("z0", self.z0)?;
        positive("temperature", self.temperature)?;
        positive("continuum_factor", self.continuum_factor)?;
        positive("mode_cutoff_factor", self.mode_cutoff_factor)?;
        self.validate_optics()?;
        if !(self.refractive_n > 1.0) {
            return Err(Error::InvalidParameter {
                name: "refractive_n",
                message: format!("must exceed 1, got {}", self.refractive_n),
            });
        }
        ratio_at_most("beam_waist", beam_waist(self)?, "side_l", self.side_l)
    }

    /// m = ρ_m L² T / 4.
    pub fn effective_mass(&self) -> f64 {
        0.25 * self.rho_m * self.side_l * self.side_l * self.thickness_t
    }

    pub fn thermal(&self) -> Result<ThermalParams> {
        ThermalParams::new(self.temperature)
    }

    /// Cavity mode at Ω_σ.
    pub fn cavity(&self) -> Result<CavityParams> {
        CavityParams::new(cavity_omega(self)?)
    }
}

/// σ = round(2l/λ_σ).
pub fn sigma(p: &MembraneParams) -> u64 {
    (2.0 * p.cavity_length / p.wavelength).round().max(0.0) as u64
}

/// Ω_σ = σπc/l + (2c/l) arctan(l/2f).
pub fn membrane_cavity_frequency(sigma: u64, p: &MembraneParams) -> Result<f64> {
    if sigma < 1 {
        return Err(Error::InvalidParameter {
            name: "sigma",
            message: "cavity mode index must be >= 1".into(),
        });
    }
    positive("cavity_length", p.cavity_length)?;
    let c = SPEED_OF_LIGHT;
    let l = p.cavity_length;
    Ok(sigma as f64 * PI * c / l + 2.0 * c / l * (l / (2.0 * p.rayleigh_range)).atan())
}

/// Ω_σ at σ = round(2l/λ_σ).
pub fn cavity_omega(p: &MembraneParams) -> Result<f64> {
    p.validate_optics()?;
    membrane_cavity_frequency(sigma(p), p)
}

/// w_σ = √(2fc/Ω_σ).
pub fn beam_waist(p: &MembraneParams) -> Result<f64> {
    Ok((2.0 * p.rayleigh_range * SPEED_OF_LIGHT / cavity_omega(p)?).sqrt())
}

/// Rayleigh range f giving the beam waist `waist`; Ω_σ depends weakly on f,
/// so the relation is iterated to a fixed point.
pub fn rayleigh_range_for_waist(p: &MembraneParams, waist: f64) -> Result<f64> {
    positive("beam_waist", waist)?;
    let mut q = MembraneParams {
        rayleigh_range: f64::INFINITY,
        ..*p
    };
    for _ in 0..50 {
        let f = waist * waist * cavity_omega(&q)? / (2.0 * SPEED_OF_LIGHT);
        if (f - q.rayleigh_range).abs() <= 1e-15 * f {
            return Ok(f);
        }
        q.rayleigh_range = f;
    }
    Ok(q.rayleigh_range)
}

/// Position nearest the cavity midpoint with |sin(2Ω_σz₀/c)| = 1.
pub fn max_coupling_z0(p: &MembraneParams) -> Result<f64> {
    let k = 2.0 * cavity_omega(p)? / SPEED_OF_LIGHT;
    let j = ((k * 0.5 * p.cavity_length - 0.5 * PI) / PI).round();
    Ok((0.5 * PI + j * PI) / k)
}

/// sin(2Ω_σz₀/c).
pub fn position_factor(p: &MembraneParams) -> Result<f64> {
    Ok((2.0 * cavity_omega(p)? * p.z0 / SPEED_OF_LIGHT).sin())
}

/// ω_u = √(8𝓕/ρ_m T w_σ²), ω₁ = π√(𝓕/2m),
/// C = (ħ/𝓕)[(n²−1)Ω_σ T sin(2Ω_σz₀/c)/(2lc)]² (seconds).
pub fn membrane_cutoffs(p: &MembraneParams) -> Result<Cutoffs> {
    p.validate()?;
    let w = beam_waist(p)?;
    let g = coupling_amplitude(p)?;
    Ok(Cutoffs {
        omega_u: (8.0 * p.tension_per_length / (p.rho_m * p.thickness_t * w * w)).sqrt(),
        omega_1: PI * (p.tension_per_length / (2.0 * p.effective_mass())).sqrt(),
        coupling_c: HBAR / p.tension_per_length * (0.5 * g).powi(2),
    })
}

/// (n²−1)TΩ_σ sin(2Ω_σz₀/c)/(lc), 1/m.
fn coupling_amplitude(p: &MembraneParams) -> Result<f64> {
    let omega = cavity_omega(p)?;
    Ok((p.refractive_n.powi(2) - 1.0) * p.thickness_t * omega / (p.cavity_length * SPEED_OF_LIGHT)
        * position_factor(p)?)
}

/// π√(𝓕/4m); mode frequencies are this times √(i_x² + i_y²).
fn frequency_unit(p: &MembraneParams) -> f64 {
    PI * (p.tension_per_length / (4.0 * p.effective_mass())).sqrt()
}

/// `λ²` without the sin(i_xπ/2)sin(i_yπ/2) selection factor.
fn coupled_lambda_sq(omega: f64, m: f64, g: f64, omega_u: f64) -> f64 {
    HBAR / (2.0 * m * omega) * g * g * (-2.0 * (omega / omega_u).powi(2)).exp()
}

/// Mode (i_x, i_y): ω = π√((𝓕/4m)(i_x² + i_y²)),
/// λ = (−1)^σ √(ħ/2mω) (n²−1)TΩ_σ sin(2Ω_σz₀/c)/(lc) · e^{−ω²/ω_u²} sin(i_xπ/2) sin(i_yπ/2).
pub fn membrane_mode(ix: u64, iy: u64, p: &MembraneParams) -> Result<Mode> {
    if ix < 1 || iy < 1 {
        return Err(Error::InvalidParameter {
            name: "ix, iy",
            message: format!("membrane mode indices must be >= 1, got ({ix}, {iy})"),
        });
    }
    let cut = membrane_cutoffs(p)?;
    let g = coupling_amplitude(p)?;
    let omega = frequency_unit(p) * ((ix * ix + iy * iy) as f64).sqrt();
    let sign = if sigma(p) % 2 == 0 { 1.0 } else { -1.0 };
    let lambda = sign
        * coupled_lambda_sq(omega, p.effective_mass(), g, cut.omega_u).sqrt()
        * half_turn_sine(ix)
        * half_turn_sine(iy);
    Ok(Mode { omega, lambda })
}

/// s = 0, Gaussian cutoff, dephasing scaled by the continuum factor.
pub fn membrane_spectral_model(p: &MembraneParams) -> Result<SpectralModel> {
    let cut = membrane_cutoffs(p)?;
    let model = SpectralModel::new(0, cut.coupling_c, cut.omega_1, cut.omega_u, CutoffShape::Gaussian)?
        .with_continuum_factor(p.continuum_factor);
    model.validate()?;
    Ok(model)
}

/// All odd-odd modes with ω ≤ mode_cutoff_factor·ω_u. Degenerate modes
/// (equal i_x² + i_y²) are merged into one mode carrying the summed λ².
pub fn membrane_bath(p: &MembraneParams) -> Result<ModeBath> {
    let cut = membrane_cutoffs(p)?;
    let g = coupling_amplitude(p)?;
    let m = p.effective_mass();
    let unit = frequency_unit(p);
    let r_max = p.mode_cutoff_factor * cut.omega_u / unit;
    let r2_max = (r_max * r_max).floor() as u64;
    let mut shells: Vec<(u64, f64)> = Vec::new();
    let mut ix = 1u64;
    while 2 * ix * ix <= r2_max {
        let mut iy = ix;
        while ix * ix + iy * iy <= r2_max {
            let r2 = ix * ix + iy * iy;
            let omega = unit * (r2 as f64).sqrt();
            let mult = if ix == iy { 1.0 } else { 2.0 };
            shells.push((r2, mult * coupled_lambda_sq(omega, m, g, cut.omega_u)));
            iy += 2;
        }
        ix += 2;
    }
    shells.sort_unstable_by_key(|&(r2, _)| r2);
    let mut modes: Vec<Mode> = Vec::with_capacity(shells.len());
    let mut last = None;
    for (r2, l2) in shells {
        if last == Some(r2) {
            let mode = modes.last_mut().expect("previous shell exists");
            mode.lambda = (mode.lambda * mode.lambda + l2).sqrt();
        } else {
            modes.push(Mode {
                omega: unit * (r2 as f64).sqrt(),
                lambda: l2.sqrt(),
            });
            last = Some(r2);
        }
    }
    ModeBath::new(modes)
}
