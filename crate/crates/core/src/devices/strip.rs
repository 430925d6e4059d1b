//! Elastic strip forming one plate of an LC-circuit capacitor.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::bathmodel::{CutoffShape, SpectralModel};
use crate::constants::HBAR;
use crate::error::{positive, Error, Result};
use crate::exactsum::{CavityParams, Mode, ModeBath, ThermalParams};
use crate::quadrature::{geometric_panels, Integrator};
use crate::specfun::{coth_half, sinc};

/// Default end-point refinement: intermediate dephasing factor relative to the
/// bare continuum integral (2 is the first-order Euler–Maclaurin value).
pub const DEFAULT_REFINEMENT_FACTOR: f64 = 2.5;
/// Default number of strip mode indices i = 1..=N in discrete baths.
pub const DEFAULT_STRIP_MODE_COUNT: usize = 100_000;

/// Strip geometry and material, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripParams {
    /// Mass density ρ_m, kg/m³.
    pub rho_m: f64,
    /// Tension F, N.
    pub tension_f: f64,
    /// Width W, m.
    pub width_w: f64,
    /// Thickness T, m.
    pub thickness_t: f64,
    /// Length L, m.
    pub length_l: f64,
    /// Length ΔL of the metallized (capacitor) section, m.
    pub metallized_dl: f64,
    /// Capacitor gap d, m.
    pub gap_d: f64,
    /// LC-circuit angular frequency Ω, rad/s.
    pub circuit_omega: f64,
    /// Temperature, K.
    pub temperature: f64,
    /// Intermediate dephasing factor; the end-point weight is factor − 1.
    pub refinement_factor: f64,
    /// Mode indices 1..=mode_count go into discrete baths.
    pub mode_count: usize,
}

impl StripParams {
    /// 1 kg/m³·10³, 10 μN, 1 μm × 0.1 μm × 10 cm strip, 10 μm plate, 0.1 μm gap,
    /// Ω/2π = 5 GHz, 50 mK.
    pub fn reference() -> Self {
        Self {
            rho_m: 1.0e3,
            tension_f: 1.0e-5,
            width_w: 1.0e-6,
            thickness_t: 1.0e-7,
            length_l: 0.1,
            metallized_dl: 1.0e-5,
            gap_d: 1.0e-7,
            circuit_omega: 2.0 * PI * 5.0e9,
            temperature: 0.05,
            refinement_factor: DEFAULT_REFINEMENT_FACTOR,
            mode_count: DEFAULT_STRIP_MODE_COUNT,
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("rho_m", self.rho_m)?;
        positive("tension_f", self.tension_f)?;
        positive("width_w", self.width_w)?;
        positive("thickness_t", self.thickness_t)?;
        positive("length_l", self.length_l)?;
        positive("metallized_dl", self.metallized_dl)?;
        positive("gap_d", self.gap_d)?;
        positive("circuit_omega", self.circuit_omega)?;
        positive("temperature", self.temperature)?;
        ratio_at_most("thickness_t", self.thickness_t, "width_w", self.width_w)?;
        ratio_at_most("width_w", self.width_w, "length_l", self.length_l)?;
        ratio_at_most(
            "gap_d",
            self.gap_d,
            "min(width_w, metallized_dl)",
            self.width_w.min(self.metallized_dl),
        )?;
        if !(self.refinement_factor >= 1.0) || !self.refinement_factor.is_finite() {
            return Err(Error::InvalidParameter {
                name: "refinement_factor",
                message: format!("must be >= 1, got {}", self.refinement_factor),
            });
        }
        if self.mode_count == 0 {
            return Err(Error::InvalidParameter {
                name: "mode_count",
                message: "must be at least 1".into(),
            });
        }
        Ok(())
    }

    /// m = ρ_m W T L / 2.
    pub fn effective_mass(&self) -> f64 {
        0.5 * self.rho_m * self.width_w * self.thickness_t * self.length_l
    }

    pub fn thermal(&self) -> Result<ThermalParams> {
        ThermalParams::new(self.temperature)
    }

    pub fn cavity(&self) -> Result<CavityParams> {
        CavityParams::new(self.circuit_omega)
    }
}

pub(crate) fn ratio_at_most(small: &'static str, a: f64, large: &str, b: f64) -> Result<()> {
    if a / b > 0.1 * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter {
            name: small,
            message: format!("{small}/{large} = {:e} exceeds the bound 0.1", a / b),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cutoffs {
    pub omega_u: f64,
    pub omega_1: f64,
    pub coupling_c: f64,
}

/// ω_u = (2/ΔL)√(FL/2m), ω₁ = π√(F/2mL), C = ħ/(8d²√(Fρ_m W T)) (seconds).
pub fn strip_cutoffs(p: &StripParams) -> Result<Cutoffs> {
    p.validate()?;
    let m = p.effective_mass();
    Ok(Cutoffs {
        omega_u: 2.0 / p.metallized_dl * (p.tension_f * p.length_l / (2.0 * m)).sqrt(),
        omega_1: PI * (p.tension_f / (2.0 * m * p.length_l)).sqrt(),
        coupling_c: HBAR / (8.0 * p.gap_d * p.gap_d * (p.tension_f * p.rho_m * p.width_w * p.thickness_t).sqrt()),
    })
}

/// sin(πi/2) evaluated exactly for integer i.
pub(crate) fn half_turn_sine(i: u64) -> f64 {
    match i % 4 {
        1 => 1.0,
        3 => -1.0,
        _ => 0.0,
    }
}

fn mode_with(i: u64, p: &StripParams, cut: &Cutoffs) -> Mode {
    let m = p.effective_mass();
    let omega = i as f64 * cut.omega_1;
    let lambda = -1.0 / (2.0 * p.gap_d) * (HBAR / (2.0 * m * omega)).sqrt() * half_turn_sine(i) * sinc(omega / cut.omega_u);
    Mode { omega, lambda }
}

/// Mode i ≥ 1: ωᵢ = πi√(F/2mL), λᵢ = −(1/2d)√(ħ/2mωᵢ) sin(πi/2) sinc(ωᵢ/ω_u).
pub fn strip_mode(i: u64, p: &StripParams) -> Result<Mode> {
    if i < 1 {
        return Err(Error::InvalidParameter {
            name: "i",
            message: "strip mode index must be >= 1".into(),
        });
    }
    Ok(mode_with(i, p, &strip_cutoffs(p)?))
}

/// Discrete bath of the coupled (odd-index) modes among i = 1..=mode_count.
pub fn strip_bath(p: &StripParams) -> Result<ModeBath> {
    let cut = strip_cutoffs(p)?;
    let modes = (1..=p.mode_count as u64)
        .step_by(2)
        .map(|i| mode_with(i, p, &cut))
        .collect();
    ModeBath::new(modes)
}

/// s = −1, sinc² cutoff, end-point weight `refinement_factor − 1`.
pub fn strip_spectral_model(p: &StripParams) -> Result<SpectralModel> {
    let cut = strip_cutoffs(p)?;
    let model = SpectralModel::new(-1, cut.coupling_c, cut.omega_1, cut.omega_u, CutoffShape::SincSquared)?
        .with_boundary_weight(p.refinement_factor - 1.0);
    model.validate()?;
    Ok(model)
}

/// Odd terms summed one by one before the validity sum switches to an integral.
const VALIDITY_DIRECT_TERMS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripValidity {
    /// Σᵢ (ħ/8mωᵢd²) sin²(πi/2) sinc²(ωᵢ/ω_u) coth(βħωᵢ/2).
    pub lhs: f64,
    /// High-temperature length bound 16βd²F, m.
    pub max_length: f64,
    pub ok: bool,
}

/// Weak-coupling condition on the strip-induced frequency fluctuations.
pub fn strip_validity(p: &StripParams) -> Result<StripValidity> {
    let lhs = validity_sum(p, VALIDITY_DIRECT_TERMS)?;
    let thermal = p.thermal()?;
    Ok(StripValidity {
        lhs,
        max_length: 16.0 * thermal.beta() * p.gap_d * p.gap_d * p.tension_f,
        ok: lhs <= 0.1,
    })
}

fn validity_sum(p: &StripParams, direct_terms: u64) -> Result<f64> {
    let cut = strip_cutoffs(p)?;
    let thermal = p.thermal()?;
    let m = p.effective_mass();
    let prefactor = HBAR / (8.0 * m * p.gap_d * p.gap_d);
    let bh = thermal.beta_hbar();
    let term = |omega: f64| -> Result<f64> {
        let s = sinc(omega / cut.omega_u);
        Ok(prefactor / omega * s * s * coth_half(bh * omega)?)
    };
    let i_max = (40.0 * cut.omega_u / cut.omega_1).ceil() as u64;
    let i_direct = i_max.min(2 * direct_terms - 1);
    let mut acc = crate::sum::NeumaierSum::new();
    for i in (1..=i_direct).step_by(2) {
        acc.add(term(i as f64 * cut.omega_1)?);
    }
    if i_direct < i_max {
        // odd i spaced 2ω₁ apart: the rest is a midpoint sum of a function
        // that only varies on the scale ω_u
        let a = (i_direct + 1) as f64 * cut.omega_1;
        let b = (i_max + 1) as f64 * cut.omega_1;
        let tail = Integrator::new(1e-10).integrate(
            |w: f64| term(w).unwrap_or(f64::NAN),
            &geometric_panels(a, b, cut.omega_u),
        )?;
        acc.add(tail.value / (2.0 * cut.omega_1));
    }
    Ok(acc.value())
}
