//! Continuum bath models `π Σ λᵢ² f(ωᵢ) ≈ C ∫_{ω₁}^∞ ω^s f(ω) cutoff(ω) dω`,
//! their closed forms for the exponential cutoff, the leading-order
//! asymptotics, and a quadrature oracle valid for every cutoff shape.

mod asymptotic;
mod closed;
mod integral;

pub use asymptotic::{
    asymptotic_exponent, long_time_dephase_plateau, period_average, subleading_oscillation, Regime,
};
pub use closed::{dephase_closed_high_t, kerr_constant_closed, phase_closed};
pub use integral::spectral_integral_quadrature;

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exactsum::{CavityParams, ExponentBreakdown, Mode, ModeBath, ThermalParams};
use crate::specfun::sinc;

/// Upper-cutoff profile multiplying `C ω^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutoffShape {
    /// `e^{−ω/ω_u}`
    Exponential,
    /// `sinc²(ω/ω_u)`
    #[serde(rename = "sinc2", alias = "sinc_squared")]
    SincSquared,
    /// `e^{−2ω²/ω_u²}`
    Gaussian,
}

impl CutoffShape {
    pub fn name(&self) -> &'static str {
        match self {
            CutoffShape::Exponential => "exponential",
            CutoffShape::SincSquared => "sinc2",
            CutoffShape::Gaussian => "gaussian",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "exponential" => Some(CutoffShape::Exponential),
            "sinc2" | "sinc_squared" => Some(CutoffShape::SincSquared),
            "gaussian" => Some(CutoffShape::Gaussian),
            _ => None,
        }
    }
}

/// Continuum description of a bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralModel {
    /// Spectral exponent, one of 1, 0, −1.
    pub s: i32,
    /// Coupling strength C, units s^{−s}.
    pub coupling_c: f64,
    /// Lower cutoff ω₁, rad/s.
    pub omega_1: f64,
    /// Upper cutoff ω_u, rad/s.
    pub omega_u: f64,
    pub cutoff: CutoffShape,
    /// Weight w of the discrete end-point term `w·C·f(ω₁)` added to the integral.
    pub boundary_weight: Option<f64>,
    /// Multiplies every dephasing prediction (1 for a pure continuum).
    pub continuum_factor: f64,
}

impl SpectralModel {
    pub fn new(s: i32, coupling_c: f64, omega_1: f64, omega_u: f64, cutoff: CutoffShape) -> Result<Self> {
        let m = Self {
            s,
            coupling_c,
            omega_1,
            omega_u,
            cutoff,
            boundary_weight: None,
            continuum_factor: 1.0,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_boundary_weight(mut self, w: f64) -> Self {
        self.boundary_weight = Some(w);
        self
    }

    pub fn with_continuum_factor(mut self, factor: f64) -> Self {
        self.continuum_factor = factor;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.s, -1..=1) {
            return Err(Error::InvalidParameter {
                name: "s",
                message: format!("spectral exponent must be 1, 0 or -1, got {}", self.s),
            });
        }
        crate::error::positive("coupling_c", self.coupling_c)?;
        crate::error::positive("omega_1", self.omega_1)?;
        crate::error::positive("omega_u", self.omega_u)?;
        if self.omega_1 / self.omega_u > 0.1 {
            return Err(Error::InvalidParameter {
                name: "omega_1",
                message: format!(
                    "omega_1/omega_u must be <= 0.1, got {:e}",
                    self.omega_1 / self.omega_u
                ),
            });
        }
        if let Some(w) = self.boundary_weight {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidParameter {
                    name: "boundary_weight",
                    message: format!("must be finite and non-negative, got {w}"),
                });
            }
        }
        crate::error::positive("continuum_factor", self.continuum_factor)?;
        Ok(())
    }

    /// ω₁/ω_u.
    pub fn epsilon(&self) -> f64 {
        self.omega_1 / self.omega_u
    }

    pub fn cutoff_value(&self, omega: f64) -> f64 {
        let x = omega / self.omega_u;
        match self.cutoff {
            CutoffShape::Exponential => (-x).exp(),
            CutoffShape::SincSquared => sinc(x).powi(2),
            CutoffShape::Gaussian => (-2.0 * x * x).exp(),
        }
    }

    /// `C ω^s cutoff(ω)`.
    pub fn density(&self, omega: f64) -> f64 {
        self.coupling_c * omega.powi(self.s) * self.cutoff_value(omega)
    }

    /// Harmonic discretization `ωᵢ = iω₁`, `λᵢ² = C ωᵢ^s cutoff(ωᵢ) ω₁/π`, for
    /// all `ωᵢ ≤ max_factor·ω_u`. Its rectangle-rule sum reproduces the
    /// continuum integral.
    pub fn discretize(&self, max_factor: f64) -> Result<ModeBath> {
        self.validate()?;
        let count = (max_factor * self.omega_u / self.omega_1).floor() as usize;
        if count == 0 {
            return Err(Error::InvalidParameter {
                name: "max_mode_factor",
                message: "no modes below the truncation frequency".into(),
            });
        }
        let modes = (1..=count)
            .map(|i| {
                let omega = i as f64 * self.omega_1;
                Mode {
                    omega,
                    lambda: (self.density(omega) * self.omega_1 / PI).sqrt(),
                }
            })
            .collect();
        ModeBath::new(modes)
    }
}

/// Weight f(ω) multiplying the spectral density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    /// `1/ω` (Kerr term)
    InvOmega,
    /// `sin(ωt)/ω²` (oscillatory phase)
    Osc,
    /// `coth(βħω/2) sin²(ωt/2)/ω²` (dephasing)
    DephFull,
    /// `(2/βħω) sin²(ωt/2)/ω²` (high-temperature dephasing)
    DephHighT,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightFunction {
    pub kind: WeightKind,
    pub t: f64,
    pub beta_hbar: f64,
}

impl WeightFunction {
    pub fn inv_omega() -> Self {
        Self {
            kind: WeightKind::InvOmega,
            t: 0.0,
            beta_hbar: 1.0,
        }
    }

    pub fn osc(t: f64) -> Self {
        Self {
            kind: WeightKind::Osc,
            t,
            beta_hbar: 1.0,
        }
    }

    pub fn deph_full(t: f64, beta_hbar: f64) -> Self {
        Self {
            kind: WeightKind::DephFull,
            t,
            beta_hbar,
        }
    }

    pub fn deph_high_t(t: f64, beta_hbar: f64) -> Self {
        Self {
            kind: WeightKind::DephHighT,
            t,
            beta_hbar,
        }
    }

    pub fn is_dephasing(&self) -> bool {
        matches!(self.kind, WeightKind::DephFull | WeightKind::DephHighT)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t >= 0.0) || !self.t.is_finite() {
            return Err(Error::Domain(format!("weight time must be non-negative, got {}", self.t)));
        }
        if self.is_dephasing() {
            crate::error::positive("beta_hbar", self.beta_hbar)?;
        }
        Ok(())
    }

    pub fn eval(&self, omega: f64) -> f64 {
        match self.kind {
            WeightKind::InvOmega => 1.0 / omega,
            WeightKind::Osc => (omega * self.t).sin() / (omega * omega),
            WeightKind::DephFull => {
                let s = (0.5 * omega * self.t).sin();
                crate::specfun::coth_half(self.beta_hbar * omega).unwrap_or(f64::INFINITY) * s * s / (omega * omega)
            }
            WeightKind::DephHighT => {
                let s = (0.5 * omega * self.t).sin();
                2.0 / (self.beta_hbar * omega) * s * s / (omega * omega)
            }
        }
    }
}

/// Which dephasing weight a continuum evaluation uses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DephasingWeight {
    #[default]
    Full,
    HighTemperature,
}

fn pair_factors(n: usize, n_prime: usize) -> (f64, f64) {
    let diff = n as f64 - n_prime as f64;
    ((n + n_prime + 1) as f64 * diff, diff * diff)
}

/// All four exponent terms from the quadrature oracle.
pub fn quadrature_exponent(
    model: &SpectralModel,
    cavity: &CavityParams,
    thermal: &ThermalParams,
    n: usize,
    n_prime: usize,
    t: f64,
    dephasing: DephasingWeight,
) -> Result<ExponentBreakdown> {
    if n == n_prime {
        return Ok(ExponentBreakdown::default());
    }
    let (k, d2) = pair_factors(n, n_prime);
    let w2 = cavity.omega().powi(2);
    let q_kerr = spectral_integral_quadrature(model, &WeightFunction::inv_omega())?;
    let q_osc = spectral_integral_quadrature(model, &WeightFunction::osc(t))?;
    let deph_weight = match dephasing {
        DephasingWeight::Full => WeightFunction::deph_full(t, thermal.beta_hbar()),
        DephasingWeight::HighTemperature => WeightFunction::deph_high_t(t, thermal.beta_hbar()),
    };
    let q_deph = spectral_integral_quadrature(model, &deph_weight)?;
    Ok(ExponentBreakdown {
        free_phase: -cavity.omega() * (n as f64 - n_prime as f64) * t,
        kerr_phase: t * k * w2 * q_kerr / PI,
        osc_phase: -k * w2 * q_osc / PI,
        dephase: -2.0 * d2 * w2 * q_deph / PI,
    })
}

/// All four exponent terms from the exponential-cutoff closed forms.
pub fn closed_form_exponent(
    model: &SpectralModel,
    cavity: &CavityParams,
    thermal: &ThermalParams,
    n: usize,
    n_prime: usize,
    t: f64,
) -> Result<ExponentBreakdown> {
    let (kerr_phase, osc_phase) = phase_closed(model, cavity, n, n_prime, t)?;
    let dephase = dephase_closed_high_t(model, cavity, thermal, n, n_prime, t)?;
    Ok(ExponentBreakdown {
        free_phase: -cavity.omega() * (n as f64 - n_prime as f64) * t,
        kerr_phase,
        osc_phase,
        dephase,
    })
}
