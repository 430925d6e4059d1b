//! One interface over the four ways of evaluating the exponent.

use std::f64::consts::PI;

use super::config::{Evaluation, ModelSpec};
use crate::bathmodel::{
    asymptotic_exponent, dephase_closed_high_t, kerr_constant_closed, phase_closed, spectral_integral_quadrature,
    DephasingWeight, Regime, SpectralModel, WeightFunction,
};
use crate::devices::DeviceSpec;
use crate::error::Result;
use crate::exactsum::{breakdown_from_sums, BathEvaluator, BathSums, CavityParams, ExponentBreakdown, ThermalParams};

/// Produces `BathSums` at any time; every evaluation method reduces to the
/// three sums `Σ(Ωλ)²/ω`, `Σ(Ωλ/ω)² sin ωt`, `Σ(Ωλ/ω)² coth sin²(ωt/2)` or their
/// continuum counterparts.
#[derive(Debug, Clone)]
pub enum Engine {
    Discrete(Box<BathEvaluator>, f64),
    Quadrature {
        model: SpectralModel,
        cavity: CavityParams,
        thermal: ThermalParams,
        weight: DephasingWeight,
        kerr: f64,
    },
    ClosedForm {
        model: SpectralModel,
        cavity: CavityParams,
        thermal: ThermalParams,
        kerr: f64,
    },
    Asymptotic {
        model: SpectralModel,
        cavity: CavityParams,
        thermal: ThermalParams,
    },
}

/// Discrete bath for a model: the device's own modes, or the harmonic
/// discretization of a generic continuum.
pub fn discrete_bath(spec: &ModelSpec) -> Result<crate::exactsum::ModeBath> {
    match spec {
        ModelSpec::Generic {
            model, max_mode_factor, ..
        } => model.discretize(*max_mode_factor),
        ModelSpec::Device(d) => d.discrete_bath(),
    }
}

impl Engine {
    pub fn new(spec: &ModelSpec, evaluation: Evaluation, weight: DephasingWeight) -> Result<Self> {
        let model = spec.spectral_model()?;
        let cavity = spec.cavity()?;
        let thermal = spec.thermal()?;
        let w2 = cavity.omega().powi(2);
        Ok(match evaluation {
            Evaluation::DiscreteExact => {
                let bath = discrete_bath(spec)?;
                Engine::Discrete(Box::new(BathEvaluator::new(&bath, &cavity, &thermal)?), cavity.omega())
            }
            Evaluation::Quadrature => Engine::Quadrature {
                model,
                cavity,
                thermal,
                weight,
                kerr: w2 * spectral_integral_quadrature(&model, &WeightFunction::inv_omega())? / PI,
            },
            Evaluation::ClosedForm => Engine::ClosedForm {
                model,
                cavity,
                thermal,
                kerr: -kerr_constant_closed(&model, &cavity)?,
            },
            Evaluation::Asymptotic => Engine::Asymptotic { model, cavity, thermal },
        })
    }

    /// Engine for a device with the given evaluation.
    pub fn for_device(device: &DeviceSpec, evaluation: Evaluation) -> Result<Self> {
        Self::new(&ModelSpec::Device(*device), evaluation, DephasingWeight::Full)
    }

    pub fn cavity_omega(&self) -> f64 {
        match self {
            Engine::Discrete(_, omega) => *omega,
            Engine::Quadrature { cavity, .. } | Engine::ClosedForm { cavity, .. } | Engine::Asymptotic { cavity, .. } => {
                cavity.omega()
            }
        }
    }

    /// `−Σ(Ωλ)²/ω` or its continuum value, rad/s.
    pub fn kerr_constant(&self) -> Option<f64> {
        match self {
            Engine::Discrete(e, _) => Some(-e.kerr_sum()),
            Engine::Quadrature { kerr, .. } | Engine::ClosedForm { kerr, .. } => Some(-kerr),
            Engine::Asymptotic { .. } => None,
        }
    }

    pub fn sums(&self, t: f64) -> Result<BathSums> {
        match self {
            Engine::Discrete(e, _) => e.sums(t),
            Engine::Quadrature {
                model,
                cavity,
                thermal,
                weight,
                kerr,
            } => {
                let w2 = cavity.omega().powi(2);
                let deph_weight = match weight {
                    DephasingWeight::Full => WeightFunction::deph_full(t, thermal.beta_hbar()),
                    DephasingWeight::HighTemperature => WeightFunction::deph_high_t(t, thermal.beta_hbar()),
                };
                Ok(BathSums {
                    kerr: *kerr,
                    osc: w2 * spectral_integral_quadrature(model, &WeightFunction::osc(t))? / PI,
                    deph: w2 * spectral_integral_quadrature(model, &deph_weight)? / PI,
                })
            }
            // the pair (1, 0) has (n+n′+1)(n−n′) = 2 and (n−n′)² = 1
            Engine::ClosedForm {
                model,
                cavity,
                thermal,
                kerr,
            } => {
                let (_, osc) = phase_closed(model, cavity, 1, 0, t)?;
                Ok(BathSums {
                    kerr: *kerr,
                    osc: -0.5 * osc,
                    deph: -0.5 * dephase_closed_high_t(model, cavity, thermal, 1, 0, t)?,
                })
            }
            Engine::Asymptotic { model, cavity, thermal } => {
                let regime = if t * model.omega_1 < 1.0 {
                    Regime::Intermediate
                } else {
                    Regime::Long
                };
                let (net, deph) = asymptotic_exponent(model, cavity, thermal, 1, 0, t, regime);
                Ok(BathSums {
                    kerr: if t > 0.0 { 0.5 * net / t } else { 0.0 },
                    osc: 0.0,
                    deph: -0.5 * deph,
                })
            }
        }
    }

    pub fn exponent(&self, n: usize, n_prime: usize, t: f64) -> Result<ExponentBreakdown> {
        Ok(breakdown_from_sums(&self.sums(t)?, self.cavity_omega(), n, n_prime, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bathmodel::{closed_form_exponent, quadrature_exponent, CutoffShape};
    use approx::assert_relative_eq;

    fn generic() -> ModelSpec {
        ModelSpec::Generic {
            model: SpectralModel::new(0, 1.0, 1e-3, 1.0, CutoffShape::Exponential).unwrap(),
            cavity: CavityParams::new(1.0).unwrap(),
            thermal: ThermalParams::from_beta_hbar(10.0).unwrap(),
            max_mode_factor: 40.0,
        }
    }

    #[test]
    fn engines_reproduce_direct_calls() {
        let spec = generic();
        let ModelSpec::Generic { model, cavity, thermal, .. } = spec else {
            unreachable!()
        };
        let t = 30.0;
        let closed = Engine::new(&spec, Evaluation::ClosedForm, DephasingWeight::Full).unwrap();
        let a = closed.exponent(3, 1, t).unwrap();
        let b = closed_form_exponent(&model, &cavity, &thermal, 3, 1, t).unwrap();
        assert_relative_eq!(a.kerr_phase, b.kerr_phase, max_relative = 1e-14);
        assert_relative_eq!(a.osc_phase, b.osc_phase, max_relative = 1e-14);
        assert_relative_eq!(a.dephase, b.dephase, max_relative = 1e-14);
        let quad = Engine::new(&spec, Evaluation::Quadrature, DephasingWeight::HighTemperature).unwrap();
        let c = quad.exponent(3, 1, t).unwrap();
        let d = quadrature_exponent(&model, &cavity, &thermal, 3, 1, t, DephasingWeight::HighTemperature).unwrap();
        assert_relative_eq!(c.dephase, d.dephase, max_relative = 1e-14);
        assert_relative_eq!(c.osc_phase, d.osc_phase, max_relative = 1e-14);
        let asym = Engine::new(&spec, Evaluation::Asymptotic, DephasingWeight::Full).unwrap();
        let e = asym.exponent(2, 0, t).unwrap();
        let (net, deph) = asymptotic_exponent(&model, &cavity, &thermal, 2, 0, t, Regime::Intermediate);
        assert_relative_eq!(e.net_phase(), net, max_relative = 1e-14);
        assert_relative_eq!(e.dephase, deph, max_relative = 1e-14);
    }
}
