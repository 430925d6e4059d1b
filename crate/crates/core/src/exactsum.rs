//! Brute-force evaluation of the cavity-coherence exponent from an explicit
//! list of bath modes, and evolution of a truncated Fock-basis density matrix.
//!
//! For a Fock pair (n, n′) the coherence `c_{nn′}` picks up
//! `exp(i·free + i·kerr + i·osc + dephase)` with
//!
//! ```text
//! free    = −Ω(n−n′)t
//! kerr    =  t(n+n′+1)(n−n′) Σ (Ωλᵢ)²/ωᵢ
//! osc     = −(n+n′+1)(n−n′) Σ (Ωλᵢ/ωᵢ)² sin(ωᵢt)
//! dephase = −2(n−n′)² Σ (Ωλᵢ/ωᵢ)² coth(βħωᵢ/2) sin²(ωᵢt/2)
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::constants::{HBAR, K_BOLTZMANN};
use crate::error::{positive, Error, Result};
use crate::specfun::coth_half;
use crate::sum::NeumaierSum;

/// Bath temperature and the derived thermal time βħ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams {
    temperature: f64,
    beta_hbar: f64,
}

impl ThermalParams {
    pub fn new(temperature: f64) -> Result<Self> {
        let temperature = positive("temperature", temperature)?;
        Ok(Self {
            temperature,
            beta_hbar: HBAR / (K_BOLTZMANN * temperature),
        })
    }

    /// Build from βħ in seconds (handy for dimensionless studies).
    pub fn from_beta_hbar(beta_hbar: f64) -> Result<Self> {
        let beta_hbar = positive("beta_hbar", beta_hbar)?;
        Ok(Self {
            temperature: HBAR / (K_BOLTZMANN * beta_hbar),
            beta_hbar,
        })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn beta_hbar(&self) -> f64 {
        self.beta_hbar
    }

    /// β = 1/(k_B T) in 1/J.
    pub fn beta(&self) -> f64 {
        1.0 / (K_BOLTZMANN * self.temperature)
    }
}

/// The cavity mode: angular frequency Ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityParams {
    omega_cavity: f64,
}

impl CavityParams {
    pub fn new(omega_cavity: f64) -> Result<Self> {
        Ok(Self {
            omega_cavity: positive("omega_cavity", omega_cavity)?,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega_cavity
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    /// Angular frequency ωᵢ, rad/s.
    pub omega: f64,
    /// Dimensionless coupling λᵢ.
    pub lambda: f64,
}

/// Discrete bath, sorted by ascending frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBath {
    modes: Vec<Mode>,
}

impl ModeBath {
    pub fn new(mut modes: Vec<Mode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidParameter {
                name: "modes",
                message: "bath needs at least one mode".into(),
            });
        }
        for m in &modes {
            positive("omega_i", m.omega)?;
            if !m.lambda.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "lambda_i",
                    message: format!("must be finite, got {}", m.lambda),
                });
            }
        }
        modes.sort_by(|a, b| a.omega.total_cmp(&b.omega));
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }
}

/// The four exponent terms for one Fock pair at one time.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ExponentBreakdown {
    pub free_phase: f64,
    pub kerr_phase: f64,
    pub osc_phase: f64,
    pub dephase: f64,
}

impl ExponentBreakdown {
    /// Bath-induced phase, kerr + osc.
    pub fn net_phase(&self) -> f64 {
        self.kerr_phase + self.osc_phase
    }

    /// Full complex exponent `i(free + kerr + osc) + dephase`.
    pub fn exponent(&self) -> Complex64 {
        Complex64::new(self.dephase, self.free_phase + self.kerr_phase + self.osc_phase)
    }
}

/// Bath sums at one time, Ω² included:
/// `kerr = Σ(Ωλ)²/ω`, `osc = Σ(Ωλ/ω)² sin ωt`, `deph = Σ(Ωλ/ω)² coth sin²(ωt/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSums {
    pub kerr: f64,
    pub osc: f64,
    pub deph: f64,
}

/// Precomputed per-mode weights for repeated evaluation of one bath.
#[derive(Debug, Clone)]
pub struct BathEvaluator {
    omega_cavity: f64,
    omegas: Vec<f64>,
    weights: Vec<f64>,
    thermal_weights: Vec<f64>,
    kerr: f64,
}

impl BathEvaluator {
    pub fn new(bath: &ModeBath, cavity: &CavityParams, thermal: &ThermalParams) -> Result<Self> {
        let big_omega = cavity.omega();
        let mut omegas = Vec::with_capacity(bath.len());
        let mut weights = Vec::with_capacity(bath.len());
        let mut thermal_weights = Vec::with_capacity(bath.len());
        let mut kerr = NeumaierSum::new();
        for m in bath.modes() {
            let g = big_omega * m.lambda / m.omega;
            let w = g * g;
            omegas.push(m.omega);
            weights.push(w);
            thermal_weights.push(w * coth_half(thermal.beta_hbar() * m.omega)?);
            kerr.add(w * m.omega);
        }
        Ok(Self {
            omega_cavity: big_omega,
            omegas,
            weights,
            thermal_weights,
            kerr: kerr.value(),
        })
    }

    /// `Σ(Ωλᵢ)²/ωᵢ`; the Kerr constant is its negative.
    pub fn kerr_sum(&self) -> f64 {
        self.kerr
    }

    pub fn sums(&self, t: f64) -> Result<BathSums> {
        check_time(t)?;
        let mut osc = NeumaierSum::new();
        let mut deph = NeumaierSum::new();
        for ((&w, &tw), &omega) in self.weights.iter().zip(&self.thermal_weights).zip(&self.omegas) {
            let (s_half, c_half) = (0.5 * omega * t).sin_cos();
            osc.add(w * 2.0 * s_half * c_half);
            deph.add(tw * s_half * s_half);
        }
        Ok(BathSums {
            kerr: self.kerr,
            osc: osc.value(),
            deph: deph.value(),
        })
    }

    /// Thermal sum `Σ(Ωλ/ω)² coth sin²(ωt/2)` only.
    pub fn dephasing_sum(&self, t: f64) -> Result<f64> {
        check_time(t)?;
        let mut deph = NeumaierSum::new();
        for (&tw, &omega) in self.thermal_weights.iter().zip(&self.omegas) {
            let s = (0.5 * omega * t).sin();
            deph.add(tw * s * s);
        }
        Ok(deph.value())
    }

    pub fn exponent(&self, n: usize, n_prime: usize, t: f64) -> Result<ExponentBreakdown> {
        let sums = self.sums(t)?;
        Ok(breakdown_from_sums(&sums, self.omega_cavity, n, n_prime, t))
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be finite and non-negative, got {t}")))
    }
}

/// Assemble the four terms from precomputed sums.
pub fn breakdown_from_sums(sums: &BathSums, omega_cavity: f64, n: usize, n_prime: usize, t: f64) -> ExponentBreakdown {
    if n == n_prime {
        return ExponentBreakdown::default();
    }
    let diff = n as f64 - n_prime as f64;
    let k = (n + n_prime + 1) as f64 * diff;
    ExponentBreakdown {
        free_phase: -omega_cavity * diff * t,
        kerr_phase: t * k * sums.kerr,
        osc_phase: -k * sums.osc,
        dephase: -2.0 * diff * diff * sums.deph,
    }
}

/// Exact exponent for the pair (n, n′) at time t ≥ 0.
pub fn exponent_discrete(
    bath: &ModeBath,
    cavity: &CavityParams,
    thermal: &ThermalParams,
    n: usize,
    n_prime: usize,
    t: f64,
) -> Result<ExponentBreakdown> {
    BathEvaluator::new(bath, cavity, thermal)?.exponent(n, n_prime, t)
}

/// Induced Kerr constant `Λ = −Σ(Ωλᵢ)²/ωᵢ`, rad/s.
pub fn kerr_constant_discrete(bath: &ModeBath, cavity: &CavityParams) -> f64 {
    let big_omega = cavity.omega();
    let s: NeumaierSum = bath
        .modes()
        .iter()
        .map(|m| (big_omega * m.lambda).powi(2) / m.omega)
        .collect();
    -s.value()
}

/// Complex Hermitian, unit-trace, positive semidefinite matrix on Fock levels `0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    entries: DMatrix<Complex64>,
}

impl FockDensityMatrix {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-12;
    pub const POSITIVITY_TOL: f64 = 1e-10;

    /// Validating constructor.
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() == 0 || entries.nrows() != entries.ncols() {
            return Err(Error::DensityMatrix(format!(
                "must be square with dim ≥ 1, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let rho = Self { entries };
        let herm = rho.hermiticity_error();
        if herm > Self::HERMITIAN_TOL {
            return Err(Error::DensityMatrix(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > Self::TRACE_TOL || tr.im.abs() > Self::TRACE_TOL {
            return Err(Error::DensityMatrix(format!("trace is {tr}, expected 1")));
        }
        let min_eig = rho.min_eigenvalue();
        if min_eig < -Self::POSITIVITY_TOL {
            return Err(Error::DensityMatrix(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(rho)
    }

    /// Pure state from (unnormalized) amplitudes.
    pub fn from_pure_state(amplitudes: &[Complex64]) -> Result<Self> {
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if amplitudes.is_empty() || !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::DensityMatrix("pure state needs a non-zero amplitude vector".into()));
        }
        let dim = amplitudes.len();
        let entries = DMatrix::from_fn(dim, dim, |i, j| amplitudes[i] * amplitudes[j].conj() / norm2);
        Self::new(entries)
    }

    /// Mixture of Fock states with the given (unnormalized, non-negative) weights.
    pub fn diagonal(weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if weights.is_empty() || weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) || !(total > 0.0) {
            return Err(Error::DensityMatrix("diagonal weights must be non-negative with a positive sum".into()));
        }
        let dim = weights.len();
        let entries = DMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                Complex64::new(weights[i] / total, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self::new(entries)
    }

    /// Equal-weight pure superposition of the listed Fock levels in dimension `dim`.
    pub fn superposition(levels: &[usize], dim: usize) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::DensityMatrix("superposition needs at least one level".into()));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for &l in levels {
            if l >= dim {
                return Err(Error::FockIndex { n: l, n_prime: l, dim });
            }
            amps[l] = Complex64::new(1.0, 0.0);
        }
        Self::from_pure_state(&amps)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn entry(&self, n: usize, n_prime: usize) -> Result<Complex64> {
        self.check_index(n, n_prime)?;
        Ok(self.entries[(n, n_prime)])
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// max |c_{nn′} − conj(c_{n′n})|.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn check_index(&self, n: usize, n_prime: usize) -> Result<()> {
        let dim = self.dim();
        if n >= dim || n_prime >= dim {
            Err(Error::FockIndex { n, n_prime, dim })
        } else {
            Ok(())
        }
    }
}

/// Evolve with a prepared evaluator (bath sums computed once for all pairs).
pub fn evolve_with(rho0: &FockDensityMatrix, evaluator: &BathEvaluator, t: f64) -> Result<FockDensityMatrix> {
    let sums = evaluator.sums(t)?;
    let dim = rho0.dim();
    let mut out = rho0.entries.clone();
    for n in 0..dim {
        for m in (n + 1)..dim {
            let b = breakdown_from_sums(&sums, evaluator.omega_cavity, n, m, t);
            let c = rho0.entries[(n, m)] * b.exponent().exp();
            out[(n, m)] = c;
            out[(m, n)] = c.conj();
        }
    }
    Ok(FockDensityMatrix { entries: out })
}

/// `c_{nn′}(t) = c_{nn′}(0)·exp(i(free + kerr + osc) + dephase)`.
pub fn evolve_density_matrix(
    rho0: &FockDensityMatrix,
    bath: &ModeBath,
    cavity: &CavityParams,
    thermal: &ThermalParams,
    t: f64,
) -> Result<FockDensityMatrix> {
    evolve_with(rho0, &BathEvaluator::new(bath, cavity, thermal)?, t)
}

/// `|c_{nn′}|`.
pub fn coherence_magnitude(rho: &FockDensityMatrix, n: usize, n_prime: usize) -> Result<f64> {
    Ok(rho.entry(n, n_prime)?.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn harmonic_bath(n: usize, omega_1: f64) -> ModeBath {
        ModeBath::new(
            (1..=n)
                .map(|i| Mode {
                    omega: i as f64 * omega_1,
                    lambda: 1e-3 / i as f64,
                })
                .collect(),
        )
        .unwrap()
    }

    fn unit_cavity() -> CavityParams {
        CavityParams::new(1.0).unwrap()
    }

    #[test]
    fn diagonal_pair_has_no_exponent() {
        let bath = harmonic_bath(10, 1.0);
        let th = ThermalParams::from_beta_hbar(0.1).unwrap();
        let b = exponent_discrete(&bath, &unit_cavity(), &th, 3, 3, 7.3).unwrap();
        assert_eq!(b, ExponentBreakdown::default());
    }

    #[test]
    fn single_mode_full_period_vanishes() {
        let omega = 3.0;
        let bath = ModeBath::new(vec![Mode { omega, lambda: 0.2 }]).unwrap();
        let th = ThermalParams::from_beta_hbar(1.0).unwrap();
        let b = exponent_discrete(&bath, &unit_cavity(), &th, 1, 0, 2.0 * PI / omega).unwrap();
        let scale = (0.2f64 / omega).powi(2);
        assert!(b.dephase.abs() < 1e-15 * scale);
        assert!(b.osc_phase.abs() < 1e-15 * scale);
        assert!(b.dephase <= 0.0);
    }

    #[test]
    fn harmonic_bath_rephases() {
        let omega_1 = 2.0;
        let bath = harmonic_bath(2000, omega_1);
        let th = ThermalParams::from_beta_hbar(0.05).unwrap();
        let ev = BathEvaluator::new(&bath, &unit_cavity(), &th).unwrap();
        let period = 2.0 * PI / omega_1;
        let max = (1..200)
            .map(|k| ev.exponent(0, 1, period * k as f64 / 200.0).unwrap().dephase.abs())
            .fold(0.0, f64::max);
        let at_period = ev.exponent(0, 1, period).unwrap().dephase.abs();
        assert!(at_period <= 1e-10 * max, "{at_period} vs {max}");
    }

    #[test]
    fn negative_time_is_domain_error() {
        let bath = harmonic_bath(3, 1.0);
        let th = ThermalParams::from_beta_hbar(1.0).unwrap();
        assert!(matches!(
            exponent_discrete(&bath, &unit_cavity(), &th, 1, 0, -1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn kerr_constant_examples() {
        let cav = unit_cavity();
        let zero = ModeBath::new(vec![Mode { omega: 1.0, lambda: 0.0 }, Mode { omega: 2.0, lambda: 0.0 }]).unwrap();
        assert_eq!(kerr_constant_discrete(&zero, &cav), 0.0);
        let one = ModeBath::new(vec![Mode { omega: 2.0, lambda: 0.1 }]).unwrap();
        assert_relative_eq!(kerr_constant_discrete(&one, &cav), -0.005, max_relative = 1e-15);
    }

    #[test]
    fn diagonal_state_is_stationary() {
        let bath = harmonic_bath(50, 1.0);
        let th = ThermalParams::from_beta_hbar(0.3).unwrap();
        let rho = FockDensityMatrix::diagonal(&[0.5, 0.2, 0.3]).unwrap();
        for &t in &[0.0, 0.7, 13.0] {
            let out = evolve_density_matrix(&rho, &bath, &unit_cavity(), &th, t).unwrap();
            assert_eq!(out, rho);
        }
    }

    #[test]
    fn superposition_coherence_follows_dephasing() {
        let bath = harmonic_bath(50, 1.0);
        let th = ThermalParams::from_beta_hbar(0.3).unwrap();
        let rho = FockDensityMatrix::superposition(&[0, 1], 2).unwrap();
        assert_relative_eq!(coherence_magnitude(&rho, 0, 1).unwrap(), 0.5, max_relative = 1e-15);
        let t = 0.9;
        let out = evolve_density_matrix(&rho, &bath, &unit_cavity(), &th, t).unwrap();
        let d = exponent_discrete(&bath, &unit_cavity(), &th, 0, 1, t).unwrap().dephase;
        assert_relative_eq!(coherence_magnitude(&out, 0, 1).unwrap(), 0.5 * d.exp(), max_relative = 1e-14);
        let at_zero = evolve_density_matrix(&rho, &bath, &unit_cavity(), &th, 0.0).unwrap();
        assert!((at_zero.entries() - rho.entries()).iter().all(|z| z.norm() <= 1e-14));
    }

    #[test]
    fn identity_mixture_has_no_coherence() {
        let rho = FockDensityMatrix::diagonal(&[1.0; 4]).unwrap();
        assert_eq!(coherence_magnitude(&rho, 0, 3).unwrap(), 0.0);
        assert!(matches!(coherence_magnitude(&rho, 0, 4), Err(Error::FockIndex { .. })));
    }

    #[test]
    fn rejects_invalid_density_matrices() {
        let mut m = DMatrix::from_element(2, 2, Complex64::new(0.5, 0.0));
        m[(0, 1)] = Complex64::new(0.5, 0.1);
        assert!(FockDensityMatrix::new(m).is_err());
        let neg = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(1.5, 0.0),
            Complex64::new(-0.5, 0.0),
        ]));
        assert!(FockDensityMatrix::new(neg).is_err());
    }

    #[test]
    fn thermal_params_are_consistent() {
        let th = ThermalParams::new(0.05).unwrap();
        assert_relative_eq!(th.beta_hbar(), HBAR / (K_BOLTZMANN * 0.05), max_relative = 1e-15);
        let back = ThermalParams::from_beta_hbar(th.beta_hbar()).unwrap();
        assert_relative_eq!(back.temperature(), 0.05, max_relative = 1e-15);
        assert!(ThermalParams::new(0.0).is_err());
    }
}
