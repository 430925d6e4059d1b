//! Quadrature of `C ∫_{ω₁}^∞ ω^s f(ω) cutoff(ω) dω`.
//!
//! Short times integrate directly on panels no wider than a quarter period
//! of the weight's oscillation. At long times only the lowest ~64 periods are
//! integrated on the real axis; the rest is split into `e^{ipω}` pieces and
//! each piece is integrated along a vertical ray `ω = X + iy`, where the
//! oscillation turns into decay `e^{−py}`. The sinc² cutoff grows off the real
//! axis, so beyond a few ω_u it is rewritten as `(ω_u²/2ω²)(1 − cos 2ω/ω_u)`
//! and its cosine joins the exponential pieces.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{CutoffShape, SpectralModel, WeightFunction, WeightKind};
use crate::error::Result;
use crate::quadrature::{geometric_panels, Integrator};
use crate::specfun::{coth_half, coth_half_complex, sinc_complex};

const REL_TOL: f64 = 1e-12;
/// Real-axis integration is used while the weight oscillates fewer than this
/// many radians across the range.
const DIRECT_PHASE_LIMIT: f64 = 2.0 * PI * 400.0;
/// Periods of the weight's oscillation kept on the real axis before rotating.
const LOW_PERIODS: f64 = 64.0;
/// Effective upper ends, in units of ω_u.
const EXPONENTIAL_SPAN: f64 = 60.0;
const GAUSSIAN_SPAN: f64 = 6.5;
const SINC_TAIL_START: f64 = 4.0;

/// Non-oscillatory part of the weight.
#[derive(Debug, Clone, Copy)]
enum Amplitude {
    InvOmega,
    InvOmegaSq,
    CothOverOmegaSq(f64),
    HighT(f64),
}

impl Amplitude {
    fn real(self, w: f64) -> f64 {
        match self {
            Amplitude::InvOmega => 1.0 / w,
            Amplitude::InvOmegaSq => 1.0 / (w * w),
            Amplitude::CothOverOmegaSq(bh) => coth_half(bh * w).unwrap_or(f64::INFINITY) / (w * w),
            Amplitude::HighT(bh) => 2.0 / (bh * w * w * w),
        }
    }

    fn complex(self, w: Complex64) -> Complex64 {
        match self {
            Amplitude::InvOmega => w.inv(),
            Amplitude::InvOmegaSq => (w * w).inv(),
            Amplitude::CothOverOmegaSq(bh) => coth_half_complex(w * bh) / (w * w),
            Amplitude::HighT(bh) => 2.0 / (bh * w * w * w),
        }
    }
}

/// Oscillating part of the weight, as a sum of `a·e^{ipω}`.
#[derive(Debug, Clone, Copy)]
enum Oscillation {
    None,
    Sin(f64),
    SinSqHalf(f64),
}

impl Oscillation {
    fn real(self, w: f64) -> f64 {
        match self {
            Oscillation::None => 1.0,
            Oscillation::Sin(t) => (w * t).sin(),
            Oscillation::SinSqHalf(t) => {
                let s = (0.5 * w * t).sin();
                s * s
            }
        }
    }

    fn frequency(self) -> f64 {
        match self {
            Oscillation::None => 0.0,
            Oscillation::Sin(t) | Oscillation::SinSqHalf(t) => t,
        }
    }

    fn exponentials(self) -> Vec<(Complex64, f64)> {
        let i = Complex64::new(0.0, 1.0);
        match self {
            Oscillation::None => vec![(Complex64::new(1.0, 0.0), 0.0)],
            Oscillation::Sin(t) => vec![(-0.5 * i, t), (0.5 * i, -t)],
            Oscillation::SinSqHalf(t) => vec![
                (Complex64::new(0.5, 0.0), 0.0),
                (Complex64::new(-0.25, 0.0), t),
                (Complex64::new(-0.25, 0.0), -t),
            ],
        }
    }
}

fn split_weight(weight: &WeightFunction) -> (Amplitude, Oscillation) {
    match weight.kind {
        WeightKind::InvOmega => (Amplitude::InvOmega, Oscillation::None),
        WeightKind::Osc => (Amplitude::InvOmegaSq, Oscillation::Sin(weight.t)),
        WeightKind::DephFull => (Amplitude::CothOverOmegaSq(weight.beta_hbar), Oscillation::SinSqHalf(weight.t)),
        WeightKind::DephHighT => (Amplitude::HighT(weight.beta_hbar), Oscillation::SinSqHalf(weight.t)),
    }
}

/// `Σ aⱼ e^{ipⱼω}` lists multiplied out, equal frequencies merged.
fn convolve(a: &[(Complex64, f64)], b: &[(Complex64, f64)]) -> Vec<(Complex64, f64)> {
    let mut out: Vec<(Complex64, f64)> = Vec::new();
    for &(ca, pa) in a {
        for &(cb, pb) in b {
            let p = pa + pb;
            match out.iter_mut().find(|(_, q)| *q == p) {
                Some(entry) => entry.0 += ca * cb,
                None => out.push((ca * cb, p)),
            }
        }
    }
    out
}

struct Engine<'a> {
    model: &'a SpectralModel,
    amp: Amplitude,
    osc: Oscillation,
    integrator: Integrator,
}

impl Engine<'_> {
    fn real_integrand(&self, w: f64) -> f64 {
        self.model.density(w) * self.amp.real(w) * self.osc.real(w)
    }

    /// `C ω^s cutoff(ω) amp(ω)` continued off the real axis (exponential and sinc²).
    fn analytic_amplitude(&self, w: Complex64) -> Complex64 {
        let m = self.model;
        let x = w / m.omega_u;
        let cut = match m.cutoff {
            CutoffShape::Exponential => (-x).exp(),
            CutoffShape::SincSquared => {
                let s = sinc_complex(x);
                s * s
            }
            CutoffShape::Gaussian => (-2.0 * x * x).exp(),
        };
        m.coupling_c * w.powi(m.s) * cut * self.amp.complex(w)
    }

    /// Amplitude with sinc² replaced by its envelope `ω_u²/(2ω²)`.
    fn sinc_tail_amplitude(&self, w: Complex64) -> Complex64 {
        let m = self.model;
        m.coupling_c * w.powi(m.s) * (m.omega_u * m.omega_u) / (2.0 * w * w) * self.amp.complex(w)
    }

    fn panel_width(&self) -> f64 {
        let mut width = f64::INFINITY;
        let t = self.osc.frequency();
        if t > 0.0 {
            width = width.min(PI / (4.0 * t));
        }
        if self.model.cutoff == CutoffShape::SincSquared {
            width = width.min(PI * self.model.omega_u / 4.0);
        }
        width
    }

    fn direct(&self, a: f64, b: f64) -> Result<f64> {
        if b <= a {
            return Ok(0.0);
        }
        let breaks = geometric_panels(a, b, self.panel_width());
        Ok(self.integrator.integrate(|w: f64| self.real_integrand(w), &breaks)?.value)
    }

    /// Real-axis integral of a non-oscillatory amplitude over `[a, b]`.
    fn smooth<F: Fn(f64) -> f64>(&self, h: F, a: f64, b: f64) -> Result<f64> {
        let mut width = f64::INFINITY;
        if self.model.cutoff == CutoffShape::SincSquared {
            width = PI * self.model.omega_u / 4.0;
        }
        let breaks = geometric_panels(a, b, width);
        Ok(self.integrator.integrate(h, &breaks)?.value)
    }

    /// `∫_x^∞ h(ω) e^{ipω} dω` for p > 0 along `ω = x + iy`.
    fn ray<F: Fn(Complex64) -> Complex64>(&self, h: &F, x: f64, p: f64) -> Result<Complex64> {
        let scale = (1.0 / p).min(x);
        let g = |y: f64| {
            let decay = p * y;
            if decay > 700.0 {
                return Complex64::new(0.0, 0.0);
            }
            let v = h(Complex64::new(x, y)) * (-decay).exp();
            if v.re.is_finite() && v.im.is_finite() {
                v
            } else {
                Complex64::new(0.0, 0.0)
            }
        };
        let r = self.integrator.integrate_semi_infinite(g, 0.0, scale)?.value;
        Ok(Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, p * x) * r)
    }

    /// `Σ aⱼ ∫_a^b h e^{ipⱼω}` with `b = ∞` allowed; `smooth_part` supplies the
    /// real p = 0 integral.
    fn combine<F, G>(&self, terms: &[(Complex64, f64)], h: &F, a: f64, b: f64, smooth_part: G) -> Result<f64>
    where
        F: Fn(Complex64) -> Complex64,
        G: Fn() -> Result<f64>,
    {
        let mut total = Complex64::new(0.0, 0.0);
        let mut zero_done = false;
        for &(c, p) in terms {
            if c == Complex64::new(0.0, 0.0) {
                continue;
            }
            let value = if p == 0.0 {
                if zero_done {
                    unreachable!("merged frequencies")
                }
                zero_done = true;
                Complex64::new(smooth_part()?, 0.0)
            } else {
                let q = p.abs();
                let mut f = self.ray(h, a, q)?;
                if b.is_finite() {
                    f -= self.ray(h, b, q)?;
                }
                if p < 0.0 {
                    f.conj()
                } else {
                    f
                }
            };
            total += c * value;
        }
        Ok(total.re)
    }

    fn run(&self) -> Result<f64> {
        let m = self.model;
        let a = m.omega_1;
        let t = self.osc.frequency();
        match m.cutoff {
            CutoffShape::Gaussian => self.direct(a, a + GAUSSIAN_SPAN * m.omega_u),
            CutoffShape::Exponential => {
                let end = a + EXPONENTIAL_SPAN * m.omega_u;
                if t == 0.0 || t * (end - a) <= DIRECT_PHASE_LIMIT {
                    return self.direct(a, end);
                }
                let x = a + LOW_PERIODS * 2.0 * PI / t;
                let head = self.direct(a, x)?;
                let h = |w: Complex64| self.analytic_amplitude(w);
                let smooth = || self.smooth(|w: f64| m.density(w) * self.amp.real(w), x, end);
                let tail = self.combine(&self.osc.exponentials(), &h, x, f64::INFINITY, smooth)?;
                Ok(head + tail)
            }
            CutoffShape::SincSquared => {
                let x_hi = SINC_TAIL_START * m.omega_u;
                let head = if t == 0.0 || t * (x_hi - a) <= DIRECT_PHASE_LIMIT {
                    self.direct(a, x_hi)?
                } else {
                    let x = a + LOW_PERIODS * 2.0 * PI / t;
                    let low = self.direct(a, x)?;
                    let h = |w: Complex64| self.analytic_amplitude(w);
                    let smooth = || self.smooth(|w: f64| m.density(w) * self.amp.real(w), x, x_hi);
                    low + self.combine(&self.osc.exponentials(), &h, x, x_hi, smooth)?
                };
                let k = 2.0 / m.omega_u;
                let one_minus_cos = [
                    (Complex64::new(1.0, 0.0), 0.0),
                    (Complex64::new(-0.5, 0.0), k),
                    (Complex64::new(-0.5, 0.0), -k),
                ];
                let terms = convolve(&self.osc.exponentials(), &one_minus_cos);
                let h = |w: Complex64| self.sinc_tail_amplitude(w);
                let smooth = || {
                    let g = |w: f64| self.sinc_tail_amplitude(Complex64::new(w, 0.0)).re;
                    Ok(self.integrator.integrate_semi_infinite(g, x_hi, x_hi)?.value)
                };
                let tail = self.combine(&terms, &h, x_hi, f64::INFINITY, smooth)?;
                Ok(head + tail)
            }
        }
    }
}

fn integrate_parts(model: &SpectralModel, amp: Amplitude, osc: Oscillation) -> Result<f64> {
    Engine {
        model,
        amp,
        osc,
        integrator: Integrator::new(REL_TOL),
    }
    .run()
}

/// `C ∫_{ω₁}^∞ ω^s f(ω) cutoff(ω) dω`, plus `w·C·f(ω₁)` when the model
/// carries a boundary weight; dephasing weights are further multiplied by
/// the model's continuum factor.
pub fn spectral_integral_quadrature(model: &SpectralModel, weight: &WeightFunction) -> Result<f64> {
    model.validate()?;
    weight.validate()?;
    if weight.kind != WeightKind::InvOmega && weight.t == 0.0 {
        return Ok(0.0);
    }
    let (amp, osc) = split_weight(weight);
    let mut value = integrate_parts(model, amp, osc)?;
    if let Some(w) = model.boundary_weight {
        value += w * model.coupling_c * weight.eval(model.omega_1);
    }
    if weight.is_dephasing() {
        value *= model.continuum_factor;
    }
    Ok(value)
}

/// Time average of the full-coth dephasing integral (sin² → ½).
pub(crate) fn mean_dephasing_integral(model: &SpectralModel, beta_hbar: f64) -> Result<f64> {
    model.validate()?;
    let amp = Amplitude::CothOverOmegaSq(beta_hbar);
    let mut value = 0.5 * integrate_parts(model, amp, Oscillation::None)?;
    if let Some(w) = model.boundary_weight {
        value += 0.5 * w * model.coupling_c * amp.real(model.omega_1);
    }
    Ok(value * model.continuum_factor)
}
