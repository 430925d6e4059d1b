//! Leading-order intermediate and long-time expressions against the
//! closed-form phase and the full-coth dephasing at the middle of each
//! time window.

use dephasure::bathmodel::{
    asymptotic_exponent, period_average, phase_closed, quadrature_exponent, CutoffShape, DephasingWeight, Regime,
    SpectralModel,
};
use dephasure::exactsum::{CavityParams, ThermalParams};
use std::f64::consts::PI;

fn main() -> dephasure::Result<()> {
    let cavity = CavityParams::new(1.0)?;
    let thermal = ThermalParams::from_beta_hbar(10.0)?;
    println!("{:>3} {:>13} {:>12} {:>12}", "s", "regime", "phase", "dephasing");
    for s in [1, 0, -1] {
        let model = SpectralModel::new(s, 1.0, 1e-3, 1.0, CutoffShape::Exponential)?;
        let exact = |t: f64| -> dephasure::Result<(f64, f64)> {
            let (kerr, osc) = phase_closed(&model, &cavity, 1, 0, t)?;
            let q = quadrature_exponent(&model, &cavity, &thermal, 1, 0, t, DephasingWeight::Full)?;
            Ok((kerr + osc, q.dephase))
        };

        let t = (1.0 / (model.omega_u * model.omega_1)).sqrt();
        let (phase, deph) = exact(t)?;
        let (a_phase, a_deph) = asymptotic_exponent(&model, &cavity, &thermal, 1, 0, t, Regime::Intermediate);
        println!("{s:>3} {:>13} {:>12.4} {:>12.4}", "intermediate", phase / a_phase, deph / a_deph);

        // average over one IR period to remove the oscillating remainder
        let t = 100.0 / model.omega_1;
        let period = 2.0 * PI / model.omega_1;
        let phase = period_average(|t| Ok(exact(t)?.0), t, period, 256)?;
        let deph = period_average(|t| Ok(exact(t)?.1), t, period, 256)?;
        let (a_phase, a_deph) = asymptotic_exponent(&model, &cavity, &thermal, 1, 0, t, Regime::Long);
        println!("{s:>3} {:>13} {:>12.4} {:>12.4}", "long", phase / a_phase, deph / a_deph);
    }
    Ok(())
}
