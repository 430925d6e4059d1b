//! Closed-form phase and high-temperature dephasing for the exponential
//! cutoff against direct quadrature of the spectral integrals.

use dephasure::bathmodel::{
    dephase_closed_high_t, phase_closed, quadrature_exponent, CutoffShape, DephasingWeight, SpectralModel,
};
use dephasure::exactsum::{CavityParams, ThermalParams};

fn main() -> dephasure::Result<()> {
    let cavity = CavityParams::new(1.0)?;
    let thermal = ThermalParams::from_beta_hbar(10.0)?;
    for s in [1, 0, -1] {
        let model = SpectralModel::new(s, 1.0, 1e-3, 1.0, CutoffShape::Exponential)?;
        let mut worst = 0.0f64;
        for j in 0..50 {
            let t = 10f64.powf(-1.0 + 6.0 * j as f64 / 49.0);
            let (kerr, osc) = phase_closed(&model, &cavity, 1, 0, t)?;
            let deph = dephase_closed_high_t(&model, &cavity, &thermal, 1, 0, t)?;
            let q = quadrature_exponent(&model, &cavity, &thermal, 1, 0, t, DephasingWeight::HighTemperature)?;
            for (a, b) in [(kerr + osc, q.net_phase()), (deph, q.dephase)] {
                worst = worst.max((a - b).abs() / b.abs().max(1e-300));
            }
        }
        println!("s = {s:>2}: largest relative difference {worst:.2e}");
    }
    Ok(())
}
