//! Membrane in an optical cavity: cavity mode, cutoffs, dephasing estimate
//! and the absence of rephasing for the two-dimensional mode spectrum.

use dephasure::devices::{
    beam_waist, cavity_omega, device_dephasing_report, membrane_bath, membrane_cutoffs, DeviceSpec, MembraneParams,
};
use dephasure::exactsum::BathEvaluator;
use std::f64::consts::PI;

fn main() -> dephasure::Result<()> {
    let p = MembraneParams::reference();
    let cut = membrane_cutoffs(&p)?;
    println!("Omega / 2pi   = {:.4e} Hz", cavity_omega(&p)? / (2.0 * PI));
    println!("beam waist    = {:.1} um", beam_waist(&p)? * 1e6);
    println!("omega_u / 2pi = {:.4} MHz", cut.omega_u / (2e6 * PI));
    println!("omega_1 / 2pi = {:.4} kHz", cut.omega_1 / (2e3 * PI));

    let report = device_dephasing_report(&DeviceSpec::Membrane(p), (1e-8, 1e-4), 1, 0)?;
    println!(
        "intermediate dephasing {:.3e} [{}] t^2 per us^2 per K",
        report.coefficient_per_kelvin_us2.unwrap_or(f64::NAN),
        report.intermediate_shape
    );

    let bath = membrane_bath(&p)?;
    let evaluator = BathEvaluator::new(&bath, &p.cavity()?, &p.thermal()?)?;
    let period = 2.0 * PI / cut.omega_1;
    println!("{} distinct mode frequencies", bath.len());
    for k in 1..=5 {
        let t = k as f64 * period;
        println!("  t = {k} x 2pi/omega_1: dephase {:.4e}", evaluator.exponent(1, 0, t)?.dephase);
    }
    Ok(())
}
