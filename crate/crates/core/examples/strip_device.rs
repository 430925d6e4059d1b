//! Metallized strip resonator: cutoffs, the weak-coupling length bound,
//! intermediate-time dephasing and exact rephasing of the harmonic bath.

use dephasure::devices::{
    device_dephasing_report, strip_bath, strip_cutoffs, strip_validity, DeviceSpec, StripParams,
};
use dephasure::exactsum::BathEvaluator;
use std::f64::consts::PI;

fn main() -> dephasure::Result<()> {
    let p = StripParams::reference();
    let cut = strip_cutoffs(&p)?;
    println!("omega_u / 2pi = {:.4} MHz", cut.omega_u / (2e6 * PI));
    println!("omega_1 / 2pi = {:.4} kHz", cut.omega_1 / (2e3 * PI));
    let v = strip_validity(&p)?;
    println!("validity sum {:.3e} (ok = {}), length bound {:.3e} m", v.lhs, v.ok, v.max_length);

    let spec = DeviceSpec::Strip(p);
    let report = device_dephasing_report(&spec, (1e-8, 1e-4), 1, 0)?;
    println!("intermediate dephasing {:.2} t^2/us^2", report.intermediate_coefficient_us2);
    let first_order = DeviceSpec::Strip(StripParams {
        refinement_factor: 2.0,
        ..p
    });
    let r2 = device_dephasing_report(&first_order, (1e-8, 1e-4), 1, 0)?;
    println!("with the first-order correction {:.2} t^2/us^2", r2.intermediate_coefficient_us2);

    let bath = strip_bath(&p)?;
    let evaluator = BathEvaluator::new(&bath, &p.cavity()?, &p.thermal()?)?;
    let period = 2.0 * PI / cut.omega_1;
    println!("{} modes, rephasing time {:.3} ms", bath.len(), period * 1e3);
    for frac in [0.25, 0.5, 0.75, 1.0] {
        let e = evaluator.exponent(1, 0, frac * period)?;
        println!("  t = {frac:.2} T: dephase {:.4e}", e.dephase);
    }
    Ok(())
}
