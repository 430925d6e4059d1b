//! Exact evolution of a cavity density matrix coupled to a small discrete
//! bath: coherences decay, populations stay put.

use dephasure::exactsum::{
    coherence_magnitude, evolve_with, BathEvaluator, CavityParams, FockDensityMatrix, Mode, ModeBath, ThermalParams,
};

fn main() -> dephasure::Result<()> {
    let bath = ModeBath::new(
        (1..=200)
            .map(|i| Mode {
                omega: 0.01 * i as f64,
                lambda: 0.02 * (-(0.01 * i as f64)).exp(),
            })
            .collect(),
    )?;
    let cavity = CavityParams::new(1.0)?;
    let thermal = ThermalParams::from_beta_hbar(5.0)?;
    let evaluator = BathEvaluator::new(&bath, &cavity, &thermal)?;
    println!("kerr constant {:.6e} rad/s", -evaluator.kerr_sum());

    let rho0 = FockDensityMatrix::superposition(&[0, 1, 2], 3)?;
    println!("{:>8} {:>12} {:>12} {:>12} {:>10}", "t", "|rho_01|", "|rho_02|", "|rho_12|", "trace");
    for t in [0.0, 1.0, 5.0, 20.0, 100.0, 628.3] {
        let rho = evolve_with(&rho0, &evaluator, t)?;
        println!(
            "{t:>8.1} {:>12.6} {:>12.6} {:>12.6} {:>10.6}",
            coherence_magnitude(&rho, 0, 1)?,
            coherence_magnitude(&rho, 0, 2)?,
            coherence_magnitude(&rho, 1, 2)?,
            rho.trace().re
        );
    }

    // all frequencies are multiples of 0.01, so everything rephases at 2π/0.01
    let e = evaluator.exponent(2, 0, 200.0 * std::f64::consts::PI)?;
    println!("dephase at the common period: {:.3e}", e.dephase);
    Ok(())
}
