//! Phase and dephasing normalized by their long-time asymptotes for
//! s = 1, 0, −1; writes the CSV to standard output.

use dephasure::bathmodel::{CutoffShape, SpectralModel};
use dephasure::cli::run::figure_csv;
use dephasure::exactsum::{CavityParams, ThermalParams};

fn main() -> dephasure::Result<()> {
    let model = SpectralModel::new(1, 1.0, 1e-3, 1.0, CutoffShape::Exponential)?;
    let grid: Vec<f64> = (0..=60).map(|j| 10f64.powf(j as f64 / 10.0)).collect();
    print!(
        "{}",
        figure_csv(&model, &CavityParams::new(1.0)?, &ThermalParams::from_beta_hbar(10.0)?, &grid)?
    );
    Ok(())
}
