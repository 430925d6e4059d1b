//! Drives the command-line layer from code: parses a config with unit
//! suffixes, sweeps the strip length and prints the resulting table.

use dephasure::cli::config::parse_config;
use dephasure::cli::run::{run, Command, RunOptions};

const CONFIG: &str = r#"
[run]
mode = "strip"
evaluation = "quadrature"

[time]
t_min = "1 ns"
t_max = "1 ms"
points = 20
spacing = "log"

[fock]
dimension = 2
pairs = [[0, 1]]

[strip]
rho_m = "1 g/cm^3"
tension_f = "10 uN"
width_w = "1 um"
thickness_t = "100 nm"
length_l = "10 cm"
metallized_dl = "10 um"
gap_d = "0.1 um"
circuit_omega = "5 GHz"
temperature = "50 mK"

[sweep]
parameter = "strip.temperature"
values = ["10 mK", "20 mK", "50 mK", "100 mK", "200 mK"]
time = "1 us"
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = parse_config(CONFIG)?;
    let out = std::env::temp_dir().join("dephasure-config-sweep");
    let outcome = run(
        Command::Sweep,
        &cfg,
        &RunOptions {
            out_dir: out.clone(),
            enforce_validity: false,
        },
    )?;
    print!("{}", outcome.message);
    print!("{}", std::fs::read_to_string(out.join("sweep.csv"))?);
    Ok(())
}
