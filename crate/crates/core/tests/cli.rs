use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use approx::assert_relative_eq;
use dephasure::cli::config::{emit_config, load_config, parse_config, RunConfig};
use dephasure::cli::run::{run, Command, RunOptions, CSV_HEADER, SWEEP_HEADER};

fn preset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("presets").join(name)
}

fn load(name: &str) -> RunConfig {
    load_config(&preset(name)).unwrap()
}

fn run_in(command: Command, cfg: &RunConfig, dir: &Path) {
    let opts = RunOptions {
        out_dir: dir.to_path_buf(),
        enforce_validity: false,
    };
    run(command, cfg, &opts).unwrap();
}

fn summary(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap()
}

/// `-d.ddddddddddde±x`, twelve significant digits.
fn is_sci12(field: &str) -> bool {
    let body = field.strip_prefix('-').unwrap_or(field);
    let Some((mantissa, exponent)) = body.split_once('e') else {
        return false;
    };
    let Some((int, frac)) = mantissa.split_once('.') else {
        return false;
    };
    int.len() == 1
        && frac.len() == 11
        && int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        && exponent.trim_start_matches('-').parse::<u32>().is_ok()
}

fn dephasure(args: &[&str]) -> (i32, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_dephasure")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn every_preset_round_trips_through_emit() {
    let dir = preset("");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let cfg = load_config(&path).unwrap();
        cfg.validate().unwrap();
        let again = parse_config(&emit_config(&cfg)).unwrap();
        assert_eq!(again, cfg, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 4);
}

#[test]
fn repeated_runs_write_identical_bytes() {
    for name in ["strip_v1.cfg", "ohmic_exponential.cfg", "strip_length_sweep.cfg"] {
        let cfg = load(name);
        let command = if cfg.sweep.is_some() { Command::Sweep } else { Command::Evolve };
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        run_in(command, &cfg, a.path());
        run_in(command, &cfg, b.path());
        let csv = if command == Command::Sweep { "sweep.csv" } else { cfg.output.csv.as_str() };
        let first = fs::read(a.path().join(csv)).unwrap();
        assert!(!first.is_empty());
        assert_eq!(first, fs::read(b.path().join(csv)).unwrap(), "{name}");
    }
}

#[test]
fn strip_evolution_csv_schema() {
    let cfg = load("strip_v1.cfg");
    let dir = tempfile::tempdir().unwrap();
    run_in(Command::Evolve, &cfg, dir.path());
    let text = fs::read_to_string(dir.path().join("evolution.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 200);
    let mut last_t = 0.0;
    for row in &rows {
        assert_eq!(row.len(), 9);
        for (j, field) in row.iter().enumerate() {
            if j == 2 || j == 3 {
                field.parse::<usize>().unwrap();
            } else {
                assert!(is_sci12(field), "{field}");
            }
        }
        let t: f64 = row[0].parse().unwrap();
        assert!(t > last_t);
        last_t = t;
        let dephase: f64 = row[7].parse().unwrap();
        let coherence: f64 = row[8].parse().unwrap();
        assert!(dephase <= 0.0);
        assert_relative_eq!(coherence, 0.5 * dephase.exp(), max_relative = 1e-10);
    }
    assert_relative_eq!(last_t, 1e-3, max_relative = 1e-12);
}

#[test]
fn closed_form_figure_data_and_plot_script() {
    let cfg = load("ohmic_exponential.cfg");
    let dir = tempfile::tempdir().unwrap();
    run_in(Command::Evolve, &cfg, dir.path());
    let figure = fs::read_to_string(dir.path().join("figure.csv")).unwrap();
    assert_eq!(figure.lines().count(), 1 + 3 * 50);
    assert!(dir.path().join("plot_figure.py").exists());
    let rows = fs::read_to_string(dir.path().join("evolution.csv")).unwrap().lines().count();
    assert_eq!(rows, 1 + 50 * 3);
}

#[test]
fn strip_report_gives_rephasing_time() {
    let cfg = load("strip_v1.cfg");
    let dir = tempfile::tempdir().unwrap();
    run_in(Command::Report, &cfg, dir.path());
    let s = summary(dir.path());
    let t = s["result"]["rephasing_time_s"].as_f64().unwrap();
    assert_relative_eq!(t, 0.63e-3, max_relative = 0.01);
    assert!(s["derived"]["validity_ok"].as_bool().unwrap());
    assert!(dir.path().join("report.txt").exists());
}

#[test]
fn ohmic_validate_passes_every_check() {
    let cfg = load("ohmic_exponential.cfg");
    let dir = tempfile::tempdir().unwrap();
    run_in(Command::Validate, &cfg, dir.path());
    let checks = summary(dir.path())["result"]["checks"].as_array().unwrap().clone();
    assert!(checks.len() >= 7);
    assert!(checks.iter().all(|c| c["passed"] == true));
    let table = fs::read_to_string(dir.path().join("validation.csv")).unwrap();
    assert_eq!(table.lines().count(), checks.len() + 1);
}

#[test]
fn sweep_writes_one_row_per_value() {
    let cfg = load("strip_length_sweep.cfg");
    let dir = tempfile::tempdir().unwrap();
    run_in(Command::Sweep, &cfg, dir.path());
    let text = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(SWEEP_HEADER));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    // ω₁ = πv/L halves each time the length doubles
    for pair in rows.windows(2) {
        assert_relative_eq!(pair[1][0], 2.0 * pair[0][0], max_relative = 1e-12);
        assert_relative_eq!(pair[1][2], 0.5 * pair[0][2], max_relative = 1e-9);
        assert!(pair[1][7] <= 0.0);
    }
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let ohmic = preset("ohmic_exponential.cfg");
    let (code, _) = dephasure(&["evolve", "--config", ohmic.to_str().unwrap(), "--out", out]);
    assert_eq!(code, 0);
    assert!(dir.path().join("evolution.csv").exists());

    let strip = fs::read_to_string(preset("strip_v1.cfg")).unwrap();
    let negative = dir.path().join("negative.cfg");
    fs::write(&negative, strip.replace("length_l = \"10 cm\"", "length_l = \"-1 cm\"")).unwrap();
    let (code, err) = dephasure(&["evolve", "--config", negative.to_str().unwrap(), "--out", out]);
    assert_eq!(code, 2);
    assert!(err.contains("length_l"), "{err}");

    let unknown = dir.path().join("unknown.cfg");
    fs::write(&unknown, strip.replace("[fock]", "[fock]\ncolour = 3")).unwrap();
    assert_eq!(dephasure(&["evolve", "--config", unknown.to_str().unwrap(), "--out", out]).0, 2);

    let missing = dir.path().join("absent.cfg");
    assert_eq!(dephasure(&["evolve", "--config", missing.to_str().unwrap(), "--out", out]).0, 2);

    let long = dir.path().join("long.cfg");
    fs::write(&long, strip.replace("length_l = \"10 cm\"", "length_l = \"5e6 m\"")).unwrap();
    let args = ["report", "--config", long.to_str().unwrap(), "--out", out];
    let (code, err) = dephasure(&[&args[..], &["--enforce-validity"]].concat());
    assert_eq!(code, 4, "{err}");

    let file = dir.path().join("evolution.csv");
    let (code, _) = dephasure(&["evolve", "--config", ohmic.to_str().unwrap(), "--out", file.to_str().unwrap()]);
    assert_eq!(code, 1);
}
