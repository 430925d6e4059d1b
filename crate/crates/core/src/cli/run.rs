//! Subcommand drivers. Every output is a pure function of the config, so
//! repeated runs write identical bytes.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::checks::{render_checks, run_checks, Check};
use super::config::{ConfigError, ModelSpec, RunConfig};
use super::engine::Engine;
use crate::bathmodel::{
    asymptotic_exponent, dephase_closed_high_t, long_time_dephase_plateau, phase_closed, quadrature_exponent,
    spectral_integral_quadrature, CutoffShape, DephasingWeight, Regime, SpectralModel, WeightFunction,
};
use crate::devices::{beam_waist, device_dephasing_report, strip_validity, DeviceSpec};
use crate::error::Error;

pub const CSV_HEADER: &str =
    "t_s,omega_u_t,n,n_prime,free_phase_rad,kerr_phase_rad,osc_phase_rad,dephase,coherence_magnitude";
pub const SWEEP_HEADER: &str = "parameter_value,omega_u,omega_1,coupling_c,epsilon,kerr_constant,t_s,dephase";
pub const FIGURE_HEADER: &str = "omega_u_t,s,phase_ratio,dephase_ratio";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Evolve,
    Validate,
    Report,
    Sweep,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Evolve => "evolve",
            Command::Validate => "validate",
            Command::Report => "report",
            Command::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Turn a failed physical validity condition into exit code 4.
    pub enforce_validity: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical failure: {0}")]
    Numerical(Error),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
    #[error("validity condition violated: {0}")]
    Validity(String),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Config(c) => RunError::Config(c),
            Error::InvalidParameter { name, message } => RunError::Config(ConfigError::Invalid {
                key: name.to_string(),
                message,
            }),
            Error::Validity(m) => RunError::Validity(m),
            other => RunError::Numerical(other),
        }
    }
}

impl RunError {
    /// 2 config, 3 numerical or failed check, 4 validity, 1 output I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Numerical(_) | RunError::ChecksFailed { .. } => 3,
            RunError::Validity(_) => 4,
            RunError::Write { .. } => 1,
        }
    }
}

/// Files written and a human-readable summary for standard output.
#[derive(Debug, Clone, Default)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub message: String,
}

struct Writer<'a> {
    dir: &'a Path,
    files: Vec<PathBuf>,
}

impl Writer<'_> {
    fn write(&mut self, name: &str, contents: &str) -> Result<(), RunError> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).map_err(|source| RunError::Write {
            path: path.clone(),
            source,
        })?;
        self.files.push(path);
        Ok(())
    }

    fn names(&self) -> Vec<String> {
        self.files
            .iter()
            .map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default())
            .collect()
    }
}

/// `{:.11e}`: twelve significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn run(command: Command, cfg: &RunConfig, opts: &RunOptions) -> Result<RunOutcome, RunError> {
    cfg.validate()?;
    let spec = cfg.model_spec()?;
    if opts.enforce_validity {
        enforce_validity(&spec)?;
    }
    std::fs::create_dir_all(&opts.out_dir).map_err(|source| RunError::Write {
        path: opts.out_dir.clone(),
        source,
    })?;
    let mut w = Writer {
        dir: &opts.out_dir,
        files: Vec::new(),
    };
    let (message, extra) = match command {
        Command::Evolve => evolve(cfg, &spec, &mut w)?,
        Command::Validate => validate(cfg, &mut w)?,
        Command::Report => report(cfg, &spec, &mut w)?,
        Command::Sweep => sweep(cfg, &mut w)?,
    };
    let mut summary = json!({
        "command": command.name(),
        "name": cfg.run.name,
        "mode": cfg.run.mode.name(),
        "evaluation": cfg.run.evaluation,
        "derived": derived_constants(&spec)?,
        "result": extra,
    });
    summary["outputs"] = json!(w.names());
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    w.write(&cfg.output.summary, &text)?;
    let failed = match &summary["result"]["checks"] {
        serde_json::Value::Array(a) => a
            .iter()
            .filter(|c| c["passed"] == json!(false) && c["validity"] == json!(false))
            .count(),
        _ => 0,
    };
    if failed > 0 {
        let total = summary["result"]["checks"].as_array().map_or(0, Vec::len);
        eprint!("{message}");
        return Err(RunError::ChecksFailed { failed, total });
    }
    Ok(RunOutcome { files: w.files, message })
}

fn enforce_validity(spec: &ModelSpec) -> Result<(), RunError> {
    if let ModelSpec::Device(DeviceSpec::Strip(p)) = spec {
        let v = strip_validity(p)?;
        if !v.ok {
            return Err(RunError::Validity(format!(
                "strip frequency-fluctuation sum {:.3e} exceeds 0.1 (length bound {:.3e} m)",
                v.lhs, v.max_length
            )));
        }
    }
    Ok(())
}

fn derived_constants(spec: &ModelSpec) -> Result<serde_json::Value, RunError> {
    let model = spec.spectral_model()?;
    let cavity = spec.cavity()?;
    let thermal = spec.thermal()?;
    let kerr = -cavity.omega().powi(2) * spectral_integral_quadrature(&model, &WeightFunction::inv_omega())? / PI;
    let mut out = json!({
        "s": model.s,
        "cutoff": model.cutoff.name(),
        "omega_u": model.omega_u,
        "omega_1": model.omega_1,
        "coupling_c": model.coupling_c,
        "epsilon": model.epsilon(),
        "boundary_weight": model.boundary_weight,
        "continuum_factor": model.continuum_factor,
        "cavity_omega": cavity.omega(),
        "beta_hbar": thermal.beta_hbar(),
        "temperature": thermal.temperature(),
        "kerr_constant": kerr,
    });
    match spec {
        ModelSpec::Device(DeviceSpec::Strip(p)) => {
            let v = strip_validity(p)?;
            out["validity_lhs"] = json!(v.lhs);
            out["validity_max_length"] = json!(v.max_length);
            out["validity_ok"] = json!(v.ok);
        }
        ModelSpec::Device(DeviceSpec::Membrane(p)) => {
            out["beam_waist"] = json!(beam_waist(p)?);
            out["z0"] = json!(p.z0);
            out["rayleigh_range"] = json!(p.rayleigh_range);
        }
        ModelSpec::Generic { .. } => {}
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Serialize)]
struct EvolveRow {
    t: f64,
    n: usize,
    n_prime: usize,
    free_phase: f64,
    kerr_phase: f64,
    osc_phase: f64,
    dephase: f64,
    coherence: f64,
}

fn evolve(cfg: &RunConfig, spec: &ModelSpec, w: &mut Writer) -> Result<(String, serde_json::Value), RunError> {
    let engine = Engine::new(spec, cfg.run.evaluation, cfg.run.dephasing)?;
    let rho0 = cfg.initial_state()?;
    let omega_u = spec.spectral_model()?.omega_u;
    let grid = cfg.time.grid();
    let pairs = &cfg.fock.pairs;
    let rows: Vec<Vec<EvolveRow>> = grid
        .par_iter()
        .map(|&t| {
            let sums = engine.sums(t)?;
            pairs
                .iter()
                .map(|&[n, np]| {
                    let b = crate::exactsum::breakdown_from_sums(&sums, engine.cavity_omega(), n, np, t);
                    let c0 = rho0.entry(n, np)?.norm();
                    Ok(EvolveRow {
                        t,
                        n,
                        n_prime: np,
                        free_phase: b.free_phase,
                        kerr_phase: b.kerr_phase,
                        osc_phase: b.osc_phase,
                        dephase: b.dephase,
                        coherence: c0 * b.dephase.exp(),
                    })
                })
                .collect()
        })
        .collect::<crate::Result<_>>()?;
    let mut csv = String::with_capacity(160 * grid.len() * pairs.len());
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    let mut min_dephase = 0.0f64;
    for r in rows.iter().flatten() {
        min_dephase = min_dephase.min(r.dephase);
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            sci(r.t),
            sci(omega_u * r.t),
            r.n,
            r.n_prime,
            sci(r.free_phase),
            sci(r.kerr_phase),
            sci(r.osc_phase),
            sci(r.dephase),
            sci(r.coherence)
        )
        .expect("string write");
    }
    w.write(&cfg.output.csv, &csv)?;
    let row_count = grid.len() * pairs.len();
    let mut message = format!("evolve: {row_count} rows -> {}\n", cfg.output.csv);
    if let Some(name) = &cfg.output.figure {
        let ModelSpec::Generic { model, cavity, thermal, .. } = spec else {
            unreachable!("validated: figure needs a generic bath")
        };
        w.write(name, &figure_csv(model, cavity, thermal, &grid)?)?;
        writeln!(message, "figure data -> {name}").expect("string write");
        if cfg.output.plot_script {
            let script = plot_script(name);
            w.write("plot_figure.py", &script)?;
        }
    }
    Ok((
        message,
        json!({
            "rows": row_count,
            "min_dephase": min_dephase,
            "kerr_constant_engine": engine.kerr_constant(),
        }),
    ))
}

/// Closed-form phase and high-temperature dephasing divided by their
/// long-time asymptotes, for s = 1, 0, −1 with the configured cutoffs.
pub fn figure_csv(
    model: &SpectralModel,
    cavity: &crate::exactsum::CavityParams,
    thermal: &crate::exactsum::ThermalParams,
    grid: &[f64],
) -> crate::Result<String> {
    let mut out = String::from(FIGURE_HEADER);
    out.push('\n');
    for s in [1, 0, -1] {
        let m = SpectralModel { s, ..*model };
        let rows: Vec<(f64, f64, f64)> = grid
            .par_iter()
            .map(|&t| {
                let (kerr, osc) = phase_closed(&m, cavity, 1, 0, t)?;
                let deph = dephase_closed_high_t(&m, cavity, thermal, 1, 0, t)?;
                let (net_long, deph_long) = asymptotic_exponent(&m, cavity, thermal, 1, 0, t, Regime::Long);
                Ok((m.omega_u * t, (kerr + osc) / net_long, deph / deph_long))
            })
            .collect::<crate::Result<_>>()?;
        for (x, p, d) in rows {
            writeln!(out, "{},{s},{},{}", sci(x), sci(p), sci(d)).expect("string write");
        }
    }
    Ok(out)
}

fn plot_script(data: &str) -> String {
    format!(
        r#"import csv
import matplotlib.pyplot as plt

rows = list(csv.DictReader(open("{data}")))
fig, axes = plt.subplots(1, 2, figsize=(10, 4))
for ax, column, label in zip(axes, ["phase_ratio", "dephase_ratio"], ["phase", "dephasing"]):
    for s in ["1", "0", "-1"]:
        sel = [r for r in rows if r["s"] == s]
        ax.semilogx([float(r["omega_u_t"]) for r in sel], [float(r[column]) for r in sel], label=f"s = {{s}}")
    ax.axhline(1.0, color="grey", lw=0.5)
    ax.set_xlabel("omega_u t")
    ax.set_ylabel(f"{{label}} / long-time asymptote")
    ax.legend()
fig.tight_layout()
fig.savefig("{data}.png", dpi=150)
"#
    )
}

fn validate(cfg: &RunConfig, w: &mut Writer) -> Result<(String, serde_json::Value), RunError> {
    let checks: Vec<Check> = run_checks(cfg)?;
    let table = render_checks(&checks);
    let mut csv = String::from("check,value,bound,passed,validity_condition\n");
    for c in &checks {
        writeln!(csv, "{},{},{},{},{}", c.name, sci(c.value), sci(c.tolerance), c.passed, c.validity)
            .expect("string write");
    }
    w.write("validation.csv", &csv)?;
    Ok((table, json!({ "checks": checks })))
}

fn report(cfg: &RunConfig, spec: &ModelSpec, w: &mut Writer) -> Result<(String, serde_json::Value), RunError> {
    let [n, np] = cfg.fock.pairs[0];
    let window = (cfg.time.t_min.max(f64::MIN_POSITIVE), cfg.time.t_max);
    let value = match spec {
        ModelSpec::Device(d) => serde_json::to_value(device_dephasing_report(d, window, n, np)?),
        ModelSpec::Generic { model, cavity, thermal, .. } => {
            serde_json::to_value(generic_report(model, cavity, thermal, n, np)?)
        }
    }
    .expect("report serializes");
    let text = render_report(&value);
    w.write("report.txt", &text)?;
    Ok((text, value))
}

#[derive(Debug, Clone, Serialize)]
struct TableComparison {
    regime: Regime,
    t: f64,
    net_phase_numeric: f64,
    net_phase_table: f64,
    dephase_numeric: f64,
    dephase_table: f64,
}

#[derive(Debug, Clone, Serialize)]
struct GenericReport {
    n: usize,
    n_prime: usize,
    window_s: (f64, f64),
    kerr_constant: f64,
    long_time_plateau: f64,
    comparisons: Vec<TableComparison>,
}

fn generic_report(
    model: &SpectralModel,
    cavity: &crate::exactsum::CavityParams,
    thermal: &crate::exactsum::ThermalParams,
    n: usize,
    np: usize,
) -> crate::Result<GenericReport> {
    let w2 = cavity.omega().powi(2);
    let t_mid = 1.0 / (model.omega_u * model.omega_1).sqrt();
    let t_long = 100.0 / model.omega_1;
    let mut comparisons = Vec::new();
    for (regime, t) in [(Regime::Intermediate, t_mid), (Regime::Long, t_long)] {
        let q = if model.cutoff == CutoffShape::Exponential {
            crate::bathmodel::closed_form_exponent(model, cavity, thermal, n, np, t)?
        } else {
            quadrature_exponent(model, cavity, thermal, n, np, t, DephasingWeight::HighTemperature)?
        };
        let (net, deph) = asymptotic_exponent(model, cavity, thermal, n, np, t, regime);
        comparisons.push(TableComparison {
            regime,
            t,
            net_phase_numeric: q.net_phase(),
            net_phase_table: net,
            dephase_numeric: q.dephase,
            dephase_table: deph,
        });
    }
    Ok(GenericReport {
        n,
        n_prime: np,
        window_s: (1.0 / model.omega_u, 1.0 / model.omega_1),
        kerr_constant: -w2 * spectral_integral_quadrature(model, &WeightFunction::inv_omega())? / PI,
        long_time_plateau: long_time_dephase_plateau(model, cavity, thermal, n, np)?,
        comparisons,
    })
}

/// `key = value` lines, nested objects flattened with dots.
fn render_report(value: &serde_json::Value) -> String {
    fn walk(prefix: &str, v: &serde_json::Value, out: &mut String) {
        match v {
            serde_json::Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            serde_json::Value::Array(items) if items.iter().any(|x| x.is_object()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            serde_json::Value::Number(x) => {
                let f = x.as_f64().unwrap_or(f64::NAN);
                if x.is_f64() {
                    writeln!(out, "{prefix} = {f:.6e}").expect("string write");
                } else {
                    writeln!(out, "{prefix} = {x}").expect("string write");
                }
            }
            other => writeln!(out, "{prefix} = {other}").expect("string write"),
        }
    }
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

fn sweep(cfg: &RunConfig, w: &mut Writer) -> Result<(String, serde_json::Value), RunError> {
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| ConfigError::MissingSection {
            mode: cfg.run.mode.name(),
            section: "sweep",
        })?;
    let [n, np] = cfg.fock.pairs[0];
    let rows: Vec<[f64; 8]> = sweep
        .values
        .par_iter()
        .map(|q| -> Result<[f64; 8], RunError> {
            let c = cfg.with_parameter(&sweep.parameter, q.value)?;
            let spec = c.model_spec()?;
            let model = spec.spectral_model()?;
            let engine = Engine::new(&spec, c.run.evaluation, c.run.dephasing)?;
            let t = sweep.time.unwrap_or(1.0 / (model.omega_u * model.omega_1).sqrt());
            let kerr = -spec.cavity()?.omega().powi(2)
                * spectral_integral_quadrature(&model, &WeightFunction::inv_omega())?
                / PI;
            Ok([
                q.value,
                model.omega_u,
                model.omega_1,
                model.coupling_c,
                model.epsilon(),
                kerr,
                t,
                engine.exponent(n, np, t)?.dephase,
            ])
        })
        .collect::<Result<_, _>>()?;
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for r in &rows {
        let cells: Vec<String> = r.iter().map(|&x| sci(x)).collect();
        csv.push_str(&cells.join(","));
        csv.push('\n');
    }
    w.write("sweep.csv", &csv)?;
    Ok((
        format!("sweep: {} values of {} -> sweep.csv\n", rows.len(), sweep.parameter),
        json!({ "parameter": sweep.parameter, "rows": rows.len() }),
    ))
}
