//! Run configuration: a TOML document with one table per concern.
//!
//! ```toml
//! [run]
//! mode = "strip"            # generic_bath | strip | membrane
//! evaluation = "discrete_exact"
//!
//! [time]
//! t_min = "1 ns"
//! t_max = "1 ms"
//! points = 200
//! spacing = "log"
//!
//! [fock]
//! dimension = 3
//! pairs = [[0, 1], [0, 2]]
//!
//! [strip]
//! rho_m = "1000 kg/m^3"
//! ...
//! ```
//!
//! Quantities are bare SI numbers or quoted strings with a unit suffix (see
//! [`super::units`]). Unknown keys are rejected.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::path::{Path, PathBuf};

use super::units::{self, Dimension, Quantity};
use crate::bathmodel::{CutoffShape, DephasingWeight, SpectralModel};
use crate::devices::membrane::{
    max_coupling_z0, rayleigh_range_for_waist, DEFAULT_CONTINUUM_FACTOR, DEFAULT_MODE_CUTOFF_FACTOR,
};
use crate::devices::strip::{DEFAULT_REFINEMENT_FACTOR, DEFAULT_STRIP_MODE_COUNT};
use crate::devices::{DeviceSpec, MembraneParams, StripParams};
use crate::error::Error;
use crate::exactsum::{CavityParams, FockDensityMatrix, ThermalParams};

/// Default truncation, in units of ω_u, of the harmonic discretization used
/// for `discrete_exact` runs of a generic bath.
pub const DEFAULT_MAX_MODE_FACTOR: f64 = 40.0;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("invalid value for `{key}`: {message}")]
    Invalid { key: String, message: String },
    #[error("mode `{mode}` needs a [{section}] table")]
    MissingSection { mode: &'static str, section: &'static str },
}

fn invalid(key: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.into(),
        message: message.into(),
    }
}

/// Attaches the table name to parameter errors raised by model builders.
fn in_section(section: &str, e: Error) -> ConfigError {
    match e {
        Error::InvalidParameter { name, message } => invalid(format!("{section}.{name}"), message),
        Error::Config(c) => c,
        other => invalid(section, other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    GenericBath,
    Strip,
    Membrane,
}

impl ModeKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModeKind::GenericBath => "generic_bath",
            ModeKind::Strip => "strip",
            ModeKind::Membrane => "membrane",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluation {
    /// Mode-by-mode sums over a discrete bath.
    DiscreteExact,
    /// Incomplete-Gamma closed forms (exponential cutoff only).
    ClosedForm,
    /// Numerical spectral integrals of the continuum model.
    Quadrature,
    /// Leading-order intermediate/long-time expressions.
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub mode: ModeKind,
    pub evaluation: Evaluation,
    /// Continuum dephasing weight for `quadrature` runs.
    #[serde(default)]
    pub dephasing: DephasingWeight,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    #[serde(deserialize_with = "units::time")]
    pub t_min: f64,
    #[serde(deserialize_with = "units::time")]
    pub t_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl TimeSection {
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|j| {
                if j + 1 == self.points {
                    return self.t_max;
                }
                let x = j as f64 / last;
                match self.spacing {
                    Spacing::Log => self.t_min * (self.t_max / self.t_min).powf(x),
                    Spacing::Linear => self.t_min + (self.t_max - self.t_min) * x,
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.points < 2 {
            return Err(invalid("time.points", format!("need at least 2 points, got {}", self.points)));
        }
        if !self.t_min.is_finite() || !self.t_max.is_finite() || !(self.t_min < self.t_max) {
            return Err(invalid(
                "time.t_max",
                format!("need t_min < t_max, got t_min = {:e} s, t_max = {:e} s", self.t_min, self.t_max),
            ));
        }
        let lower_ok = match self.spacing {
            Spacing::Log => self.t_min > 0.0,
            Spacing::Linear => self.t_min >= 0.0,
        };
        if !lower_ok {
            return Err(invalid("time.t_min", format!("out of range for {:?} spacing: {:e} s", self.spacing, self.t_min)));
        }
        let grid = self.grid();
        if !grid.windows(2).all(|w| w[1] > w[0]) {
            return Err(invalid("time.points", "grid is not strictly increasing at double precision"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FockSection {
    /// Number of Fock levels kept, |0⟩ … |dimension − 1⟩.
    pub dimension: usize,
    pub pairs: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    /// Equal-amplitude superposition of `levels`.
    Superposition,
    /// Incoherent mixture with the given `weights`.
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSection {
    pub kind: StateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathSection {
    pub s: i32,
    /// C in s^{−s}.
    #[serde(deserialize_with = "units::number")]
    pub coupling_c: f64,
    #[serde(deserialize_with = "units::frequency")]
    pub omega_1: f64,
    #[serde(deserialize_with = "units::frequency")]
    pub omega_u: f64,
    pub cutoff: CutoffShape,
    #[serde(deserialize_with = "units::frequency")]
    pub cavity_omega: f64,
    #[serde(default, deserialize_with = "units::opt_temperature", skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    /// βħ in seconds; alternative to `temperature`.
    #[serde(default, deserialize_with = "units::opt_time", skip_serializing_if = "Option::is_none")]
    pub beta_hbar: Option<f64>,
    #[serde(default, deserialize_with = "units::opt_number", skip_serializing_if = "Option::is_none")]
    pub boundary_weight: Option<f64>,
    #[serde(default, deserialize_with = "units::opt_number", skip_serializing_if = "Option::is_none")]
    pub continuum_factor: Option<f64>,
    #[serde(default, deserialize_with = "units::opt_number", skip_serializing_if = "Option::is_none")]
    pub max_mode_factor: Option<f64>,
}

fn default_refinement() -> f64 {
    DEFAULT_REFINEMENT_FACTOR
}

fn default_mode_count() -> usize {
    DEFAULT_STRIP_MODE_COUNT
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripSection {
    #[serde(deserialize_with = "units::density")]
    pub rho_m: f64,
    #[serde(deserialize_with = "units::force")]
    pub tension_f: f64,
    #[serde(deserialize_with = "units::length")]
    pub width_w: f64,
    #[serde(deserialize_with = "units::length")]
    pub thickness_t: f64,
    #[serde(deserialize_with = "units::length")]
    pub length_l: f64,
    #[serde(deserialize_with = "units::length")]
    pub metallized_dl: f64,
    #[serde(deserialize_with = "units::length")]
    pub gap_d: f64,
    #[serde(deserialize_with = "units::frequency")]
    pub circuit_omega: f64,
    #[serde(deserialize_with = "units::temperature")]
    pub temperature: f64,
    #[serde(default = "default_refinement", deserialize_with = "units::number")]
    pub refinement_factor: f64,
    #[serde(default = "default_mode_count")]
    pub mode_count: usize,
}

impl StripSection {
    pub fn params(&self) -> StripParams {
        StripParams {
            rho_m: self.rho_m,
            tension_f: self.tension_f,
            width_w: self.width_w,
            thickness_t: self.thickness_t,
            length_l: self.length_l,
            metallized_dl: self.metallized_dl,
            gap_d: self.gap_d,
            circuit_omega: self.circuit_omega,
            temperature: self.temperature,
            refinement_factor: self.refinement_factor,
            mode_count: self.mode_count,
        }
    }
}

/// Membrane position: a length, or the point of maximal coupling nearest the
/// cavity midpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Position {
    MaxCoupling,
    At(f64),
}

const MAX_COUPLING: &str = "max_coupling";

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Position::MaxCoupling => s.serialize_str(MAX_COUPLING),
            Position::At(z) => s.serialize_f64(*z),
        }
    }
}

struct PositionVisitor;

impl<'de> serde::de::Visitor<'de> for PositionVisitor {
    type Value = Position;

    fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        write!(f, "a length or \"{MAX_COUPLING}\"")
    }

    fn visit_f64<E: serde::de::Error>(self, v: f64) -> Result<Position, E> {
        Ok(Position::At(v))
    }

    fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Position, E> {
        Ok(Position::At(v as f64))
    }

    fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Position, E> {
        if v.trim() == MAX_COUPLING {
            return Ok(Position::MaxCoupling);
        }
        units::parse_with_dimension(v, Dimension::Length)
            .map(Position::At)
            .map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(PositionVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembraneSection {
    #[serde(deserialize_with = "units::density")]
    pub rho_m: f64,
    #[serde(deserialize_with = "units::tension_per_length")]
    pub tension_per_length: f64,
    #[serde(deserialize_with = "units::length")]
    pub thickness_t: f64,
    #[serde(deserialize_with = "units::length")]
    pub side_l: f64,
    #[serde(deserialize_with = "units::length")]
    pub cavity_length: f64,
    #[serde(deserialize_with = "units::length")]
    pub wavelength: f64,
    /// Give exactly one of `rayleigh_range` and `beam_waist`.
    #[serde(default, deserialize_with = "units::opt_length", skip_serializing_if = "Option::is_none")]
    pub rayleigh_range: Option<f64>,
    #[serde(default, deserialize_with = "units::opt_length", skip_serializing_if = "Option::is_none")]
    pub beam_waist: Option<f64>,
    pub z0: Position,
    #[serde(deserialize_with = "units::number")]
    pub refractive_n: f64,
    #[serde(deserialize_with = "units::temperature")]
    pub temperature: f64,
    #[serde(default, deserialize_with = "units::opt_number", skip_serializing_if = "Option::is_none")]
    pub continuum_factor: Option<f64>,
    #[serde(default, deserialize_with = "units::opt_number", skip_serializing_if = "Option::is_none")]
    pub mode_cutoff_factor: Option<f64>,
}

impl MembraneSection {
    pub fn params(&self) -> Result<MembraneParams, ConfigError> {
        let mut p = MembraneParams {
            rho_m: self.rho_m,
            tension_per_length: self.tension_per_length,
            thickness_t: self.thickness_t,
            side_l: self.side_l,
            cavity_length: self.cavity_length,
            wavelength: self.wavelength,
            rayleigh_range: f64::INFINITY,
            z0: 0.0,
            refractive_n: self.refractive_n,
            temperature: self.temperature,
            continuum_factor: self.continuum_factor.unwrap_or(DEFAULT_CONTINUUM_FACTOR),
            mode_cutoff_factor: self.mode_cutoff_factor.unwrap_or(DEFAULT_MODE_CUTOFF_FACTOR),
        };
        let sec = |e| in_section("membrane", e);
        p.rayleigh_range = match (self.rayleigh_range, self.beam_waist) {
            (Some(f), None) => f,
            (None, Some(w)) => rayleigh_range_for_waist(&p, w).map_err(sec)?,
            _ => {
                return Err(invalid(
                    "membrane.rayleigh_range",
                    "give exactly one of rayleigh_range and beam_waist",
                ))
            }
        };
        p.z0 = match self.z0 {
            Position::At(z) => z,
            Position::MaxCoupling => max_coupling_z0(&p).map_err(sec)?,
        };
        p.validate().map_err(sec)?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    /// `table.key` of a numeric setting, e.g. `strip.length_l`.
    pub parameter: String,
    pub values: Vec<Quantity>,
    /// Time at which the dephasing column is evaluated; defaults to the
    /// geometric midpoint of the intermediate window.
    #[serde(default, deserialize_with = "units::opt_time", skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
}

fn default_csv() -> String {
    "evolution.csv".into()
}

fn default_summary() -> String {
    "summary.json".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_csv")]
    pub csv: String,
    #[serde(default = "default_summary")]
    pub summary: String,
    /// Normalized-ratio figure data (generic exponential baths only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure: Option<String>,
    /// Also write a matplotlib script next to the figure data.
    #[serde(default)]
    pub plot_script: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            csv: default_csv(),
            summary: default_summary(),
            figure: None,
            plot_script: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub run: RunSection,
    pub time: TimeSection,
    pub fock: FockSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bath: Option<BathSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strip: Option<StripSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membrane: Option<MembraneSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default)]
    pub output: OutputSection,
}

/// Continuum or device description resolved from a config.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Generic {
        model: SpectralModel,
        cavity: CavityParams,
        thermal: ThermalParams,
        max_mode_factor: f64,
    },
    Device(DeviceSpec),
}

impl ModelSpec {
    pub fn spectral_model(&self) -> crate::Result<SpectralModel> {
        match self {
            ModelSpec::Generic { model, .. } => Ok(*model),
            ModelSpec::Device(d) => d.spectral_model(),
        }
    }

    pub fn cavity(&self) -> crate::Result<CavityParams> {
        match self {
            ModelSpec::Generic { cavity, .. } => Ok(*cavity),
            ModelSpec::Device(d) => d.cavity(),
        }
    }

    pub fn thermal(&self) -> crate::Result<ThermalParams> {
        match self {
            ModelSpec::Generic { thermal, .. } => Ok(*thermal),
            ModelSpec::Device(d) => d.thermal(),
        }
    }
}

/// Parses and validates a config document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

/// Writes a config back out with all quantities in SI units.
pub fn emit_config(cfg: &RunConfig) -> String {
    toml::to_string(cfg).expect("config tables serialize")
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.time.validate()?;
        self.validate_fock()?;
        let spec = self.model_spec()?;
        if self.run.evaluation == Evaluation::ClosedForm {
            let model = spec.spectral_model().map_err(|e| in_section("run", e))?;
            if model.cutoff != CutoffShape::Exponential {
                return Err(invalid(
                    "run.evaluation",
                    format!("closed_form needs the exponential cutoff, this model uses {}", model.cutoff.name()),
                ));
            }
        }
        if let Some(f) = &self.output.figure {
            let exponential = matches!(&spec, ModelSpec::Generic { model, .. } if model.cutoff == CutoffShape::Exponential);
            if !exponential {
                return Err(invalid(
                    "output.figure",
                    format!("`{f}`: figure data needs a generic_bath with exponential cutoff"),
                ));
            }
        }
        if let Some(sweep) = &self.sweep {
            self.validate_sweep(sweep)?;
        }
        Ok(())
    }

    fn validate_fock(&self) -> Result<(), ConfigError> {
        let dim = self.fock.dimension;
        if dim < 2 {
            return Err(invalid("fock.dimension", format!("need at least 2 levels, got {dim}")));
        }
        if self.fock.pairs.is_empty() {
            return Err(invalid("fock.pairs", "list at least one [n, n_prime] pair"));
        }
        for [n, np] in &self.fock.pairs {
            if *n >= dim || *np >= dim {
                return Err(invalid(
                    "fock.pairs",
                    format!("pair [{n}, {np}] outside Fock dimension {dim}"),
                ));
            }
        }
        self.initial_state()?;
        Ok(())
    }

    fn validate_sweep(&self, sweep: &SweepSection) -> Result<(), ConfigError> {
        if sweep.values.is_empty() {
            return Err(invalid("sweep.values", "list at least one value"));
        }
        if let Some(t) = sweep.time {
            if !(t > 0.0) {
                return Err(invalid("sweep.time", format!("must be positive, got {t}")));
            }
        }
        let (table, key) = sweep
            .parameter
            .split_once('.')
            .ok_or_else(|| invalid("sweep.parameter", format!("expected `table.key`, got `{}`", sweep.parameter)))?;
        let expected = parameter_dimension(table, key).ok_or_else(|| {
            invalid("sweep.parameter", format!("`{}` is not a sweepable numeric setting", sweep.parameter))
        })?;
        for q in &sweep.values {
            if let Some(d) = q.dimension {
                if d != expected {
                    return Err(invalid(
                        "sweep.values",
                        format!("{} expects {}", sweep.parameter, expected.describe()),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Initial density matrix; defaults to the equal superposition of all levels.
    pub fn initial_state(&self) -> Result<FockDensityMatrix, ConfigError> {
        let dim = self.fock.dimension;
        let state = |e| in_section("state", e);
        match &self.state {
            None => FockDensityMatrix::superposition(&(0..dim).collect::<Vec<_>>(), dim).map_err(state),
            Some(s) => match s.kind {
                StateKind::Superposition => {
                    let levels = s
                        .levels
                        .as_ref()
                        .ok_or_else(|| invalid("state.levels", "superposition needs levels"))?;
                    if levels.iter().any(|&l| l >= dim) {
                        return Err(invalid("state.levels", format!("level outside Fock dimension {dim}")));
                    }
                    FockDensityMatrix::superposition(levels, dim).map_err(state)
                }
                StateKind::Diagonal => {
                    let w = s
                        .weights
                        .as_ref()
                        .ok_or_else(|| invalid("state.weights", "diagonal state needs weights"))?;
                    if w.len() != dim {
                        return Err(invalid(
                            "state.weights",
                            format!("need {dim} weights, got {}", w.len()),
                        ));
                    }
                    FockDensityMatrix::diagonal(w).map_err(state)
                }
            },
        }
    }

    pub fn model_spec(&self) -> Result<ModelSpec, ConfigError> {
        let mode = self.run.mode;
        let missing = |section| ConfigError::MissingSection {
            mode: mode.name(),
            section,
        };
        match mode {
            ModeKind::GenericBath => {
                let b = self.bath.as_ref().ok_or_else(|| missing("bath"))?;
                bath_spec(b)
            }
            ModeKind::Strip => {
                let p = self.strip.as_ref().ok_or_else(|| missing("strip"))?.params();
                p.validate().map_err(|e| in_section("strip", e))?;
                crate::devices::strip_spectral_model(&p).map_err(|e| in_section("strip", e))?;
                Ok(ModelSpec::Device(DeviceSpec::Strip(p)))
            }
            ModeKind::Membrane => {
                let p = self.membrane.as_ref().ok_or_else(|| missing("membrane"))?.params()?;
                crate::devices::membrane_spectral_model(&p).map_err(|e| in_section("membrane", e))?;
                Ok(ModelSpec::Device(DeviceSpec::Membrane(p)))
            }
        }
    }

    /// Copy with `table.key` set to `value` (SI), re-validated.
    pub fn with_parameter(&self, parameter: &str, value: f64) -> Result<RunConfig, ConfigError> {
        let (table, key) = parameter
            .split_once('.')
            .ok_or_else(|| invalid("sweep.parameter", format!("expected `table.key`, got `{parameter}`")))?;
        let mut doc = toml::Table::try_from(self).map_err(|e| ConfigError::Parse(e.to_string()))?;
        let section = doc
            .get_mut(table)
            .and_then(|t| t.as_table_mut())
            .ok_or_else(|| invalid("sweep.parameter", format!("config has no [{table}] table")))?;
        let integer = matches!(section.get(key), Some(toml::Value::Integer(_)));
        let v = if integer {
            if value.fract() != 0.0 || value < 0.0 {
                return Err(invalid(parameter, format!("needs a non-negative integer, got {value}")));
            }
            toml::Value::Integer(value as i64)
        } else {
            toml::Value::Float(value)
        };
        section.insert(key.to_string(), v);
        let cfg = RunConfig::deserialize(doc).map_err(|e| ConfigError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn bath_spec(b: &BathSection) -> Result<ModelSpec, ConfigError> {
    let sec = |e| in_section("bath", e);
    let mut model = SpectralModel::new(b.s, b.coupling_c, b.omega_1, b.omega_u, b.cutoff).map_err(sec)?;
    if let Some(w) = b.boundary_weight {
        model = model.with_boundary_weight(w);
    }
    if let Some(f) = b.continuum_factor {
        model = model.with_continuum_factor(f);
    }
    model.validate().map_err(sec)?;
    let thermal = match (b.temperature, b.beta_hbar) {
        (Some(t), None) => ThermalParams::new(t).map_err(sec)?,
        (None, Some(bh)) => ThermalParams::from_beta_hbar(bh).map_err(sec)?,
        _ => return Err(invalid("bath.temperature", "give exactly one of temperature and beta_hbar")),
    };
    let max_mode_factor = b.max_mode_factor.unwrap_or(DEFAULT_MAX_MODE_FACTOR);
    if !(max_mode_factor > 0.0) {
        return Err(invalid("bath.max_mode_factor", "must be positive"));
    }
    Ok(ModelSpec::Generic {
        model,
        cavity: CavityParams::new(b.cavity_omega).map_err(sec)?,
        thermal,
        max_mode_factor,
    })
}

/// Dimension of a numeric setting that a sweep may vary.
pub fn parameter_dimension(table: &str, key: &str) -> Option<Dimension> {
    use Dimension::*;
    Some(match (table, key) {
        ("bath", "coupling_c" | "boundary_weight" | "continuum_factor" | "max_mode_factor") => Dimensionless,
        ("bath", "omega_1" | "omega_u" | "cavity_omega") => AngularFrequency,
        ("bath", "temperature") => Temperature,
        ("bath", "beta_hbar") => Time,
        ("strip", "rho_m") | ("membrane", "rho_m") => Density,
        ("strip", "tension_f") => Force,
        ("strip", "width_w" | "thickness_t" | "length_l" | "metallized_dl" | "gap_d") => Length,
        ("strip", "circuit_omega") => AngularFrequency,
        ("strip", "temperature") | ("membrane", "temperature") => Temperature,
        ("strip", "refinement_factor" | "mode_count") => Dimensionless,
        ("membrane", "tension_per_length") => TensionPerLength,
        ("membrane", "thickness_t" | "side_l" | "cavity_length" | "wavelength" | "rayleigh_range" | "beam_waist") => {
            Length
        }
        ("membrane", "refractive_n" | "continuum_factor" | "mode_cutoff_factor") => Dimensionless,
        _ => return None,
    })
}
