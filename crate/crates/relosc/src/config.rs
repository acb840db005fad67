//! Run configuration: a flat `key = value` file format with `#` comments,
//! layered under command-line overrides.
//!
//! Unknown keys are rejected by name. `serialize` of a parsed config yields
//! the canonical form (fixed key order, every key present), so configs are
//! diff-friendly. The header embedded into output files omits `out_dir` and
//! `workers`: those describe where and how a run executes, not what it
//! computes, and files produced with different worker counts must stay
//! byte-identical.

use crate::error::{Error, Result};
use crate::integrator::{StepControls, DEFAULT_FP_MAX_ITER, DEFAULT_FP_TOL};
use crate::model::ModelParams;
use crate::sampler::{InitialState, StateKind};
use std::fmt;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ensemble,
    Single,
    PeriodScan,
    Dilation,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Ensemble => "ensemble",
            Mode::Single => "single",
            Mode::PeriodScan => "period-scan",
            Mode::Dilation => "dilation",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ensemble" => Ok(Mode::Ensemble),
            "single" => Ok(Mode::Single),
            "period-scan" => Ok(Mode::PeriodScan),
            "dilation" => Ok(Mode::Dilation),
            other => Err(Error::Config(format!(
                "unknown mode `{other}` (expected ensemble, single, period-scan or dilation)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Ndjson,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Ndjson => "ndjson",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "ndjson" => Ok(OutputFormat::Ndjson),
            other => Err(Error::Config(format!(
                "unknown format `{other}` (expected csv or ndjson)"
            ))),
        }
    }
}

fn parse_kind(s: &str) -> Result<StateKind> {
    match s {
        "coherent" => Ok(StateKind::Coherent),
        "delta" => Ok(StateKind::Delta),
        other => Err(Error::Config(format!(
            "unknown initial state `{other}` (expected coherent or delta)"
        ))),
    }
}

fn kind_str(kind: StateKind) -> &'static str {
    match kind {
        StateKind::Coherent => "coherent",
        StateKind::Delta => "delta",
    }
}

/// A partial configuration: what a config file or the CLI actually set.
/// Layers merge left to right (defaults, file, CLI flags).
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub mode: Option<Mode>,
    pub z: Option<f64>,
    pub x0: Option<f64>,
    pub p0: Option<f64>,
    pub initial: Option<StateKind>,
    pub n_traj: Option<u64>,
    pub seed: Option<u64>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub fp_tol: Option<f64>,
    pub fp_max_iter: Option<u32>,
    pub snapshot_every: Option<f64>,
    pub bins: Option<usize>,
    pub energies: Option<Vec<f64>>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub workers: Option<usize>,
}

/// The resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub model: ModelParams,
    pub initial: StateKind,
    pub fp_tol: f64,
    pub fp_max_iter: u32,
    pub snapshot_every: f64,
    pub bins: usize,
    /// Energy grid (ħω) for period-scan and dilation modes; a documented
    /// default spanning weakly to strongly relativistic energies is used
    /// when absent.
    pub energies: Option<Vec<f64>>,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub workers: usize,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl RunConfig {
    /// Resolve defaults, then the config file layer, then CLI flags.
    pub fn resolve(file: Option<ConfigOverrides>, cli: ConfigOverrides) -> Result<RunConfig> {
        let mut merged = ConfigOverrides::default();
        for layer in [file, Some(cli)].into_iter().flatten() {
            macro_rules! take {
                ($field:ident) => {
                    if layer.$field.is_some() {
                        merged.$field = layer.$field;
                    }
                };
            }
            take!(mode);
            take!(z);
            take!(x0);
            take!(p0);
            take!(initial);
            take!(n_traj);
            take!(seed);
            take!(dt);
            take!(t_end);
            take!(fp_tol);
            take!(fp_max_iter);
            take!(snapshot_every);
            take!(bins);
            take!(energies);
            take!(out_dir);
            take!(format);
            take!(workers);
        }

        let mode = merged.mode.unwrap_or(Mode::Ensemble);
        let initial = merged.initial.unwrap_or(match mode {
            Mode::Single => StateKind::Delta,
            _ => StateKind::Coherent,
        });
        let config = RunConfig {
            mode,
            model: ModelParams {
                z: merged.z.unwrap_or(1.0),
                x_center: merged.x0.unwrap_or(1.0),
                p_center: merged.p0.unwrap_or(0.0),
                dt: merged.dt.unwrap_or(0.01),
                t_end: merged.t_end.unwrap_or(20.0),
                n_traj: merged.n_traj.unwrap_or(10_000),
                seed: merged.seed.unwrap_or(12345),
            },
            initial,
            fp_tol: merged.fp_tol.unwrap_or(DEFAULT_FP_TOL),
            fp_max_iter: merged.fp_max_iter.unwrap_or(DEFAULT_FP_MAX_ITER),
            snapshot_every: merged.snapshot_every.unwrap_or(0.1),
            bins: merged.bins.unwrap_or(128),
            energies: merged.energies,
            out_dir: merged.out_dir.unwrap_or_else(|| PathBuf::from(".")),
            format: merged.format.unwrap_or(OutputFormat::Csv),
            workers: merged.workers.unwrap_or_else(default_workers),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.controls().validate()?;
        if !(self.snapshot_every.is_finite() && self.snapshot_every > 0.0) {
            return Err(Error::Config(format!(
                "snapshot_every must be positive, got {}",
                self.snapshot_every
            )));
        }
        if self.snapshot_every < self.model.dt {
            return Err(Error::Config(format!(
                "snapshot_every ({}) must be at least dt ({})",
                self.snapshot_every, self.model.dt
            )));
        }
        if self.bins == 0 {
            return Err(Error::Config("bins must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.mode == Mode::Single && self.initial != StateKind::Delta {
            return Err(Error::Config(
                "single mode propagates one trajectory and requires initial = delta".into(),
            ));
        }
        if self.mode == Mode::Dilation && self.initial != StateKind::Coherent {
            return Err(Error::Config(
                "dilation mode averages over a coherent ensemble and requires initial = coherent"
                    .into(),
            ));
        }
        if let Some(energies) = &self.energies {
            if energies.is_empty() {
                return Err(Error::Config("energies list must not be empty".into()));
            }
            if energies.iter().any(|e| !e.is_finite()) {
                return Err(Error::Config("energies must be finite".into()));
            }
            let z = self.model.z;
            match self.mode {
                Mode::PeriodScan => {
                    if let Some(e) = energies.iter().find(|&&e| e <= z) {
                        return Err(Error::Config(format!(
                            "period-scan energies must exceed the rest energy z = {z}, got {e}"
                        )));
                    }
                }
                Mode::Dilation => {
                    if let Some(e) = energies.iter().find(|&&e| e < z) {
                        return Err(Error::Config(format!(
                            "dilation energies must be at least the rest energy z = {z}, got {e}"
                        )));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn controls(&self) -> StepControls {
        StepControls {
            dt: self.model.dt,
            fp_tol: self.fp_tol,
            fp_max_iter: self.fp_max_iter,
        }
    }

    pub fn initial_state(&self) -> InitialState {
        InitialState {
            kind: self.initial,
            x_center: self.model.x_center,
            p_center: self.model.p_center,
        }
    }

    /// Canonical serialization: every key, fixed order.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        for (key, value) in self.entries(true) {
            out.push_str(&format!("{key} = {value}\n"));
        }
        out
    }

    /// One-line config digest for output-file headers. Excludes the
    /// execution-environment keys so identical science runs produce
    /// identical headers.
    pub fn header_digest(&self) -> String {
        self.entries(false)
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect::<Vec<_>>()
            .join("; ")
    }

    fn entries(&self, include_environment: bool) -> Vec<(&'static str, String)> {
        let mut entries: Vec<(&'static str, String)> = vec![
            ("mode", self.mode.as_str().to_string()),
            ("z", format!("{:?}", self.model.z)),
            ("x0", format!("{:?}", self.model.x_center)),
            ("p0", format!("{:?}", self.model.p_center)),
            ("initial", kind_str(self.initial).to_string()),
            ("n_traj", self.model.n_traj.to_string()),
            ("seed", self.model.seed.to_string()),
            ("dt", format!("{:?}", self.model.dt)),
            ("t_end", format!("{:?}", self.model.t_end)),
            ("fp_tol", format!("{:?}", self.fp_tol)),
            ("fp_max_iter", self.fp_max_iter.to_string()),
            ("snapshot_every", format!("{:?}", self.snapshot_every)),
            ("bins", self.bins.to_string()),
        ];
        if let Some(energies) = &self.energies {
            let list = energies
                .iter()
                .map(|e| format!("{e:?}"))
                .collect::<Vec<_>>()
                .join(", ");
            entries.push(("energies", list));
        }
        if include_environment {
            entries.push(("out_dir", self.out_dir.display().to_string()));
        }
        entries.push(("format", self.format.as_str().to_string()));
        if include_environment {
            entries.push(("workers", self.workers.to_string()));
        }
        entries
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{value}` for key `{key}`")))
}

/// Parse the flat `key = value` config format.
pub fn parse_config(text: &str) -> Result<ConfigOverrides> {
    let mut over = ConfigOverrides::default();
    let mut seen: Vec<String> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected `key = value`, got `{line}`", lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        if seen.iter().any(|k| k == key) {
            return Err(Error::Config(format!("duplicate config key `{key}`")));
        }
        seen.push(key.to_string());
        match key {
            "mode" => over.mode = Some(Mode::parse(value)?),
            "z" => over.z = Some(parse_value(key, value)?),
            "x0" => over.x0 = Some(parse_value(key, value)?),
            "p0" => over.p0 = Some(parse_value(key, value)?),
            "initial" => over.initial = Some(parse_kind(value)?),
            "n_traj" => over.n_traj = Some(parse_value(key, value)?),
            "seed" => over.seed = Some(parse_value(key, value)?),
            "dt" => over.dt = Some(parse_value(key, value)?),
            "t_end" => over.t_end = Some(parse_value(key, value)?),
            "fp_tol" => over.fp_tol = Some(parse_value(key, value)?),
            "fp_max_iter" => over.fp_max_iter = Some(parse_value(key, value)?),
            "snapshot_every" => over.snapshot_every = Some(parse_value(key, value)?),
            "bins" => over.bins = Some(parse_value(key, value)?),
            "energies" => {
                let list: Result<Vec<f64>> = value
                    .split(',')
                    .map(|s| parse_value::<f64>(key, s.trim()))
                    .collect();
                over.energies = Some(list?);
            }
            "out_dir" => over.out_dir = Some(PathBuf::from(value)),
            "format" => over.format = Some(OutputFormat::parse(value)?),
            "workers" => over.workers = Some(parse_value(key, value)?),
            other => {
                return Err(Error::Config(format!("unknown config key `{other}`")));
            }
        }
    }
    Ok(over)
}
