//! Run orchestration: the four run modes, deterministic parallel execution,
//! and all file output.
//!
//! One coordinator thread drives the rayon pool over trajectory work and is
//! the only writer of output files. Worker count changes wall time only:
//! sampling is counter-based per trajectory, reductions run on a fixed tree,
//! and histogram counts are integers, so outputs are byte-identical for any
//! `workers` setting.

use crate::analytics::{period, period_numeric, PeriodScanRow};
use crate::config::{Mode, OutputFormat, RunConfig};
use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::histogram::{bin, linear_edges, HistogramKind};
use crate::integrator::{first_integral, propagate, TrajectoryState};
use crate::model::{energy, velocity, PhasePoint, UnitSystem};
use crate::observables::reduce;
use crate::output::{HistogramWriter, TableWriter};
use crate::sampler::{check_purity, sample_coherent, sample_delta, StateKind};
use std::f64::consts::PI;
use std::path::PathBuf;

/// Execute the configured run; returns the paths written.
pub fn run(config: &RunConfig) -> Result<Vec<PathBuf>> {
    config.validate()?;
    std::fs::create_dir_all(&config.out_dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    pool.install(|| match config.mode {
        Mode::Ensemble => run_ensemble(config),
        Mode::Single => run_single(config),
        Mode::PeriodScan => run_period_scan(config),
        Mode::Dilation => run_dilation(config),
    })
}

fn table_extension(config: &RunConfig) -> &'static str {
    match config.format {
        OutputFormat::Csv => "csv",
        OutputFormat::Ndjson => "ndjson",
    }
}

/// Snapshot grid: 0, s, 2s, ... plus the exact horizon.
fn snapshot_times(t_end: f64, every: f64) -> Vec<f64> {
    let mut times = vec![0.0];
    let cutoff = t_end - 1e-9 * every;
    let mut k = 1u64;
    loop {
        let t = k as f64 * every;
        if t >= cutoff {
            break;
        }
        times.push(t);
        k += 1;
    }
    if t_end > 0.0 {
        times.push(t_end);
    }
    times
}

fn sample_initial(config: &RunConfig) -> Result<Ensemble> {
    let state = config.initial_state();
    match state.kind {
        StateKind::Coherent => {
            if !check_purity(&state) {
                return Err(Error::Config(
                    "initial state violates the purity restriction".into(),
                ));
            }
            sample_coherent(&state, config.model.n_traj, config.model.seed)
        }
        StateKind::Delta => sample_delta(state.x_center, state.p_center, config.model.n_traj),
    }
}

/// Fixed histogram grids for a whole run, derived from the conservation
/// envelope of the sampled ensemble: no later |p| or |x| can exceed the
/// bound set by the largest initial energy, and |v| < c always.
fn default_grids(ens: &Ensemble, z: f64, bins: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let e_max = ens.max_energy(z);
    let margin = 1.05;
    let p_bound = margin * (e_max * e_max / z - z).max(0.0).sqrt();
    let x_bound = margin * (2.0 * (e_max - z)).max(0.0).sqrt();
    let p_bound = if p_bound > 1e-9 { p_bound } else { 1.0 };
    let x_bound = if x_bound > 1e-9 { x_bound } else { 1.0 };
    (
        linear_edges(-p_bound, p_bound, bins),
        linear_edges(-x_bound, x_bound, bins),
        linear_edges(-1.0, 1.0, bins),
    )
}

const TIMESERIES_COLUMNS: [&str; 9] = [
    "t",
    "mean_p",
    "mean_x",
    "mean_v",
    "mean_E",
    "var_p",
    "var_x",
    "uncertainty_product",
    "mean_tprime",
];

fn run_ensemble(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let z = config.model.z;
    let units = UnitSystem::new(z);
    let controls = config.controls();
    let mut ens = sample_initial(config)?;
    let (p_edges, x_edges, v_edges) = default_grids(&ens, z, config.bins);

    let mut table = TableWriter::create(
        &config.out_dir.join(format!("timeseries.{}", table_extension(config))),
        config,
        TIMESERIES_COLUMNS.iter().map(|s| s.to_string()).collect(),
        None,
    )?;
    let mut hist = HistogramWriter::create(&config.out_dir.join("histograms.ndjson"), config)?;

    let mut march = || -> Result<()> {
        for (i, &t) in snapshot_times(config.model.t_end, config.snapshot_every).iter().enumerate()
        {
            if i > 0 {
                ens.propagate_to(t, z, &controls)?;
            }
            let rec = reduce(&ens, z)?;
            table.write_row(&[
                rec.t,
                units.p_to_physical(rec.mean_p),
                units.x_to_physical(rec.mean_x),
                rec.mean_v,
                rec.mean_energy,
                units.var_p_to_physical(rec.var_p),
                units.var_x_to_physical(rec.var_x),
                rec.uncertainty_product,
                rec.mean_proper_time,
            ])?;
            hist.write_snapshot(&bin(&ens, HistogramKind::Momentum, &p_edges, z)?)?;
            hist.write_snapshot(&bin(&ens, HistogramKind::Coordinate, &x_edges, z)?)?;
            hist.write_snapshot(&bin(&ens, HistogramKind::Velocity, &v_edges, z)?)?;
        }
        Ok(())
    };
    if let Err(e) = march() {
        table.write_failure(&e)?;
        hist.write_failure(&e)?;
        return Err(e);
    }
    Ok(vec![table.finish()?, hist.finish()?])
}

fn run_single(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let z = config.model.z;
    let units = UnitSystem::new(z);
    let controls = config.controls();
    let mut state = TrajectoryState::new(PhasePoint::new(
        config.model.x_center,
        config.model.p_center,
    ));

    let columns = ["t", "x", "p", "v", "E", "C1", "t_prime"];
    let mut table = TableWriter::create(
        &config.out_dir.join(format!("trajectory.{}", table_extension(config))),
        config,
        columns.iter().map(|s| s.to_string()).collect(),
        None,
    )?;

    let mut march = || -> Result<()> {
        for (i, &t) in snapshot_times(config.model.t_end, config.snapshot_every).iter().enumerate()
        {
            if i > 0 {
                state = propagate(state, t, z, &controls, |_| {})?;
            }
            table.write_row(&[
                state.t,
                units.x_to_physical(state.point.x),
                units.p_to_physical(state.point.p),
                velocity(state.point.p, z),
                energy(state.point, z),
                first_integral(&state, z),
                state.proper_time,
            ])?;
        }
        Ok(())
    };
    if let Err(e) = march() {
        table.write_failure(&e)?;
        return Err(e);
    }
    Ok(vec![table.finish()?])
}

/// Default period-scan grid: ten energies from weakly (1.3 z) to strongly
/// (21 z) relativistic.
pub fn default_scan_energies(z: f64) -> Vec<f64> {
    let lo = 1.3 * z;
    let hi = 21.0 * z;
    (0..10).map(|i| lo + (hi - lo) * i as f64 / 9.0).collect()
}

fn run_period_scan(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let z = config.model.z;
    let controls = config.controls();
    let energies = config
        .energies
        .clone()
        .unwrap_or_else(|| default_scan_energies(z));

    let columns = ["E", "T_analytic", "T_numeric", "rel_err"];
    let mut table = TableWriter::create(
        &config.out_dir.join(format!("period_scan.{}", table_extension(config))),
        config,
        columns.iter().map(|s| s.to_string()).collect(),
        Some(format!("t_nonrel = {:?}", 2.0 * PI)),
    )?;

    let mut march = || -> Result<()> {
        for &e in &energies {
            // Start from rest at the turning point that stores the whole
            // kinetic budget in the potential.
            let x0 = (2.0 * (e - z)).sqrt();
            let row = PeriodScanRow {
                energy: e,
                period_analytic: period(e, z)?,
                period_numeric: period_numeric(x0, 0.0, z, &controls)?,
                rel_err: 0.0,
            };
            let rel_err = (row.period_numeric - row.period_analytic).abs() / row.period_analytic;
            table.write_row(&[row.energy, row.period_analytic, row.period_numeric, rel_err])?;
        }
        Ok(())
    };
    if let Err(e) = march() {
        table.write_failure(&e)?;
        return Err(e);
    }
    Ok(vec![table.finish()?])
}

/// Default dilation energies, z·{1, 1.3125, 2.25, 6, 21}: a resting
/// particle plus increasingly relativistic trajectories.
pub fn default_dilation_energies(z: f64) -> Vec<f64> {
    [1.0, 1.3125, 2.25, 6.0, 21.0].iter().map(|f| f * z).collect()
}

fn run_dilation(config: &RunConfig) -> Result<Vec<PathBuf>> {
    let z = config.model.z;
    let controls = config.controls();
    let energies = config
        .energies
        .clone()
        .unwrap_or_else(|| default_dilation_energies(z));

    let mut columns = vec!["t".to_string()];
    columns.extend(energies.iter().map(|e| format!("tprime_E{e:?}")));
    columns.push("tprime_ensemble".to_string());

    let mut trajectories: Vec<TrajectoryState> = energies
        .iter()
        .map(|&e| TrajectoryState::new(PhasePoint::new((2.0 * (e - z)).max(0.0).sqrt(), 0.0)))
        .collect();
    let mut ens = sample_initial(config)?;

    let mut table = TableWriter::create(
        &config.out_dir.join(format!("dilation.{}", table_extension(config))),
        config,
        columns,
        None,
    )?;

    let mut march = || -> Result<()> {
        for (i, &t) in snapshot_times(config.model.t_end, config.snapshot_every).iter().enumerate()
        {
            if i > 0 {
                for state in &mut trajectories {
                    *state = propagate(*state, t, z, &controls, |_| {})?;
                }
                ens.propagate_to(t, z, &controls)?;
            }
            // Row time is the marched time (identical accumulation for every
            // trajectory), so the resting column equals it to the bit.
            let mut row = vec![ens.time()];
            row.extend(trajectories.iter().map(|s| s.proper_time));
            row.push(reduce(&ens, z)?.mean_proper_time);
            table.write_row(&row)?;
        }
        Ok(())
    };
    if let Err(e) = march() {
        table.write_failure(&e)?;
        return Err(e);
    }
    Ok(vec![table.finish()?])
}
