//! Phase-space Monte Carlo simulation of the semi-relativistic quantum 1D
//! harmonic oscillator.
//!
//! The Wigner quasiprobability distribution of a harmonic system obeys the
//! classical Liouville equation exactly, so its time evolution can be
//! computed by transporting an ensemble of virtual classical trajectories
//! sampled from the initial distribution. This crate does that for the
//! Hamiltonian `H = √(p²c² + m²c⁴) + mω²x²/2`: it samples coherent-state or
//! delta initial conditions, advances every trajectory with an implicit
//! centered scheme, and streams out operator averages, binned distribution
//! snapshots, the oscillation-period law, and relativistic proper-time
//! dilation.
//!
//! Everything is reproducible by construction: sampling is counter-based per
//! trajectory, reductions run on a fixed tree, and the worker count affects
//! wall time only.
//!
//! Start from the runnable examples (`cargo run --release --example ...`)
//! or the `relosc` binary for file-producing runs.

pub mod analytics;
pub mod config;
pub mod ensemble;
pub mod error;
pub mod histogram;
pub mod integrator;
pub mod model;
pub mod observables;
pub mod output;
pub mod reduce;
pub mod runner;
pub mod sampler;

pub use config::{Mode, OutputFormat, RunConfig};
pub use ensemble::Ensemble;
pub use error::{Error, Result};
pub use integrator::{StepControls, TrajectoryState};
pub use model::{ModelParams, PhasePoint, UnitSystem};
pub use observables::ObservableRecord;
pub use sampler::InitialState;
