//! Time stepping with the implicit centered finite-difference scheme
//!
//! ```text
//! p1 = p0 - (tau/2) (x1 + x0)
//! x1 = x0 + (tau/2) (g(p1) + g(p0)),    g(p) = sqrt(z) p / sqrt(z + p^2)
//! ```
//!
//! The coupled pair is solved by simple fixed-point iteration seeded at
//! `(x0, p0)`. The scheme is second order, time-reversible, and for the
//! harmonic (large-z) limit it reduces to an exact rotation of phase space,
//! so `x² + p²` is conserved to round-off there.
//!
//! Proper time advances alongside by the trapezoid rule on the dilation
//! integrand, matching the scheme's second-order centering.

use crate::error::{Error, Result};
use crate::model::{dilation_integrand, velocity, PhasePoint};

/// Solver controls for one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControls {
    /// Step tau in units of 1/ω.
    pub dt: f64,
    /// Relative fixed-point convergence tolerance on the (x, p) pair.
    pub fp_tol: f64,
    /// Iteration cap before the step fails loudly.
    pub fp_max_iter: u32,
}

pub const DEFAULT_FP_TOL: f64 = 1e-13;
pub const DEFAULT_FP_MAX_ITER: u32 = 50;

impl StepControls {
    pub fn new(dt: f64) -> Self {
        StepControls {
            dt,
            fp_tol: DEFAULT_FP_TOL,
            fp_max_iter: DEFAULT_FP_MAX_ITER,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.fp_tol.is_finite() && self.fp_tol > 0.0) {
            return Err(Error::Config(format!(
                "fp_tol must be positive, got {}",
                self.fp_tol
            )));
        }
        if self.fp_max_iter == 0 {
            return Err(Error::Config("fp_max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// One trajectory: phase point, lab time, and accumulated proper time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryState {
    pub point: PhasePoint,
    /// Lab time in units of 1/ω.
    pub t: f64,
    /// Accumulated proper time t' (never exceeds the lab time).
    pub proper_time: f64,
}

impl TrajectoryState {
    pub fn new(point: PhasePoint) -> Self {
        TrajectoryState {
            point,
            t: 0.0,
            proper_time: 0.0,
        }
    }
}

/// Advance one step of signed length `tau`. Negative `tau` steps backwards,
/// which is how the reversibility of the scheme is exercised.
pub fn step_with_tau(
    state: &TrajectoryState,
    tau: f64,
    z: f64,
    controls: &StepControls,
) -> Result<TrajectoryState> {
    let x0 = state.point.x;
    let p0 = state.point.p;
    let sqrt_z = z.sqrt();
    let g0 = sqrt_z * velocity(p0, z);
    let half = 0.5 * tau;

    let mut x1 = x0;
    let mut p1 = p0;
    let mut converged = false;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < controls.fp_max_iter {
        iterations += 1;
        let p_new = p0 - half * (x1 + x0);
        let x_new = x0 + half * (sqrt_z * p_new / (p_new * p_new + z).sqrt() + g0);
        residual = (x_new - x1).abs().max((p_new - p1).abs());
        x1 = x_new;
        p1 = p_new;
        if residual <= controls.fp_tol * (1.0 + x1.abs() + p1.abs()) {
            converged = true;
            break;
        }
    }
    if !converged || !(x1.is_finite() && p1.is_finite()) {
        return Err(Error::FixedPointDiverged {
            t: state.t,
            tau,
            iterations,
            residual,
        });
    }

    let dtau_proper = half * (dilation_integrand(p0, z) + dilation_integrand(p1, z));
    Ok(TrajectoryState {
        point: PhasePoint::new(x1, p1),
        t: state.t + tau,
        proper_time: state.proper_time + dtau_proper,
    })
}

/// Advance one forward step of length `controls.dt`.
pub fn step(state: &TrajectoryState, z: f64, controls: &StepControls) -> Result<TrajectoryState> {
    step_with_tau(state, controls.dt, z, controls)
}

/// Fractions of `dt` below this are not worth a partial step; the final time
/// is snapped to the target instead.
const PARTIAL_STEP_EPS: f64 = 1e-9;

/// Propagate to `t_target`, invoking `observer` after every step. Full steps
/// of `dt` are taken first; a final shortened step covers any remainder, so
/// the trajectory lands on the target (to accumulation rounding) without
/// ever overshooting it.
///
/// Lab time is advanced by the same additions as the proper-time quadrature,
/// never reassigned. This keeps `proper_time <= t` exact in floating point
/// and makes a resting trajectory satisfy `proper_time == t` to the bit.
pub fn propagate<F>(
    mut state: TrajectoryState,
    t_target: f64,
    z: f64,
    controls: &StepControls,
    mut observer: F,
) -> Result<TrajectoryState>
where
    F: FnMut(&TrajectoryState),
{
    controls.validate()?;
    let span = t_target - state.t;
    if span < 0.0 {
        return Err(Error::Domain(format!(
            "propagation target {t_target} lies before current time {}",
            state.t
        )));
    }
    if span == 0.0 {
        return Ok(state);
    }
    let n_full = (span / controls.dt + PARTIAL_STEP_EPS).floor() as u64;
    for _ in 0..n_full {
        state = step(&state, z, controls)?;
        observer(&state);
    }
    let remainder = span - n_full as f64 * controls.dt;
    if remainder > controls.dt * PARTIAL_STEP_EPS {
        state = step_with_tau(&state, remainder, z, controls)?;
        observer(&state);
    }
    Ok(state)
}

/// First integral of the momentum equation, `x² + 2√(z(z + p²))`.
/// Equals twice the energy, and is conserved along trajectories.
pub fn first_integral(state: &TrajectoryState, z: f64) -> f64 {
    let p = state.point.p;
    let x = state.point.x;
    x * x + 2.0 * (z * (z + p * p)).sqrt()
}
