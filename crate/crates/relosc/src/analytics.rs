//! Closed-form oracles: complete elliptic integrals, the period-vs-energy
//! law, the exact non-relativistic Wigner solution and its moments, and
//! numerical period detection from trajectories.

use crate::error::{Error, Result};
use crate::integrator::{step, StepControls, TrajectoryState};
use crate::model::{energy, PhasePoint};
use std::f64::consts::PI;

const AGM_MAX_ITER: usize = 40;

/// Complete elliptic integral of the first kind,
/// `K(m) = ∫₀^{π/2} dφ/√(1 − m sin²φ)`, by arithmetic-geometric-mean
/// iteration. The argument is the parameter m (the quantity multiplying
/// sin²φ), not the modulus.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if !m.is_finite() || !(0.0..1.0).contains(&m) {
        return Err(Error::Domain(format!("elliptic_k requires 0 <= m < 1, got {m}")));
    }
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
    }
    Ok(PI / (2.0 * a))
}

/// Complete elliptic integral of the second kind,
/// `E(m) = ∫₀^{π/2} √(1 − m sin²φ) dφ`, via the AGM with the
/// `Σ 2^{i-1} c_i²` correction series.
pub fn elliptic_e(m: f64) -> Result<f64> {
    if !m.is_finite() || !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain(format!("elliptic_e requires 0 <= m <= 1, got {m}")));
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    // Running Σ 2^{i-1} c_i², starting with c_0² = m.
    let mut c_sum = 0.5 * m;
    let mut weight = 0.5;
    for _ in 0..AGM_MAX_ITER {
        let c = 0.5 * (a - b);
        weight *= 2.0;
        c_sum += weight * c * c;
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        a = an;
        b = bn;
    }
    Ok(PI / (2.0 * a) * (1.0 - c_sum))
}

/// Oscillation period of a trajectory with total energy `e` (units ħω):
///
/// ```text
/// T(E) = 4√2 √(E/z + 1) E(k) − 4√2 / √(E/z + 1) K(k),   k = (E − z)/(E + z)
/// ```
///
/// in units of 1/ω. Reduces to 2π at E = z and grows like √E far above the
/// rest energy.
pub fn period(e: f64, z: f64) -> Result<f64> {
    if !(z.is_finite() && z > 0.0) {
        return Err(Error::Domain(format!("z must be positive, got {z}")));
    }
    if !e.is_finite() || e < z {
        return Err(Error::Domain(format!(
            "period requires E >= z (no states below the rest energy), got E = {e}, z = {z}"
        )));
    }
    let k = (e - z) / (e + z);
    let root = (e / z + 1.0).sqrt();
    let c = 4.0 * 2.0f64.sqrt();
    Ok(c * root * elliptic_e(k)? - c / root * elliptic_k(k)?)
}

/// Period measured from an actual trajectory: the spacing of successive
/// downward zero crossings of `p` (linearly interpolated inside the
/// bracketing step), averaged over four full oscillations. Momentum
/// crossings are used because `p` passes through zero transversally even
/// when the coordinate profile degenerates into zig-zag lines.
pub fn period_numeric(x0: f64, p0: f64, z: f64, controls: &StepControls) -> Result<f64> {
    controls.validate()?;
    if x0 == 0.0 && p0 == 0.0 {
        return Err(Error::Domain(
            "period of the resting trajectory (0, 0) is undefined".into(),
        ));
    }
    let start = PhasePoint::new(x0, p0);
    let estimate = period(energy(start, z), z)?;
    let t_cap = 10.0 * estimate;
    const WANTED: usize = 5; // four full periods

    let mut state = TrajectoryState::new(start);
    let mut crossings: Vec<f64> = Vec::with_capacity(WANTED);
    while state.t < t_cap && crossings.len() < WANTED {
        let prev = state;
        state = step(&prev, z, controls)?;
        if prev.point.p >= 0.0 && state.point.p < 0.0 {
            let frac = prev.point.p / (prev.point.p - state.point.p);
            crossings.push(prev.t + frac * controls.dt);
        }
    }
    if crossings.len() < WANTED {
        return Err(Error::NoCrossing {
            found: crossings.len(),
            searched: state.t,
            estimate,
        });
    }
    let spans = (crossings.len() - 1) as f64;
    Ok((crossings[crossings.len() - 1] - crossings[0]) / spans)
}

/// The exact non-relativistic Wigner function: the initial Gaussian rigidly
/// rotated by angle `t` in dimensionless phase space.
pub fn nonrel_wigner(x: f64, p: f64, t: f64, x_tilde: f64, p_tilde: f64) -> f64 {
    let xc = x_tilde * t.cos() + p_tilde * t.sin();
    let pc = p_tilde * t.cos() - x_tilde * t.sin();
    let dx = x - xc;
    let dp = p - pc;
    (-(dx * dx) - dp * dp).exp() / PI
}

/// Closed-form moments of [`nonrel_wigner`] at time `t`. The energy includes
/// the rest term `z` so it is directly comparable to the relativistic runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonRelMoments {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub energy: f64,
}

pub fn nonrel_moments(t: f64, x_tilde: f64, p_tilde: f64, z: f64) -> NonRelMoments {
    NonRelMoments {
        mean_x: x_tilde * t.cos() + p_tilde * t.sin(),
        mean_p: p_tilde * t.cos() - x_tilde * t.sin(),
        var_x: 0.5,
        var_p: 0.5,
        energy: 0.5 + 0.5 * p_tilde * p_tilde + 0.5 * x_tilde * x_tilde + z,
    }
}

/// One row of the period-scan output.
#[derive(Debug, Clone, Copy)]
pub struct PeriodScanRow {
    /// Trajectory energy in ħω.
    pub energy: f64,
    pub period_analytic: f64,
    pub period_numeric: f64,
    pub rel_err: f64,
}
