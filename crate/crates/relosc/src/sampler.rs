//! Initial-ensemble sampling.
//!
//! The coherent state has the Gaussian Wigner function with dimensionless
//! marginal variances 1/2 in both coordinate and momentum, which saturates
//! the uncertainty product at ħ²/4. The delta state pins every trajectory to
//! one phase-space point; it is not a physical Wigner function (it fails the
//! purity restriction) but isolates single-trajectory behavior.
//!
//! Sampling is counter-based: trajectory `i` draws from an independent
//! ChaCha8 stream `(master seed, i)` and converts two uniforms with the
//! polar-angle (Box-Muller) transform. Both choices are fixed so that a
//! given seed yields bit-identical ensembles regardless of how generation
//! is partitioned across workers.

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::model::PhasePoint;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::TAU;

/// Dimensionless marginal variance of the coherent state, in both x and p.
pub const COHERENT_VARIANCE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Coherent,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    pub kind: StateKind,
    pub x_center: f64,
    pub p_center: f64,
}

impl InitialState {
    pub fn coherent(x_center: f64, p_center: f64) -> Self {
        InitialState {
            kind: StateKind::Coherent,
            x_center,
            p_center,
        }
    }

    pub fn delta(x_center: f64, p_center: f64) -> Self {
        InitialState {
            kind: StateKind::Delta,
            x_center,
            p_center,
        }
    }
}

/// Two standard normals from the trajectory's private stream.
fn gaussian_pair(seed: u64, index: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    // u1 in (0, 1], u2 in [0, 1); 53-bit mantissas.
    let u1 = ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    let u2 = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = TAU * u2;
    (r * theta.cos(), r * theta.sin())
}

/// Draw `n` phase points from the coherent-state Wigner function centered at
/// `(state.x_center, state.p_center)`. Fully determined by `seed` and
/// independent of worker partitioning.
pub fn sample_coherent(state: &InitialState, n: u64, seed: u64) -> Result<Ensemble> {
    if state.kind != StateKind::Coherent {
        return Err(Error::Config("sample_coherent requires a coherent state".into()));
    }
    if n == 0 {
        return Err(Error::Config("ensemble size must be at least 1".into()));
    }
    if !(state.x_center.is_finite() && state.p_center.is_finite()) {
        return Err(Error::Config("coherent-state center must be finite".into()));
    }
    let sigma = COHERENT_VARIANCE.sqrt();
    let points: Vec<PhasePoint> = (0..n)
        .into_par_iter()
        .map(|i| {
            let (gx, gp) = gaussian_pair(seed, i);
            PhasePoint::new(state.x_center + sigma * gx, state.p_center + sigma * gp)
        })
        .collect();
    Ok(Ensemble::from_points(points))
}

/// All `n` trajectories start at exactly `(x0, p0)`.
pub fn sample_delta(x0: f64, p0: f64, n: u64) -> Result<Ensemble> {
    if n == 0 {
        return Err(Error::Config("ensemble size must be at least 1".into()));
    }
    if !(x0.is_finite() && p0.is_finite()) {
        return Err(Error::Config("delta-state point must be finite".into()));
    }
    let point = PhasePoint::new(x0, p0);
    Ok(Ensemble::from_points(vec![point; n as usize]))
}

/// Whether the initial state is an admissible (pure Gaussian) Wigner
/// function: the coherent state saturates the uncertainty product exactly,
/// the delta state violates it and is admitted only as a diagnostic.
pub fn check_purity(state: &InitialState) -> bool {
    state.kind == StateKind::Coherent
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherent_moments_match_the_distribution() {
        let n = 100_000u64;
        let state = InitialState::coherent(1.9922, 0.0);
        let ens = sample_coherent(&state, n, 20240925).unwrap();
        let nf = n as f64;
        let mean_x: f64 = ens.states().iter().map(|s| s.point.x).sum::<f64>() / nf;
        let mean_p: f64 = ens.states().iter().map(|s| s.point.p).sum::<f64>() / nf;
        let var_x: f64 = ens
            .states()
            .iter()
            .map(|s| (s.point.x - mean_x).powi(2))
            .sum::<f64>()
            / nf;
        let var_p: f64 = ens
            .states()
            .iter()
            .map(|s| (s.point.p - mean_p).powi(2))
            .sum::<f64>()
            / nf;
        let cov: f64 = ens
            .states()
            .iter()
            .map(|s| (s.point.x - mean_x) * (s.point.p - mean_p))
            .sum::<f64>()
            / nf;

        let tol_mean = 5.0 * (COHERENT_VARIANCE / nf).sqrt();
        assert!((mean_x - 1.9922).abs() < tol_mean, "mean_x off: {mean_x}");
        assert!(mean_p.abs() < tol_mean, "mean_p off: {mean_p}");
        assert!((var_x - 0.5).abs() < 0.05 * 0.5, "var_x off: {var_x}");
        assert!((var_p - 0.5).abs() < 0.05 * 0.5, "var_p off: {var_p}");
        // Uncertainty product at its quantum minimum ħ²/4.
        assert!((var_x * var_p - 0.25).abs() < 0.02, "product off: {}", var_x * var_p);
        // x and p draws are independent.
        assert!(cov.abs() < 5.0 * 0.5 / nf.sqrt(), "cross-covariance off: {cov}");
    }

    #[test]
    fn sampling_is_deterministic_and_partition_invariant() {
        let state = InitialState::coherent(0.3, -0.2);
        let a = sample_coherent(&state, 4096, 7).unwrap();
        let b = sample_coherent(&state, 4096, 7).unwrap();
        for (sa, sb) in a.states().iter().zip(b.states()) {
            assert_eq!(sa.point.x.to_bits(), sb.point.x.to_bits());
            assert_eq!(sa.point.p.to_bits(), sb.point.p.to_bits());
        }
        // Serial reference: same per-index streams, no rayon involved.
        for (i, s) in a.states().iter().enumerate().step_by(97) {
            let (gx, gp) = gaussian_pair(7, i as u64);
            let sigma = COHERENT_VARIANCE.sqrt();
            assert_eq!(s.point.x.to_bits(), (0.3 + sigma * gx).to_bits());
            assert_eq!(s.point.p.to_bits(), (-0.2 + sigma * gp).to_bits());
        }
        let c = sample_coherent(&state, 4096, 8).unwrap();
        assert_ne!(
            a.states()[0].point.x.to_bits(),
            c.states()[0].point.x.to_bits(),
            "different seeds must differ"
        );
    }

    #[test]
    fn delta_is_a_spike() {
        let ens = sample_delta(6.3, 0.0, 1).unwrap();
        assert_eq!(ens.len(), 1);
        assert_eq!(ens.states()[0].point, PhasePoint::new(6.3, 0.0));
        let many = sample_delta(-1.0, 2.0, 17).unwrap();
        assert!(many
            .states()
            .iter()
            .all(|s| s.point == PhasePoint::new(-1.0, 2.0)));
    }

    #[test]
    fn input_validation() {
        assert!(sample_delta(f64::NAN, 0.0, 1).is_err());
        assert!(sample_delta(0.0, 0.0, 0).is_err());
        let state = InitialState::coherent(0.0, 0.0);
        assert!(sample_coherent(&state, 0, 1).is_err());
        assert!(sample_coherent(&InitialState::delta(0.0, 0.0), 5, 1).is_err());
    }

    #[test]
    fn purity_gate() {
        assert!(check_purity(&InitialState::coherent(0.0, 0.0)));
        assert!(check_purity(&InitialState::coherent(123.4, -5.0)));
        assert!(!check_purity(&InitialState::delta(0.0, 0.0)));
    }
}
