//! An indexed collection of trajectories sharing a common lab time.

use crate::error::Result;
use crate::integrator::{propagate, StepControls, TrajectoryState};
use crate::model::{energy, PhasePoint};
use rayon::prelude::*;

/// The trajectory ensemble. All members share the same lab time; each keeps
/// its own accumulated proper time.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    states: Vec<TrajectoryState>,
}

impl Ensemble {
    /// Wrap freshly sampled phase points at t = 0.
    pub fn from_points(points: Vec<PhasePoint>) -> Self {
        Ensemble {
            states: points.into_iter().map(TrajectoryState::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[TrajectoryState] {
        &self.states
    }

    /// Common lab time of the ensemble.
    pub fn time(&self) -> f64 {
        self.states.first().map_or(0.0, |s| s.t)
    }

    /// Largest trajectory energy, which bounds every later |p| and |x|
    /// through conservation. Useful for fixing histogram ranges up front.
    pub fn max_energy(&self, z: f64) -> f64 {
        self.states
            .par_iter()
            .map(|s| energy(s.point, z))
            .reduce(|| f64::NEG_INFINITY, f64::max)
    }

    /// Advance every trajectory to `t_target`. Work is split across the
    /// current rayon pool; per-trajectory results are identical for any
    /// worker count, and on failure the error of the lowest trajectory
    /// index is reported so failures are deterministic too.
    pub fn propagate_to(&mut self, t_target: f64, z: f64, controls: &StepControls) -> Result<()> {
        let results: Vec<Result<TrajectoryState>> = self
            .states
            .par_iter()
            .map(|s| propagate(*s, t_target, z, controls, |_| {}))
            .collect();
        let mut new_states = Vec::with_capacity(self.states.len());
        for r in results {
            new_states.push(r?);
        }
        self.states = new_states;
        Ok(())
    }
}

impl From<Vec<TrajectoryState>> for Ensemble {
    fn from(states: Vec<TrajectoryState>) -> Self {
        Ensemble { states }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn propagation_advances_everyone_to_target() {
        let mut ens = Ensemble::from_points(vec![
            PhasePoint::new(1.0, 0.0),
            PhasePoint::new(0.0, 0.0),
            PhasePoint::new(-0.5, 0.7),
        ]);
        ens.propagate_to(2.5, 1.0, &StepControls::new(0.01)).unwrap();
        assert!(ens.states().iter().all(|s| (s.t - 2.5).abs() < 1e-12));
        assert!((ens.time() - 2.5).abs() < 1e-12);
        // The resting member stayed put and its proper time tracks lab time
        // through exactly the same additions.
        assert_eq!(ens.states()[1].point, PhasePoint::new(0.0, 0.0));
        assert_eq!(ens.states()[1].proper_time, ens.states()[1].t);
    }

    #[test]
    fn failure_is_reported_for_lowest_index() {
        let mut ens = Ensemble::from_points(vec![PhasePoint::new(0.0, 0.0); 8]);
        let bad = StepControls {
            dt: 0.01,
            fp_tol: -1.0,
            fp_max_iter: 5,
        };
        assert!(ens.propagate_to(1.0, 1.0, &bad).is_err());
    }

    #[test]
    fn max_energy_bounds_members() {
        let ens = Ensemble::from_points(vec![
            PhasePoint::new(2.0, 0.0),
            PhasePoint::new(0.0, 1.0),
        ]);
        let e = ens.max_energy(0.1);
        assert!((e - 2.1).abs() < 1e-12);
    }
}
