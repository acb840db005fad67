//! Ensemble reductions: the phase-space averages of the paper's observables
//! at one snapshot time.
//!
//! Averages over the trajectory ensemble realize the Weyl-symbol integrals
//! `<A> = ∫ W(x,p;t) A(p,x) dp dx` for A in {p, x, v, E, dilation}.
//! Variances use the population convention (divisor n). All fields are kept
//! in dimensionless solver units; conversion to presentation units happens
//! at file output.

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::model::{energy, velocity};
use crate::reduce::pairwise_sum;

/// One output row of the time series, in dimensionless units.
///
/// `uncertainty_product` is the product of the momentum and coordinate
/// variances; the unit factors cancel, so the dimensionless value is already
/// in units of ħ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableRecord {
    pub t: f64,
    pub mean_p: f64,
    pub mean_x: f64,
    /// Mean velocity in units of c.
    pub mean_v: f64,
    /// Mean energy in ħω, rest energy included.
    pub mean_energy: f64,
    pub var_p: f64,
    pub var_x: f64,
    pub uncertainty_product: f64,
    pub mean_proper_time: f64,
}

/// Reduce the ensemble at its current time into one record.
pub fn reduce(ensemble: &Ensemble, z: f64) -> Result<ObservableRecord> {
    if ensemble.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let states = ensemble.states();
    let n = states.len();
    let nf = n as f64;

    let mean_p = pairwise_sum(n, &|i| states[i].point.p) / nf;
    let mean_x = pairwise_sum(n, &|i| states[i].point.x) / nf;
    let mean_v = pairwise_sum(n, &|i| velocity(states[i].point.p, z)) / nf;
    let mean_energy = pairwise_sum(n, &|i| energy(states[i].point, z)) / nf;
    let mean_proper_time = pairwise_sum(n, &|i| states[i].proper_time) / nf;
    let var_p = pairwise_sum(n, &|i| {
        let d = states[i].point.p - mean_p;
        d * d
    }) / nf;
    let var_x = pairwise_sum(n, &|i| {
        let d = states[i].point.x - mean_x;
        d * d
    }) / nf;

    Ok(ObservableRecord {
        t: ensemble.time(),
        mean_p,
        mean_x,
        mean_v,
        mean_energy,
        var_p,
        var_x,
        uncertainty_product: var_p * var_x,
        mean_proper_time,
    })
}

/// Maximum relative excursion of the mean energy from its initial value.
pub fn conservation_check(records: &[ObservableRecord]) -> Result<f64> {
    if records.len() < 2 {
        return Err(Error::Domain(
            "conservation check needs at least two records".into(),
        ));
    }
    let e0 = records[0].mean_energy;
    Ok(records
        .iter()
        .map(|r| ((r.mean_energy - e0) / e0).abs())
        .fold(0.0, f64::max))
}

/// The dilation curve t ↦ mean proper time.
pub fn dilation_series(records: &[ObservableRecord]) -> Vec<(f64, f64)> {
    records.iter().map(|r| (r.t, r.mean_proper_time)).collect()
}
