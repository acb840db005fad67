//! A weakly relativistic (z = 100) coherent ensemble stays on the exact
//! non-relativistic solution: means follow the classical rotation, the
//! dispersions stay at 1/2, and the uncertainty product pins to its quantum
//! minimum of 1/4.
//!
//! Run with: cargo run --release --example coherent_ensemble

use relosc::analytics::nonrel_moments;
use relosc::integrator::StepControls;
use relosc::observables::{conservation_check, reduce};
use relosc::sampler::{sample_coherent, InitialState};

fn main() {
    let z = 100.0;
    let n = 10_000;
    let x_center = 0.5;
    let controls = StepControls::new(0.01);
    let mut ens = sample_coherent(&InitialState::coherent(x_center, 0.0), n, 7).unwrap();

    println!("z = {z}, n = {n}, coherent center ({x_center}, 0)");
    println!(
        "{:>6} {:>10} {:>10} {:>9} {:>9} {:>12}",
        "t", "<x>", "oracle", "var x", "var p", "var p*var x"
    );
    let mut records = vec![reduce(&ens, z).unwrap()];
    let mut t = 0.0;
    while t < 20.0 - 1e-9 {
        t += 0.1;
        ens.propagate_to(t, z, &controls).unwrap();
        records.push(reduce(&ens, z).unwrap());
    }
    for rec in records.iter().step_by(20) {
        let oracle = nonrel_moments(rec.t, x_center, 0.0, z);
        println!(
            "{:>6.1} {:>10.4} {:>10.4} {:>9.4} {:>9.4} {:>12.4}",
            rec.t, rec.mean_x, oracle.mean_x, rec.var_x, rec.var_p, rec.uncertainty_product
        );
    }

    let sigma = (0.5 / n as f64).sqrt();
    let worst = records
        .iter()
        .map(|r| (r.mean_x - nonrel_moments(r.t, x_center, 0.0, z).mean_x).abs() / sigma)
        .fold(0.0, f64::max);
    println!();
    println!("worst |<x> - oracle| over the run: {worst:.1} Monte Carlo sigma");
    println!(
        "mean-energy drift over the run: {:.2e} (conservative system)",
        conservation_check(&records).unwrap()
    );
}
