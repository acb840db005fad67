//! The oscillation period against energy: closed form through elliptic
//! integrals versus direct measurement from integrated trajectories.
//!
//! Run with: cargo run --release --example period_law

use relosc::analytics::{period, period_numeric};
use relosc::integrator::StepControls;
use std::f64::consts::PI;

fn main() {
    let z = 0.1;
    let controls = StepControls::new(0.01);

    println!("z = {z}: period versus trajectory energy (non-relativistic value 2 pi = {:.4})", 2.0 * PI);
    println!(
        "{:>10} {:>14} {:>14} {:>12}",
        "E (hw)", "T analytic", "T numeric", "rel err"
    );
    for i in 0..10 {
        let e = 0.13 + (2.1 - 0.13) * i as f64 / 9.0;
        let analytic = period(e, z).unwrap();
        let x0 = (2.0 * (e - z)).sqrt();
        let numeric = period_numeric(x0, 0.0, z, &controls).unwrap();
        println!(
            "{e:>10.4} {analytic:>14.6} {numeric:>14.6} {:>12.2e}",
            (numeric - analytic).abs() / analytic
        );
    }

    println!();
    println!("growth far above the rest energy is T ~ sqrt(E):");
    for &e in &[10.0, 100.0, 1000.0] {
        let t = period(e, z).unwrap();
        println!("  T({e:>6}) = {t:>10.3}   T/sqrt(E) = {:.4}", t / e.sqrt());
    }
}
