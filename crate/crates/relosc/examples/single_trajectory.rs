//! Individual virtual trajectories: the near-sinusoidal non-relativistic
//! motion at z = 100 against the zig-zag coordinate and rectangular-wave
//! velocity of a strongly relativistic trajectory at z = 0.1.
//!
//! Run with: cargo run --release --example single_trajectory

use relosc::analytics::period_numeric;
use relosc::integrator::{propagate, StepControls, TrajectoryState};
use relosc::model::{energy, velocity, PhasePoint, UnitSystem};
use std::f64::consts::PI;

fn ascii_profile(points: &[f64], width: usize) -> String {
    let max = points.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(1e-300);
    points
        .iter()
        .map(|&v| {
            let idx = ((v / max + 1.0) / 2.0 * (width - 1) as f64).round() as usize;
            let mut row = vec![' '; width];
            row[idx] = '*';
            row[width / 2] = if idx == width / 2 { '*' } else { '|' };
            row.into_iter().collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn sample_trajectory(x0_physical: f64, z: f64, t_end: f64, every: f64) -> (Vec<f64>, Vec<f64>) {
    let units = UnitSystem::new(z);
    let controls = StepControls::new(0.01);
    let mut state = TrajectoryState::new(PhasePoint::new(units.x_from_physical(x0_physical), 0.0));
    let mut xs = vec![units.x_to_physical(state.point.x)];
    let mut vs = vec![velocity(state.point.p, z)];
    let mut t = 0.0;
    while t < t_end - 1e-9 {
        t += every;
        state = propagate(state, t, z, &controls, |_| {}).unwrap();
        xs.push(units.x_to_physical(state.point.x));
        vs.push(velocity(state.point.p, z));
    }
    (xs, vs)
}

fn main() {
    let controls = StepControls::new(0.01);

    println!("== z = 100, x0 = 0.2 c/w: sinusoid with period 2 pi / w ==");
    let z = 100.0;
    let units = UnitSystem::new(z);
    let x0 = units.x_from_physical(0.2);
    let t = period_numeric(x0, 0.0, z, &controls).unwrap();
    println!("measured period: {t:.6}  (2 pi = {:.6})", 2.0 * PI);
    let (xs, _) = sample_trajectory(0.2, z, 13.0, 0.5);
    println!("x(t) profile:\n{}", ascii_profile(&xs, 41));

    println!();
    println!("== z = 0.1, x0 = 6.3 c/w: zig-zag coordinate, light-speed plateaus ==");
    let z = 0.1;
    let units = UnitSystem::new(z);
    let x0 = units.x_from_physical(6.3);
    let e = energy(PhasePoint::new(x0, 0.0), z);
    let t = period_numeric(x0, 0.0, z, &controls).unwrap();
    println!("dimensionless start x = {x0:.4}, energy = {e:.3} (hbar w), period = {t:.3}");
    let (xs, vs) = sample_trajectory(6.3, z, 1.55 * t, t / 40.0);
    println!("x(t) profile (zig-zag):\n{}", ascii_profile(&xs, 41));
    let near_light = vs.iter().filter(|v| v.abs() > 0.9).count();
    println!(
        "velocity samples with |v| > 0.9 c: {} of {} (rectangular wave)",
        near_light,
        vs.len()
    );
}
