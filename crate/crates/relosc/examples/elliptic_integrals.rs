//! Complete elliptic integrals K(m) and E(m) by AGM iteration, and the
//! identities they satisfy.
//!
//! Run with: cargo run --release --example elliptic_integrals

use relosc::analytics::{elliptic_e, elliptic_k};
use std::f64::consts::FRAC_PI_2;

fn main() {
    println!("{:>6} {:>20} {:>20}", "m", "K(m)", "E(m)");
    for i in 0..=10 {
        let m = i as f64 / 10.0;
        let k = if m < 1.0 {
            format!("{:.15}", elliptic_k(m).unwrap())
        } else {
            "divergent".to_string()
        };
        println!("{m:>6.2} {k:>20} {:>20.15}", elliptic_e(m).unwrap());
    }

    println!();
    println!("Legendre relation  E(m)K(1-m) + E(1-m)K(m) - K(m)K(1-m) = pi/2");
    for &m in &[0.1, 0.5, 0.9] {
        let lhs = elliptic_e(m).unwrap() * elliptic_k(1.0 - m).unwrap()
            + elliptic_e(1.0 - m).unwrap() * elliptic_k(m).unwrap()
            - elliptic_k(m).unwrap() * elliptic_k(1.0 - m).unwrap();
        println!("  m = {m}: residual = {:+.3e}", lhs - FRAC_PI_2);
    }

    println!();
    println!("logarithmic divergence at m -> 1:");
    for &eps in &[1e-4, 1e-6, 1e-8] {
        let k = elliptic_k(1.0 - eps).unwrap();
        let asymptote = (4.0 / eps.sqrt()).ln();
        println!("  K(1 - {eps:.0e}) = {k:.9}   ln(4/sqrt(1-m)) = {asymptote:.9}");
    }
}
