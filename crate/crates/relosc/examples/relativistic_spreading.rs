//! Strong relativism (z = 0.1): the coherent state is no longer stationary
//! in shape. The phase-space distribution spreads, the mean oscillation
//! damps, and the late-time momentum distribution grows extra local maxima
//! ("protuberances") because the oscillation period increases with energy.
//!
//! Run with: cargo run --release --example relativistic_spreading

use relosc::analytics::period;
use relosc::histogram::{bin, detect_modes, linear_edges, HistogramKind};
use relosc::integrator::StepControls;
use relosc::observables::reduce;
use relosc::sampler::{sample_coherent, InitialState};

fn main() {
    let z = 0.1;
    let n = 20_000;
    // Dimensionless image of the physical center x = 6.3 c/w at z = 0.1.
    let x_center = 6.3 * z.sqrt();
    let controls = StepControls::new(0.01);

    let mut ens = sample_coherent(&InitialState::coherent(x_center, 0.0), n, 20240925).unwrap();
    let first = reduce(&ens, z).unwrap();
    println!(
        "z = {z}, n = {n}, center x = {x_center:.4}: <E> = {:.3} hw, T(<E>) = {:.1}",
        first.mean_energy,
        period(first.mean_energy, z).unwrap()
    );

    let e_max = ens.max_energy(z);
    let p_bound = 1.05 * (e_max * e_max / z - z).sqrt();
    let edges = linear_edges(-p_bound, p_bound, 256);

    println!(
        "{:>6} {:>10} {:>10} {:>14} {:>8}",
        "t", "<x>", "var x", "var p*var x", "modes"
    );
    let mut t = 0.0;
    loop {
        let rec = reduce(&ens, z).unwrap();
        let h = bin(&ens, HistogramKind::Momentum, &edges, z).unwrap();
        println!(
            "{:>6.1} {:>10.4} {:>10.4} {:>14.4} {:>8}",
            rec.t,
            rec.mean_x,
            rec.var_x,
            rec.uncertainty_product,
            detect_modes(&h, 5, 0.05)
        );
        if t >= 87.0 - 1e-9 {
            break;
        }
        t += 8.7;
        ens.propagate_to(t, z, &controls).unwrap();
    }
    println!();
    println!("(the uncertainty product starts at the quantum minimum 1/4 and grows,");
    println!(" and the late momentum distribution is multimodal)");
}
