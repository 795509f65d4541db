//! Convergence study: interacting ground-state energy as the grand angular
//! momentum cutoff K_max grows, using the pinned comparison configuration
//! (GaAs, 5 meV confinement, zero field, material-default coupling).
//!
//! The trace is variational (monotone non-increasing) and the successive
//! decrements shrink geometrically, so the printed ratio estimates the
//! convergence rate of the hyperangular expansion.
//!
//! Run with: `cargo run --release --example ground_state_convergence`

use hyperdot::config::{resolve, Overrides, RawConfig};
use hyperdot::spectrum::ground_state_trace;
use std::path::Path;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/paper-comparison.toml");
    let raw = RawConfig::from_file(Path::new(path)).unwrap();
    let rc = resolve(&raw, &Overrides::default()).unwrap();

    println!(
        "GaAs dot: hbar omega_0 = {} meV, B = {} T, beta = {:.4} meV (material default), N_max = {}",
        rc.dot.hbar_omega0_mev, rc.dot.b_tesla, rc.dot.beta_mev, rc.solver.n_max
    );
    println!();

    let trace = ground_state_trace(&rc.dot, &rc.solver, &[0, 2, 4, 6]).unwrap();
    println!("{:>6} {:>6} {:>16} {:>12}", "K_max", "dim", "E0 (meV)", "decrement");
    let mut prev: Option<f64> = None;
    for e in &trace.entries {
        let dec = prev.map(|p| p - e.energy_mev);
        match dec {
            Some(d) => println!(
                "{:>6} {:>6} {:>16.9} {:>12.3e}",
                e.k_max, e.basis_dim, e.energy_mev, d
            ),
            None => println!("{:>6} {:>6} {:>16.9} {:>12}", e.k_max, e.basis_dim, e.energy_mev, "-"),
        }
        prev = Some(e.energy_mev);
    }
    println!();
    println!("successive decrement ratios: {:?}", trace.decrement_ratios);
    println!("(a ratio r < 1 indicates geometric convergence ~ r^(K/2))");
}
