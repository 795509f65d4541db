//! Consistency check: with the pair interaction switched off, the full
//! machinery (channel enumeration, exchange projection, radial basis,
//! generalized eigensolve) must collapse to the closed-form oscillator
//! ladder `c (2N + K + 2)` in both ladder conventions.
//!
//! Run with: `cargo run --example noninteracting_ladder`

use hyperdot::hyperangular::YoungSector;
use hyperdot::radial::PrefactorMode;
use hyperdot::spectrum::{solve_relative, SolverOptions};
use hyperdot::units::{DotConfig, MaterialParams};

fn main() {
    let dot = DotConfig::new(5.0, 0.0, 0.0, 1.0, MaterialParams::gaas()).unwrap();

    for mode in [PrefactorMode::Oracle, PrefactorMode::Paper] {
        let opts = SolverOptions {
            k_max: 4,
            n_max: 3,
            l_total: 0,
            sector: YoungSector::Symmetric,
            prefactor: mode,
            grid_alpha: 48,
            grid_phi: 32,
            overlap_threshold: 1e-10,
        };
        let sol = solve_relative(&dot, &opts).unwrap();

        // Symmetric angular states below K = 4 at L = 0 carry K = 0 and K = 4.
        let mut ladder: Vec<(u32, u32, f64)> = Vec::new();
        for k in [0u32, 4] {
            for n in 0..=3u32 {
                ladder.push((k, n, mode.value() * 5.0 * f64::from(2 * n + k + 2)));
            }
        }
        ladder.sort_by(|a, b| a.2.total_cmp(&b.2));

        println!("convention {:?} (ladder scale c = {:.6}):", mode, mode.value());
        println!("{:>4} {:>4} {:>14} {:>14} {:>10}", "K", "N", "computed", "closed form", "error");
        let mut worst = 0.0f64;
        for ((k, n, want), got) in ladder.iter().zip(&sol.energies_mev) {
            let err = (got - want).abs();
            worst = worst.max(err);
            println!("{k:>4} {n:>4} {got:>14.8} {want:>14.8} {err:>10.2e}");
        }
        println!("worst absolute error: {worst:.2e} meV\n");
    }
}
