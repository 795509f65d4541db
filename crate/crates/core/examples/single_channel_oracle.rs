//! Cross-validation of the matrix solver against a direct integration of the
//! radial differential equation.
//!
//! Restricted to the lowest angular state (K_max = 0), the problem reduces to
//! one radial equation whose potential is the trap plus
//! `beta~ (3 ln rho + B00)`. Two independent routes must agree:
//!   1. the spectral basis (Laguerre-type functions + analytic log moments),
//!   2. a finite-difference integration with Richardson extrapolation.
//!
//! Run with: `cargo run --release --example single_channel_oracle`

use hyperdot::hyperangular::{enumerate_channels, AngularGrid, YoungSector};
use hyperdot::potential::assemble_coupling;
use hyperdot::radial::{solve_radial_ode, PrefactorMode};
use hyperdot::spectrum::{assemble_relative, SolverOptions};

fn main() {
    let opts = SolverOptions {
        k_max: 0,
        n_max: 160,
        l_total: 0,
        sector: YoungSector::Symmetric,
        prefactor: PrefactorMode::Oracle,
        grid_alpha: 48,
        grid_phi: 16,
        overlap_threshold: 1e-10,
    };
    let op = assemble_relative(1.0, &opts).unwrap();

    let grid = AngularGrid::new(48, 16);
    let coupling = assemble_coupling(&enumerate_channels(0, 0, None), &grid).unwrap();
    let b00 = coupling.b[(0, 0)].re;
    println!("angular constant B00 = {b00:.12}");
    println!();
    println!(
        "{:>8} {:>16} {:>16} {:>10}",
        "beta~", "basis eps0", "ode eps0", "rel diff"
    );
    for beta_tilde in [0.0, 0.1, 0.5, 1.0, 2.0, 3.0] {
        let (eps, _) = op.solve(beta_tilde).unwrap();
        let v = move |rho: f64| beta_tilde * (3.0 * rho.ln() + b00);
        let ode = solve_radial_ode(0, &v, 4000, 16.0, 1)[0];
        let rel = (eps[0] - ode).abs() / ode.abs().max(1e-12);
        println!("{beta_tilde:>8.2} {:>16.10} {ode:>16.10} {rel:>10.2e}", eps[0]);
    }
    println!();
    println!("(basis values lie above the extrapolated integration: the basis is variational)");
}
