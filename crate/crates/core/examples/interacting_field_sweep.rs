//! Full pipeline: interacting relative-motion levels versus magnetic field.
//!
//! The field-independent operator is assembled once; each field point only
//! rescales the dimensionless coupling and re-solves, so sweeps are cheap.
//! Output uses the same CSV schema as the command-line tool
//! (`sweep_param,<labels...>,energy_meV`).
//!
//! Run with: `cargo run --release --example interacting_field_sweep`

use hyperdot::hyperangular::YoungSector;
use hyperdot::radial::PrefactorMode;
use hyperdot::spectrum::{field_sweep, linspace, SolverOptions, SweepKind};
use hyperdot::units::{DotConfig, MaterialParams};

fn main() {
    let dot = DotConfig::new(5.0, 0.0, 7.956397843761283, 1.0, MaterialParams::gaas()).unwrap();
    let opts = SolverOptions {
        k_max: 6,
        n_max: 12,
        l_total: 0,
        sector: YoungSector::Symmetric,
        prefactor: PrefactorMode::Paper,
        grid_alpha: 64,
        grid_phi: 64,
        overlap_threshold: 1e-10,
    };

    let b_grid = linspace(0.0, 8.0, 9).unwrap();
    let table = field_sweep(&dot, &opts, SweepKind::RelInteracting, &b_grid, 3).unwrap();

    println!("{}", table.to_csv());
    eprintln!(
        "({} rows; level energies include the -hbar omega_L L Zeeman shift, L = {})",
        table.rows.len(),
        opts.l_total
    );
}
