//! Quality checks on the hyperangular basis: quadrature orthonormality and
//! the grand-angular eigenvalue identity K(K+2).
//!
//! The channel functions are constructed from finite trigonometric sums; two
//! independent numerical probes confirm them: the Gram matrix under the
//! product quadrature grid, and a finite-difference Rayleigh quotient of the
//! grand angular Laplacian evaluated on a 1D alpha mesh.
//!
//! Run with: `cargo run --example harmonic_quality`

use hyperdot::hyperangular::{
    enumerate_channels, gram_matrix, grand_angular_eigenvalue, AngularGrid,
};
use hyperdot::numeric::C64;
use nalgebra::DMatrix;

fn main() {
    let grid = AngularGrid::new(64, 64);

    println!("Gram-matrix defect |G - I|_max by total momentum (K <= 6):");
    for l_total in 0..=3 {
        let channels = enumerate_channels(6, l_total, None);
        let gram = gram_matrix(&channels, &grid);
        let id = DMatrix::<C64>::identity(channels.len(), channels.len());
        println!(
            "  L = {l_total}: {:>3} channels, defect {:.2e}",
            channels.len(),
            (&gram - id).camax()
        );
    }

    println!();
    println!("grand-angular eigenvalue check (sample channels):");
    println!(
        "{:>4} {:>4} {:>4} {:>3} {:>14} {:>8} {:>10}",
        "K", "l1", "l2", "n", "quotient", "exact", "rel err"
    );
    for ch in enumerate_channels(6, 0, None).iter().chain(enumerate_channels(5, 1, None).iter()) {
        let val = grand_angular_eigenvalue(ch, 1500);
        let exact = f64::from(ch.k * (ch.k + 2));
        let err = if ch.k == 0 { val.abs() } else { (val - exact).abs() / exact };
        println!(
            "{:>4} {:>4} {:>4} {:>3} {:>14.8} {:>8} {:>10.2e}",
            ch.k, ch.l1, ch.l2, ch.n, val, exact, err
        );
    }
}
