//! Exchange symmetry on the channel space: the six particle permutations act
//! through unitary matrices, and group-averaged projectors split each K block
//! into symmetric, mixed, and antisymmetric sectors.
//!
//! The printed dimensions satisfy the completeness identity
//! `d_sym + d_anti + 2 d_mixed = n_channels` on every block, and the mixed
//! sector is the one populated by spin-1/2 (doublet) states.
//!
//! Run with: `cargo run --example exchange_sectors`

use hyperdot::hyperangular::{
    block_channels, sector_dimensions, symmetrize, AngularGrid, YoungSector,
};

fn main() {
    let grid = AngularGrid::new(64, 64);

    println!("sector dimensions per (K, L = 0) block:");
    println!("{:>4} {:>10} {:>10} {:>6} {:>14}", "K", "channels", "symmetric", "mixed", "antisymmetric");
    for k in [0u32, 2, 4, 6] {
        let channels = block_channels(k, 0);
        let (s, m, a) = sector_dimensions(&channels, &grid).unwrap();
        println!("{k:>4} {:>10} {s:>10} {m:>6} {a:>14}", channels.len());
        assert_eq!(s + a + 2 * m, channels.len(), "completeness identity violated");
    }

    println!();
    println!("symmetrized basis for K <= 6, L = 0, symmetric sector:");
    let channels = hyperdot::hyperangular::enumerate_channels(6, 0, None);
    let basis = symmetrize(&channels, YoungSector::Symmetric, &grid).unwrap();
    println!("  {} channels -> {} states", channels.len(), basis.n_states());
    for s in 0..basis.n_states() {
        let mut parts: Vec<String> = Vec::new();
        for (i, ch) in channels.iter().enumerate() {
            let w = basis.coeffs[(i, s)];
            if w.norm() > 1e-8 {
                parts.push(format!(
                    "{:+.4} x (K={},l1={},l2={},n={})",
                    w.re, ch.k, ch.l1, ch.l2, ch.n
                ));
            }
        }
        println!("  state {s}: {}", parts.join("  "));
    }

    println!();
    println!("(the mixed column is the physical sector for three spin-1/2 particles");
    println!(" in a spin doublet; the antisymmetric one pairs with the spin quartet)");
}
