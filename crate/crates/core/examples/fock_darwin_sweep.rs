//! Center-of-mass spectrum in a magnetic field: the Fock-Darwin fan.
//!
//! Sweeps the field, prints the lowest levels, and locates the first
//! crossing between the (n=1, m=0) and (n=0, m=3) levels, comparing the
//! measured field with the closed-form prediction
//! `omega_L / omega_0 = r / sqrt(1 - r^2)` at `r = Delta_nu / Delta_m = 1/3`
//! (`nu = 2n + |m| + 1` runs 3 -> 4 while `m` runs 0 -> 3).
//!
//! Run with: `cargo run --example fock_darwin_sweep`

use hyperdot::spectrum::{fock_darwin_levels, fock_darwin_mev};
use hyperdot::units::{larmor_energy_mev, Frequencies, MaterialParams};

fn main() {
    let material = MaterialParams::gaas();
    let hbar_omega0 = 5.0;

    println!("lowest center-of-mass levels (meV), GaAs, hbar omega_0 = {hbar_omega0} meV");
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "B (T)", "E0", "E1", "E2", "E3");
    for i in 0..=8 {
        let b = 0.5 * f64::from(i);
        let f = Frequencies::new(hbar_omega0, b, material);
        let levels = fock_darwin_levels(&f, 4);
        println!(
            "{:>8.2} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            b, levels[0].2, levels[1].2, levels[2].2, levels[3].2
        );
    }

    // Crossing of (1,0) and (0,3): Delta nu = 1, Delta m = 3, so the levels
    // cross where omega_L/omega_0 = (1/3)/sqrt(1-(1/3)^2) = 1/(2 sqrt 2).
    let r: f64 = 1.0 / 3.0;
    let x_pred = r / (1.0 - r * r).sqrt();
    let b_pred = x_pred * hbar_omega0 / larmor_energy_mev(1.0, material);

    let gap = |b: f64| {
        let f = Frequencies::new(hbar_omega0, b, material);
        fock_darwin_mev(1, 0, &f) - fock_darwin_mev(0, 3, &f)
    };
    let (mut lo, mut hi) = (0.0f64, 20.0f64);
    assert!(gap(lo) * gap(hi) < 0.0, "no sign change in the sweep window");
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if gap(lo) * gap(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let b_meas = 0.5 * (lo + hi);
    println!();
    println!("crossing of (n,m) = (1,0) and (0,3):");
    println!("  predicted  B = {b_pred:.6} T  (omega_L/omega_0 = {x_pred:.6})");
    println!("  bisected   B = {b_meas:.6} T");
    println!("  difference   = {:.2e} T", (b_meas - b_pred).abs());
}
