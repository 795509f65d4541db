//! Hyperspherical harmonics on the unit 3-sphere of the 4D relative space,
//! angular quadrature, Raynal-Revai (kinematic-rotation) transforms, and S3
//! symmetrization.
//!
//! A channel `(K, l1, l2, n)` with `K = 2n + |l1| + |l2|` carries the harmonic
//!
//! ```text
//! Phi(alpha, phi1, phi2) = N * P_n^{l1 l2}(alpha) * exp(i l1 phi1) * exp(i l2 phi2)
//! P_n^{l1 l2}(alpha) = sum_{m=0}^{n} (-1)^{n-m} C(n+|l2|, m) C(n+|l1|, n-m)
//!                      cos(alpha)^{2m+|l1|} sin(alpha)^{2(n-m)+|l2|}
//! ```
//!
//! which equals `cos^|l1| sin^|l2| * JacobiP_n^(|l2|,|l1|)(cos 2 alpha)` and is
//! an eigenfunction of the grand angular Laplacian with eigenvalue `-K(K+2)`.
//! The measure is `cos(alpha) sin(alpha) d(alpha) d(phi1) d(phi2)`, total
//! volume `2 pi^2`.
//!
//! All transformation matrices (kinematic rotations between Jacobi sets and
//! the S3 permutation actions, which are rotations/reflections of the (X, Y)
//! doublet) are computed as quadrature overlaps on [`AngularGrid`]; no closed
//! forms are used. Unitarity, the 3-cycle composition identity, and exact
//! own-pair exchange phases serve as correctness gates.

use crate::jacobi::{connecting_angle, JacobiSet};
use crate::numeric::{factorial, gauss_legendre_on, C64};
use crate::Error;
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

// ---------------------------------------------------------------------------
// channels
// ---------------------------------------------------------------------------

/// One hyperspherical channel: grand angular momentum `K`, planar angular
/// momenta `l1` (pair vector) and `l2` (spectator vector), radial-node index
/// `n`, bound by `K = 2n + |l1| + |l2|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Channel {
    pub k: u32,
    pub l1: i32,
    pub l2: i32,
    pub n: u32,
}

impl Channel {
    pub fn new(k: u32, l1: i32, l2: i32, n: u32) -> Result<Self, Error> {
        if 2 * n + l1.unsigned_abs() + l2.unsigned_abs() != k {
            return Err(Error::Config(format!(
                "invalid channel: K = {k} but 2n+|l1|+|l2| = {}",
                2 * n + l1.unsigned_abs() + l2.unsigned_abs()
            )));
        }
        Ok(Self { k, l1, l2, n })
    }

    /// Total planar angular momentum L = l1 + l2.
    pub fn l_total(&self) -> i32 {
        self.l1 + self.l2
    }
}

/// All channels with `K <= k_max` and `l1 + l2 = l_total`, ordered by
/// (K ascending, l1 ascending). `k_parity`, if given, keeps only K with that
/// parity (note `K = l_total mod 2` always, so this is a consistency filter).
pub fn enumerate_channels(k_max: u32, l_total: i32, k_parity: Option<u32>) -> Vec<Channel> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        if (k as i32 - l_total).rem_euclid(2) != 0 {
            continue;
        }
        if let Some(p) = k_parity {
            if k % 2 != p % 2 {
                continue;
            }
        }
        for l1 in -(k as i32)..=(k as i32) {
            let l2 = l_total - l1;
            let bars = l1.unsigned_abs() + l2.unsigned_abs();
            if bars > k || (k - bars) % 2 != 0 {
                continue;
            }
            let n = (k - bars) / 2;
            out.push(Channel { k, l1, l2, n });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// harmonic evaluation
// ---------------------------------------------------------------------------

/// The alpha-dependent polynomial part `P_n^{l1 l2}(alpha)` (finite sum form).
pub fn jacobi_poly_alpha(n: u32, l1: i32, l2: i32, alpha: f64) -> f64 {
    let a1 = l1.unsigned_abs();
    let a2 = l2.unsigned_abs();
    let (c, s) = (alpha.cos(), alpha.sin());
    let mut acc = 0.0;
    for m in 0..=n {
        let sign = if (n - m) % 2 == 0 { 1.0 } else { -1.0 };
        let coef = binomial(n + a2, m) * binomial(n + a1, n - m);
        acc += sign * coef * c.powi((2 * m + a1) as i32) * s.powi((2 * (n - m) + a2) as i32);
    }
    acc
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// L2 normalization constant of the harmonic over the full measure
/// (including both phi circles).
pub fn normalization(n: u32, l1: i32, l2: i32) -> f64 {
    let a1 = l1.unsigned_abs();
    let a2 = l2.unsigned_abs();
    let k = 2 * n + a1 + a2;
    ((f64::from(k) + 1.0) * factorial(n) * factorial(n + a1 + a2)
        / (2.0 * PI * PI * factorial(n + a1) * factorial(n + a2)))
    .sqrt()
}

/// Full harmonic value at a point of the unit 3-sphere.
pub fn eval_harmonic(ch: &Channel, alpha: f64, phi1: f64, phi2: f64) -> C64 {
    let amp = normalization(ch.n, ch.l1, ch.l2) * jacobi_poly_alpha(ch.n, ch.l1, ch.l2, alpha);
    let phase = f64::from(ch.l1) * phi1 + f64::from(ch.l2) * phi2;
    C64::from_polar(amp, phase)
}

// ---------------------------------------------------------------------------
// angular quadrature grid
// ---------------------------------------------------------------------------

/// Product quadrature on the 3-sphere: Gauss-Legendre in alpha on
/// [0, pi/2] with the cos*sin measure folded into the weights, uniform
/// (trapezoidal/periodic) grids in phi1 and phi2.
///
/// Exact for products of harmonics up to `K <= (n_phi - 1)/2` in the phases
/// and spectrally accurate in alpha; the defaults (64, 64) cover K <= 16
/// with large margin.
#[derive(Debug, Clone)]
pub struct AngularGrid {
    pub alpha_nodes: Vec<f64>,
    /// Gauss-Legendre weight times cos(alpha) sin(alpha).
    pub alpha_weights: Vec<f64>,
    pub phi_nodes: Vec<f64>,
    /// Weight per phi node (2 pi / n_phi).
    pub phi_weight: f64,
}

impl AngularGrid {
    pub fn new(n_alpha: usize, n_phi: usize) -> Self {
        let (nodes, w) = gauss_legendre_on(n_alpha, 0.0, FRAC_PI_2);
        let alpha_weights = nodes
            .iter()
            .zip(&w)
            .map(|(a, w)| w * a.cos() * a.sin())
            .collect();
        let phi_nodes = (0..n_phi).map(|p| 2.0 * PI * p as f64 / n_phi as f64).collect();
        AngularGrid {
            alpha_nodes: nodes,
            alpha_weights,
            phi_nodes,
            phi_weight: 2.0 * PI / n_phi as f64,
        }
    }

    /// Default: alpha order 64, phi order 64.
    pub fn default_grid() -> Self {
        Self::new(64, 64)
    }

    /// Sum of all weights; equals the 3-sphere volume 2 pi^2.
    pub fn total_weight(&self) -> f64 {
        let wa: f64 = self.alpha_weights.iter().sum();
        let n_phi = self.phi_nodes.len() as f64;
        wa * (self.phi_weight * n_phi).powi(2)
    }

    /// Integrate an arbitrary function of the three angles.
    pub fn integrate(&self, f: impl Fn(f64, f64, f64) -> C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (a, wa) in self.alpha_nodes.iter().zip(&self.alpha_weights) {
            for p1 in &self.phi_nodes {
                for p2 in &self.phi_nodes {
                    acc += f(*a, *p1, *p2) * C64::new(wa * self.phi_weight * self.phi_weight, 0.0);
                }
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// linear maps of the Jacobi doublet (rotations and reflections)
// ---------------------------------------------------------------------------

/// Orthogonal 2x2 map acting on the Jacobi doublet (X, Y):
/// `X' = m00 X + m01 Y`, `Y' = m10 X + m11 Y`. Kinematic rotations have
/// det +1; pair transpositions have det -1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubletMap {
    pub m: [[f64; 2]; 2],
}

impl DoubletMap {
    pub fn identity() -> Self {
        Self { m: [[1.0, 0.0], [0.0, 1.0]] }
    }

    /// Kinematic rotation by `phi` (same convention as `jacobi::rotate_jacobi`).
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self { m: [[c, s], [-s, c]] }
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn compose(&self, inner: &DoubletMap) -> Self {
        let mut m = [[0.0; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] = self.m[r][0] * inner.m[0][c] + self.m[r][1] * inner.m[1][c];
            }
        }
        Self { m }
    }

    /// Map hypersphere angles: build the unit 4-vector, transform, re-extract
    /// angles (canonicalized at the degenerate circles).
    pub fn map_angles(&self, alpha: f64, phi1: f64, phi2: f64) -> (f64, f64, f64) {
        let (ca, sa) = (alpha.cos(), alpha.sin());
        let x = [ca * phi1.cos(), ca * phi1.sin()];
        let y = [sa * phi2.cos(), sa * phi2.sin()];
        let xp = [
            self.m[0][0] * x[0] + self.m[0][1] * y[0],
            self.m[0][0] * x[1] + self.m[0][1] * y[1],
        ];
        let yp = [
            self.m[1][0] * x[0] + self.m[1][1] * y[0],
            self.m[1][0] * x[1] + self.m[1][1] * y[1],
        ];
        let xm = xp[0].hypot(xp[1]);
        let ym = yp[0].hypot(yp[1]);
        let alpha_p = ym.atan2(xm);
        let phi1_p = if xm == 0.0 { 0.0 } else { xp[1].atan2(xp[0]) };
        let phi2_p = if ym == 0.0 { 0.0 } else { yp[1].atan2(yp[0]) };
        (alpha_p, phi1_p, phi2_p)
    }
}

/// The six S3 permutations of the particle labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Permutation {
    Identity,
    /// 3-cycle mapping configuration (r1, r2, r3) -> (r3, r1, r2).
    Cycle,
    /// The inverse 3-cycle.
    CycleInv,
    Swap12,
    Swap13,
    Swap23,
}

impl Permutation {
    pub const ALL: [Permutation; 6] = [
        Permutation::Identity,
        Permutation::Cycle,
        Permutation::CycleInv,
        Permutation::Swap12,
        Permutation::Swap13,
        Permutation::Swap23,
    ];

    pub fn sign(self) -> f64 {
        match self {
            Permutation::Identity | Permutation::Cycle | Permutation::CycleInv => 1.0,
            _ => -1.0,
        }
    }

    /// Action on the reference Jacobi doublet (set 1: pair (2,3), spectator 1).
    /// Transpositions are reflections (det -1); 3-cycles are rotations by
    /// +-2pi/3. Derived by direct substitution in the Jacobi definitions.
    pub fn doublet_map(self) -> DoubletMap {
        let h = 0.5;
        let q = 3.0f64.sqrt() / 2.0;
        match self {
            Permutation::Identity => DoubletMap::identity(),
            Permutation::Cycle => DoubletMap { m: [[-h, q], [-q, -h]] },
            Permutation::CycleInv => DoubletMap { m: [[-h, -q], [q, -h]] },
            Permutation::Swap12 => DoubletMap { m: [[h, q], [q, -h]] },
            Permutation::Swap13 => DoubletMap { m: [[h, -q], [-q, -h]] },
            Permutation::Swap23 => DoubletMap { m: [[-1.0, 0.0], [0.0, 1.0]] },
        }
    }
}

// ---------------------------------------------------------------------------
// overlap machinery: matrix of a doublet map in a channel basis
// ---------------------------------------------------------------------------

/// Matrix `D[r][c] = <Phi_r | Phi_c o M>` on the angular grid: the expansion
/// of the composed harmonics in the unmapped basis. For maps that preserve
/// (K, L) — all kinematic rotations and permutation actions — `D` is unitary
/// on each (K, L) block.
///
/// Parallelized over alpha slices with an ordered sequential reduction, so
/// results are bit-identical for any thread count.
pub fn channel_map_matrix(channels: &[Channel], map: &DoubletMap, grid: &AngularGrid) -> DMatrix<C64> {
    let dim = channels.len();
    let nphi = grid.phi_nodes.len();
    // Precompute normalization constants.
    let norms: Vec<f64> = channels.iter().map(|c| normalization(c.n, c.l1, c.l2)).collect();
    let partials: Vec<DMatrix<C64>> = (0..grid.alpha_nodes.len())
        .into_par_iter()
        .map(|ia| {
            let alpha = grid.alpha_nodes[ia];
            let wa = grid.alpha_weights[ia];
            let mut d = DMatrix::<C64>::zeros(dim, dim);
            // alpha part of the unmapped harmonics is constant on the slice.
            let amp: Vec<f64> = channels
                .iter()
                .zip(&norms)
                .map(|(c, n)| n * jacobi_poly_alpha(c.n, c.l1, c.l2, alpha))
                .collect();
            let mut vals = vec![C64::new(0.0, 0.0); dim];
            let mut mapped = vec![C64::new(0.0, 0.0); dim];
            for ip1 in 0..nphi {
                let phi1 = grid.phi_nodes[ip1];
                for ip2 in 0..nphi {
                    let phi2 = grid.phi_nodes[ip2];
                    let w = wa * grid.phi_weight * grid.phi_weight;
                    let (am, p1m, p2m) = map.map_angles(alpha, phi1, phi2);
                    for (i, c) in channels.iter().enumerate() {
                        vals[i] = C64::from_polar(
                            amp[i],
                            f64::from(c.l1) * phi1 + f64::from(c.l2) * phi2,
                        );
                        mapped[i] = eval_harmonic(c, am, p1m, p2m);
                    }
                    for r in 0..dim {
                        let wconj = vals[r].conj() * w;
                        for c in 0..dim {
                            d[(r, c)] += wconj * mapped[c];
                        }
                    }
                }
            }
            d
        })
        .collect();
    let mut total = DMatrix::<C64>::zeros(dim, dim);
    for p in partials {
        total += p;
    }
    total
}

/// Gram matrix of the channels on the grid (identity map); equals the unit
/// matrix to quadrature accuracy.
pub fn gram_matrix(channels: &[Channel], grid: &AngularGrid) -> DMatrix<C64> {
    channel_map_matrix(channels, &DoubletMap::identity(), grid)
}

/// Raynal-Revai transform on the `(k, l_total)` block: the matrix expressing
/// set-`from` harmonics in the set-`to` harmonic basis,
/// `Phi^{(from)}_c = sum_r M[r][c] Phi^{(to)}_r`.
pub fn rr_matrix(
    k: u32,
    l_total: i32,
    from: JacobiSet,
    to: JacobiSet,
    grid: &AngularGrid,
) -> DMatrix<C64> {
    let channels = block_channels(k, l_total);
    // A set-`from` harmonic evaluated at a physical point parametrized by
    // set-`to` angles is the harmonic composed with the to->from rotation.
    let map = DoubletMap::rotation(connecting_angle(to, from));
    channel_map_matrix(&channels, &map, grid)
}

/// The channels belonging to one `(K, L)` block, in canonical order.
pub fn block_channels(k: u32, l_total: i32) -> Vec<Channel> {
    enumerate_channels(k, l_total, None)
        .into_iter()
        .filter(|c| c.k == k)
        .collect()
}

// ---------------------------------------------------------------------------
// grand angular operator (finite-difference oracle)
// ---------------------------------------------------------------------------

/// Rayleigh quotient of the negative grand angular Laplacian applied to the
/// channel's harmonic by central finite differences on a midpoint alpha grid:
///
/// ```text
/// -K^2 Phi = -[d2/da2 + 2 cot(2a) d/da - l1^2/cos^2 - l2^2/sin^2] Phi
/// ```
///
/// returns `K(K+2)` up to O(h^4) (one Richardson step over h, h/2).
pub fn grand_angular_eigenvalue(ch: &Channel, n_grid: usize) -> f64 {
    let coarse = grand_angular_quotient(ch, n_grid);
    let fine = grand_angular_quotient(ch, 2 * n_grid);
    (4.0 * fine - coarse) / 3.0
}

fn grand_angular_quotient(ch: &Channel, n: usize) -> f64 {
    let h = FRAC_PI_2 / n as f64;
    let l1sq = f64::from(ch.l1 * ch.l1);
    let l2sq = f64::from(ch.l2 * ch.l2);
    let p = |a: f64| jacobi_poly_alpha(ch.n, ch.l1, ch.l2, a);
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        let a = (i as f64 + 0.5) * h;
        let (pa, pl, pr) = (p(a), p(a - h), p(a + h));
        let d2 = (pr - 2.0 * pa + pl) / (h * h);
        let d1 = (pr - pl) / (2.0 * h);
        let k2 = d2 + 2.0 / (2.0 * a).tan() * d1
            - (l1sq / (a.cos() * a.cos()) + l2sq / (a.sin() * a.sin())) * pa;
        let w = a.cos() * a.sin() * h;
        num += w * pa * k2;
        den += w * pa * pa;
    }
    -num / den
}

// ---------------------------------------------------------------------------
// S3 symmetrization
// ---------------------------------------------------------------------------

/// Young sector of the spatial wavefunction under particle exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YoungSector {
    /// Totally symmetric [3].
    Symmetric,
    /// One row of the mixed-symmetry [2,1] doublet (pairs with spin S = 1/2).
    Mixed,
    /// Totally antisymmetric [1^3] (pairs with spin S = 3/2).
    Antisymmetric,
}

impl YoungSector {
    /// Spatial sector required by the spin sector for an overall antisymmetric
    /// three-electron state: S = 1/2 -> [2,1], S = 3/2 -> [1^3].
    pub fn from_spin_doubled(two_s: u32) -> Result<Self, Error> {
        match two_s {
            1 => Ok(YoungSector::Mixed),
            3 => Ok(YoungSector::Antisymmetric),
            _ => Err(Error::Config(format!("2S must be 1 or 3 for three electrons, got {two_s}"))),
        }
    }
}

/// Orthonormal basis of one symmetry sector inside a channel list.
#[derive(Debug, Clone)]
pub struct SymmetrizedBasis {
    pub sector: YoungSector,
    pub channels: Vec<Channel>,
    /// `channels.len() x n_states`; columns are orthonormal coefficient
    /// vectors over the reference-set channel basis.
    pub coeffs: DMatrix<C64>,
}

impl SymmetrizedBasis {
    pub fn n_states(&self) -> usize {
        self.coeffs.ncols()
    }
}

/// The six permutation-operator matrices `D(pi)` in the channel basis
/// (reference Jacobi set 1), computed as quadrature overlaps.
pub fn permutation_matrices(
    channels: &[Channel],
    grid: &AngularGrid,
) -> Vec<(Permutation, DMatrix<C64>)> {
    Permutation::ALL
        .iter()
        .map(|&p| (p, channel_map_matrix(channels, &p.doublet_map(), grid)))
        .collect()
}

/// Projector onto a Young sector built from the permutation matrices.
/// For the mixed sector this is the row-1 projector
/// `(2/6) sum_g [d(g)]_11 D(g)` with `d` the geometric 2D irrep (the doublet
/// maps themselves), giving one state per [2,1] multiplet.
pub fn sector_projector(
    perms: &[(Permutation, DMatrix<C64>)],
    sector: YoungSector,
) -> DMatrix<C64> {
    let dim = perms[0].1.nrows();
    let mut p = DMatrix::<C64>::zeros(dim, dim);
    for (perm, d) in perms {
        let coef = match sector {
            YoungSector::Symmetric => 1.0 / 6.0,
            YoungSector::Antisymmetric => perm.sign() / 6.0,
            YoungSector::Mixed => perm.doublet_map().m[0][0] / 3.0,
        };
        p += d * C64::new(coef, 0.0);
    }
    p
}

/// Build the orthonormal symmetrized basis of `sector`.
///
/// The projector rank is `round(trace)` (exact representation theory);
/// idempotency within 1e-8 is enforced as an invariant. The basis is
/// extracted with pivoted modified Gram-Schmidt (deterministic).
pub fn symmetrize(
    channels: &[Channel],
    sector: YoungSector,
    grid: &AngularGrid,
) -> Result<SymmetrizedBasis, Error> {
    let perms = permutation_matrices(channels, grid);
    let proj = sector_projector(&perms, sector);
    let idem = (&proj * &proj - &proj).norm();
    if idem > 1e-8 {
        return Err(Error::Invariant(format!(
            "sector projector not idempotent (defect {idem:.3e})"
        )));
    }
    let trace = proj.trace();
    if trace.im.abs() > 1e-8 {
        return Err(Error::Invariant(format!(
            "sector projector trace not real: {:.3e}",
            trace.im
        )));
    }
    let rank = trace.re.round();
    if (trace.re - rank).abs() > 1e-6 {
        return Err(Error::Invariant(format!(
            "sector projector trace {:.6} is not near an integer",
            trace.re
        )));
    }
    let rank = rank as usize;
    let coeffs = if rank == 0 {
        DMatrix::<C64>::zeros(channels.len(), 0)
    } else {
        crate::numeric::orthonormal_columns(&proj, rank)
    };
    Ok(SymmetrizedBasis { sector, channels: channels.to_vec(), coeffs })
}

/// Dimensions (symmetric, mixed-row, antisymmetric) of one channel list.
pub fn sector_dimensions(channels: &[Channel], grid: &AngularGrid) -> Result<(usize, usize, usize), Error> {
    let perms = permutation_matrices(channels, grid);
    let mut dims = [0usize; 3];
    for (i, sector) in [YoungSector::Symmetric, YoungSector::Mixed, YoungSector::Antisymmetric]
        .iter()
        .enumerate()
    {
        let proj = sector_projector(&perms, *sector);
        let tr = proj.trace().re;
        let rank = tr.round();
        if (tr - rank).abs() > 1e-6 {
            return Err(Error::Invariant(format!(
                "projector trace {tr:.6} not near integer for {sector:?}"
            )));
        }
        dims[i] = rank as usize;
    }
    Ok((dims[0], dims[1], dims[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn grid_small() -> AngularGrid {
        AngularGrid::new(48, 32)
    }

    #[test]
    fn channel_validation() {
        assert!(Channel::new(2, 1, -1, 0).is_ok());
        assert!(Channel::new(2, 1, 1, 1).is_err());
        assert!(Channel::new(3, 1, 1, 0).is_err());
        assert_eq!(Channel::new(4, -1, 1, 1).unwrap().l_total(), 0);
    }

    #[test]
    fn enumeration_matches_expected_sets() {
        let ch = enumerate_channels(2, 0, None);
        assert_eq!(
            ch,
            vec![
                Channel { k: 0, l1: 0, l2: 0, n: 0 },
                Channel { k: 2, l1: -1, l2: 1, n: 0 },
                Channel { k: 2, l1: 0, l2: 0, n: 1 },
                Channel { k: 2, l1: 1, l2: -1, n: 0 },
            ]
        );
        // K_max = 6, L = 0: all channels have l2 = -l1, |l1| <= 3.
        let ch6 = enumerate_channels(6, 0, None);
        assert_eq!(ch6.len(), 16);
        assert!(ch6.iter().all(|c| c.l2 == -c.l1 && c.l1.unsigned_abs() <= 3));
        // L = 1 channels all have odd K.
        let ch1 = enumerate_channels(5, 1, None);
        assert!(ch1.iter().all(|c| c.k % 2 == 1));
    }

    #[test]
    fn polynomial_spot_values() {
        // n=0 -> cos^|l1| sin^|l2| only; value 1 at alpha=0 for l2=0.
        assert_abs_diff_eq!(jacobi_poly_alpha(0, 1, 0, 0.0), 1.0, epsilon = 1e-15);
        // n=1, l=0: cos(2 alpha).
        for &a in &[0.0, 0.3, 0.7, 1.2] {
            assert_relative_eq!(
                jacobi_poly_alpha(1, 0, 0, a),
                (2.0 * a).cos(),
                max_relative = 1e-13,
                epsilon = 1e-14
            );
        }
        // Depends on |l| only.
        for &a in &[0.2, 0.9] {
            assert_relative_eq!(
                jacobi_poly_alpha(2, -3, 1, a),
                jacobi_poly_alpha(2, 3, -1, a),
                max_relative = 1e-13
            );
        }
    }

    /// Classic Jacobi polynomial recurrence (test oracle).
    fn jacobi_classic(n: u32, a: f64, b: f64, x: f64) -> f64 {
        if n == 0 {
            return 1.0;
        }
        let mut pm1 = 1.0;
        let mut p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
        for k in 2..=n {
            let kf = k as f64;
            let c1 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
            let c2 = (2.0 * kf + a + b - 1.0)
                * ((2.0 * kf + a + b) * (2.0 * kf + a + b - 2.0) * x + a * a - b * b);
            let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
            let pp = (c2 * p - c3 * pm1) / c1;
            pm1 = p;
            p = pp;
        }
        p
    }

    #[test]
    fn finite_sum_equals_classic_jacobi_polynomial() {
        // P_n^{l1 l2}(alpha) = cos^|l1| sin^|l2| JacobiP_n^(|l2|,|l1|)(cos 2a).
        for n in 0..=4u32 {
            for l1 in -3i32..=3 {
                for l2 in -3i32..=3 {
                    for &a in &[0.17, 0.5, 0.83, 1.31] {
                        let lhs = jacobi_poly_alpha(n, l1, l2, a);
                        let rhs = a.cos().powi(l1.abs()) * a.sin().powi(l2.abs())
                            * jacobi_classic(n, f64::from(l2.abs()), f64::from(l1.abs()), (2.0 * a).cos());
                        assert_relative_eq!(lhs, rhs, max_relative = 1e-11, epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_spot_values() {
        assert_relative_eq!(
            normalization(0, 0, 0),
            (2.0 * PI * PI).sqrt().recip(),
            max_relative = 1e-14
        );
        assert_relative_eq!(normalization(0, 1, 0), 1.0 / PI, max_relative = 1e-14);
    }

    #[test]
    fn conjugation_symmetry() {
        let c = Channel::new(3, 2, -1, 0).unwrap();
        let cm = Channel::new(3, -2, 1, 0).unwrap();
        let v = eval_harmonic(&c, 0.6, 1.1, -2.3);
        let vm = eval_harmonic(&cm, 0.6, 1.1, -2.3);
        assert_abs_diff_eq!(v.re, vm.conj().re, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, vm.conj().im, epsilon = 1e-14);
    }

    #[test]
    fn grid_total_weight_is_two_pi_squared() {
        let g = grid_small();
        assert_relative_eq!(g.total_weight(), 2.0 * PI * PI, max_relative = 1e-12);
    }

    #[test]
    fn gram_is_identity_small() {
        let g = grid_small();
        let ch = enumerate_channels(4, 0, None);
        let gram = gram_matrix(&ch, &g);
        let id = DMatrix::<C64>::identity(ch.len(), ch.len());
        let defect = (gram - id).camax();
        assert!(defect < 1e-10, "gram defect {defect:.3e}");
    }

    #[test]
    fn grand_angular_eigenvalues() {
        for c in enumerate_channels(4, 0, None) {
            let val = grand_angular_eigenvalue(&c, 2000);
            let exact = f64::from(c.k * (c.k + 2));
            if c.k == 0 {
                assert!(val.abs() < 1e-8, "K=0 got {val}");
            } else {
                assert_relative_eq!(val, exact, max_relative = 1e-6);
            }
        }
        // An L = 1 channel too.
        let c = Channel::new(3, 2, -1, 0).unwrap();
        assert_relative_eq!(grand_angular_eigenvalue(&c, 2000), 15.0, max_relative = 1e-6);
    }

    #[test]
    fn rr_matrix_identity_cases() {
        let g = grid_small();
        let m = rr_matrix(0, 0, JacobiSet::S1, JacobiSet::S2, &g);
        assert_eq!(m.nrows(), 1);
        assert_abs_diff_eq!(m[(0, 0)].re, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(m[(0, 0)].im, 0.0, epsilon = 1e-12);
        let same = rr_matrix(2, 0, JacobiSet::S2, JacobiSet::S2, &g);
        let id = DMatrix::<C64>::identity(3, 3);
        assert!((same - id).camax() < 1e-10);
    }

    #[test]
    fn rr_matrix_unitary_and_cycle_composes_to_identity() {
        let g = grid_small();
        for &(k, l) in &[(2u32, 0i32), (3, 1), (4, 0)] {
            let m12 = rr_matrix(k, l, JacobiSet::S1, JacobiSet::S2, &g);
            let m23 = rr_matrix(k, l, JacobiSet::S2, JacobiSet::S3, &g);
            let m31 = rr_matrix(k, l, JacobiSet::S3, JacobiSet::S1, &g);
            let dim = m12.nrows();
            let id = DMatrix::<C64>::identity(dim, dim);
            assert!(((&m12 * m12.adjoint()) - &id).camax() < 1e-8, "unitarity K={k} L={l}");
            let cycle = &m12 * &m23 * &m31;
            assert!((cycle - &id).camax() < 1e-8, "cycle K={k} L={l}");
        }
    }

    #[test]
    fn own_pair_exchange_is_exact_phase() {
        // In reference set 1 the own pair is (2,3); Swap23 maps X -> -X and
        // must be diag((-1)^l1) exactly.
        let g = grid_small();
        let ch = enumerate_channels(4, 0, None);
        let perms = permutation_matrices(&ch, &g);
        let d23 = &perms.iter().find(|(p, _)| *p == Permutation::Swap23).unwrap().1;
        for (i, ci) in ch.iter().enumerate() {
            for j in 0..ch.len() {
                let expect = if i == j {
                    if ci.l1.rem_euclid(2) == 0 { 1.0 } else { -1.0 }
                } else {
                    0.0
                };
                assert_abs_diff_eq!(d23[(i, j)].re, expect, epsilon = 1e-10);
                assert_abs_diff_eq!(d23[(i, j)].im, 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn permutation_matrices_are_unitary_and_compose() {
        let g = grid_small();
        let ch = block_channels(2, 0);
        let perms = permutation_matrices(&ch, &g);
        let id = DMatrix::<C64>::identity(ch.len(), ch.len());
        for (p, d) in &perms {
            assert!(((d * d.adjoint()) - &id).camax() < 1e-9, "unitarity {p:?}");
        }
        // Composition: D(Swap12) D(Swap23) equals D of the composed doublet map.
        let d12 = &perms.iter().find(|(p, _)| *p == Permutation::Swap12).unwrap().1;
        let d23 = &perms.iter().find(|(p, _)| *p == Permutation::Swap23).unwrap().1;
        let composed_map = Permutation::Swap23
            .doublet_map()
            .compose(&Permutation::Swap12.doublet_map());
        let dc = channel_map_matrix(&ch, &composed_map, &g);
        assert!(((d12 * d23) - dc).camax() < 1e-9);
    }

    #[test]
    fn sector_dimensions_match_character_theory() {
        // L = 0 blocks: (sym, mixed-row, antisym) per K:
        // K=0: (1,0,0); K=2: (0,1,1); K=4: (1,2,0); K=6: (1,2,2).
        let g = grid_small();
        let expect = [(0u32, (1, 0, 0)), (2, (0, 1, 1)), (4, (1, 2, 0)), (6, (1, 2, 2))];
        for (k, dims) in expect {
            let ch = block_channels(k, 0);
            let got = sector_dimensions(&ch, &g).unwrap();
            assert_eq!(got, dims, "K = {k}");
            // Completeness: d3 + d13 + 2 d21 = total.
            assert_eq!(got.0 + got.2 + 2 * got.1, ch.len(), "completeness K = {k}");
        }
    }

    #[test]
    fn symmetrize_produces_orthonormal_invariant_states() {
        let g = grid_small();
        let ch = enumerate_channels(4, 0, None);
        let basis = symmetrize(&ch, YoungSector::Symmetric, &g).unwrap();
        assert_eq!(basis.n_states(), 2); // K=0 (1) + K=4 (1)
        let gram = basis.coeffs.adjoint() * &basis.coeffs;
        assert!((gram - DMatrix::<C64>::identity(2, 2)).camax() < 1e-10);
        // Invariance under every permutation.
        let perms = permutation_matrices(&ch, &g);
        for (p, d) in &perms {
            let moved = d * &basis.coeffs;
            assert!((moved - &basis.coeffs).camax() < 1e-8, "not invariant under {p:?}");
        }
        // Antisymmetric states pick up the sign.
        let anti = symmetrize(&ch, YoungSector::Antisymmetric, &g).unwrap();
        assert_eq!(anti.n_states(), 1); // K=2 only
        for (p, d) in &perms {
            let moved = d * &anti.coeffs;
            let expected = &anti.coeffs * C64::new(p.sign(), 0.0);
            assert!((moved - expected).camax() < 1e-8, "wrong sign under {p:?}");
        }
    }

    #[test]
    fn spin_sector_mapping() {
        assert_eq!(YoungSector::from_spin_doubled(1).unwrap(), YoungSector::Mixed);
        assert_eq!(YoungSector::from_spin_doubled(3).unwrap(), YoungSector::Antisymmetric);
        assert!(YoungSector::from_spin_doubled(2).is_err());
    }
}
