//! Mass-scaled Jacobi coordinates for three equal-mass planar particles,
//! kinematic rotations between the three Jacobi sets, and the map to
//! hyperspherical coordinates on the 4D relative space.
//!
//! Set `i` (cyclic convention, `(i, j, k)` a cyclic permutation of `(1,2,3)`):
//!
//! ```text
//! X_i = sqrt(m_j m_k / ((m_j+m_k) mu)) (r_j - r_k)
//! Y_i = sqrt(m_i (m_j+m_k) / (M mu))   (r_i - (m_j r_j + m_k r_k)/(m_j+m_k))
//! ```
//!
//! with `mu = sqrt(m1 m2 m3 / M)` the three-body reduced mass (`m/sqrt(3)`
//! for equal masses, in units where `m = 1`). With this scaling
//! `sum_i m_i r_i^2 = mu (X^2 + Y^2 + R^2)`, `R = sum m_i r_i / sqrt(M mu)`,
//! so the hyperradius `rho^2 = X^2 + Y^2` is the same in every set.
//!
//! Two angles matter and they differ by the branch of arctan:
//! [`kinematic_angle`] is the textbook mass formula
//! `arctan[(-1)^p sqrt(m_j M / (m_k m_i))]` (+-pi/3 for equal masses), which
//! determines the rotation only mod pi. The rotation that actually maps
//! cyclic set `i` onto cyclic set `k` is [`connecting_angle`]: `-2pi/3` per
//! cyclic hop (equal to the kinematic angle mod pi), identical for all three
//! hops, so the 3-cycle composes to a full turn — the identity — in every
//! angular-momentum sector.

use serde::{Deserialize, Serialize};

/// Scale of the pair vector: X = CX (r_j - r_k), CX = (sqrt3/2)^(1/2).
pub const CX: f64 = 0.930_604_859_102_099_6;
/// Scale of the spectator vector: Y = CY (r_i - centroid), CY = (2/sqrt3)^(1/2).
pub const CY: f64 = 1.074_569_931_823_542;
/// Reduced mass mu = m / sqrt(3) in units of the particle mass.
pub const MU: f64 = 0.577_350_269_189_625_8;

/// Separation scale: |r_j - r_k| = SEPARATION_SCALE * |X_i| (= 1/CX = CY).
pub const SEPARATION_SCALE: f64 = CY;

/// Which particle is the spectator (the pair is the other two, cyclic order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JacobiSet {
    /// Spectator 1, pair (2, 3).
    S1,
    /// Spectator 2, pair (3, 1).
    S2,
    /// Spectator 3, pair (1, 2).
    S3,
}

impl JacobiSet {
    pub const ALL: [JacobiSet; 3] = [JacobiSet::S1, JacobiSet::S2, JacobiSet::S3];

    /// 0-based spectator index.
    pub fn spectator(self) -> usize {
        match self {
            JacobiSet::S1 => 0,
            JacobiSet::S2 => 1,
            JacobiSet::S3 => 2,
        }
    }

    /// 0-based (j, k) pair indices in cyclic order.
    pub fn pair(self) -> (usize, usize) {
        let i = self.spectator();
        ((i + 1) % 3, (i + 2) % 3)
    }

    /// True if `self -> to` is a cyclic hop (1->2, 2->3, 3->1).
    pub fn hop_is_cyclic(self, to: JacobiSet) -> bool {
        (self.spectator() + 1) % 3 == to.spectator()
    }
}

/// One point of the 4D relative space expressed in a particular Jacobi set,
/// together with the scaled center of mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiVectors {
    pub x: [f64; 2],
    pub y: [f64; 2],
    /// Scaled center of mass R = sum m_i r_i / sqrt(M mu).
    pub r: [f64; 2],
    pub set: JacobiSet,
}

/// Hyperspherical coordinates of a relative-space point: `|X| = rho cos(alpha)`,
/// `|Y| = rho sin(alpha)`, `phi1`/`phi2` the planar polar angles of X and Y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperPoint {
    pub rho: f64,
    /// In [0, pi/2].
    pub alpha: f64,
    /// In (-pi, pi].
    pub phi1: f64,
    pub phi2: f64,
    pub set: JacobiSet,
    /// True when rho = 0 or one of |X|, |Y| vanishes; the undefined angles
    /// are canonicalized to 0.
    pub degenerate: bool,
}

/// Build the mass-scaled Jacobi vectors of `set` from planar positions
/// (equal unit masses).
pub fn to_jacobi(positions: &[[f64; 2]; 3], set: JacobiSet) -> JacobiVectors {
    let i = set.spectator();
    let (j, k) = set.pair();
    let x = [
        CX * (positions[j][0] - positions[k][0]),
        CX * (positions[j][1] - positions[k][1]),
    ];
    let cen = [
        0.5 * (positions[j][0] + positions[k][0]),
        0.5 * (positions[j][1] + positions[k][1]),
    ];
    let y = [CY * (positions[i][0] - cen[0]), CY * (positions[i][1] - cen[1])];
    // sqrt(M mu) = sqrt(3 / sqrt(3)) = 3^(1/4) * ... : M mu = 3/sqrt(3) = sqrt(3).
    let scale = 3.0f64.sqrt().sqrt();
    let r = [
        (positions[0][0] + positions[1][0] + positions[2][0]) / scale,
        (positions[0][1] + positions[1][1] + positions[2][1]) / scale,
    ];
    JacobiVectors { x, y, r, set }
}

/// Textbook kinematic-rotation angle `arctan[(-1)^p sqrt(m_j M/(m_k m_i))]`
/// between sets `from` (spectator i) and `to` (spectator k), where j is the
/// third particle. Parity p is even for cyclic hops, odd for anticyclic:
/// +-pi/3 for equal masses. Zero if `from == to`.
pub fn kinematic_angle(from: JacobiSet, to: JacobiSet, masses: [f64; 3]) -> f64 {
    if from == to {
        return 0.0;
    }
    let i = from.spectator();
    let k = to.spectator();
    let j = 3 - i - k; // the third particle
    let total: f64 = masses.iter().sum();
    let magnitude = (masses[j] * total / (masses[k] * masses[i])).sqrt();
    let sign = if from.hop_is_cyclic(to) { 1.0 } else { -1.0 };
    (sign * magnitude).atan()
}

/// The rotation angle that maps set `from` vectors onto set `to` vectors for
/// equal masses: -2pi/3 per cyclic hop, +2pi/3 per anticyclic hop. Equals
/// [`kinematic_angle`] mod pi; the branch is fixed by requiring the three-hop
/// cycle to compose to the identity.
pub fn connecting_angle(from: JacobiSet, to: JacobiSet) -> f64 {
    if from == to {
        0.0
    } else if from.hop_is_cyclic(to) {
        -2.0 * std::f64::consts::FRAC_PI_3
    } else {
        2.0 * std::f64::consts::FRAC_PI_3
    }
}

/// Kinematic rotation of the Jacobi doublet:
/// `X' = X cos(phi) + Y sin(phi)`, `Y' = -X sin(phi) + Y cos(phi)`.
/// The set tag is unchanged — this is the raw rotation; use [`to_set`] to
/// transform between labeled sets.
pub fn rotate_jacobi(v: &JacobiVectors, phi: f64) -> JacobiVectors {
    let (s, c) = phi.sin_cos();
    JacobiVectors {
        x: [c * v.x[0] + s * v.y[0], c * v.x[1] + s * v.y[1]],
        y: [-s * v.x[0] + c * v.y[0], -s * v.x[1] + c * v.y[1]],
        r: v.r,
        set: v.set,
    }
}

/// Express the same physical configuration in another Jacobi set.
pub fn to_set(v: &JacobiVectors, target: JacobiSet) -> JacobiVectors {
    let mut out = rotate_jacobi(v, connecting_angle(v.set, target));
    out.set = target;
    out
}

/// Hyperradius^2 = |X|^2 + |Y|^2 (set-independent).
pub fn rho_squared(v: &JacobiVectors) -> f64 {
    v.x[0] * v.x[0] + v.x[1] * v.x[1] + v.y[0] * v.y[0] + v.y[1] * v.y[1]
}

/// Map to hyperspherical coordinates; degenerate angles are canonicalized to
/// zero and flagged.
pub fn to_hyperspherical(v: &JacobiVectors) -> HyperPoint {
    let xm = (v.x[0] * v.x[0] + v.x[1] * v.x[1]).sqrt();
    let ym = (v.y[0] * v.y[0] + v.y[1] * v.y[1]).sqrt();
    let rho = xm.hypot(ym);
    let degenerate = rho == 0.0 || xm == 0.0 || ym == 0.0;
    let alpha = if rho == 0.0 { 0.0 } else { ym.atan2(xm) };
    let phi1 = if xm == 0.0 { 0.0 } else { v.x[1].atan2(v.x[0]) };
    let phi2 = if ym == 0.0 { 0.0 } else { v.y[1].atan2(v.y[0]) };
    HyperPoint { rho, alpha, phi1, phi2, set: v.set, degenerate }
}

/// Rebuild Jacobi vectors from hyperspherical coordinates (center of mass 0).
pub fn from_hyperspherical(h: &HyperPoint) -> JacobiVectors {
    let xm = h.rho * h.alpha.cos();
    let ym = h.rho * h.alpha.sin();
    JacobiVectors {
        x: [xm * h.phi1.cos(), xm * h.phi1.sin()],
        y: [ym * h.phi2.cos(), ym * h.phi2.sin()],
        r: [0.0, 0.0],
        set: h.set,
    }
}
