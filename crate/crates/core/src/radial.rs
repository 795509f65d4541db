//! Hyperradial basis, analytic logarithmic moments, and a finite-difference
//! ODE oracle for the single-channel radial problem.
//!
//! Internal units: energies in units of the effective quantum `hbar
//! omega_eff`, lengths in units of the hyperradial oscillator scale
//! `sigma = sqrt(hbar / (mu omega_eff))`. In these units the hyperradial
//! equation for the reduced function `u = rho^{3/2} F` reads
//!
//! ```text
//! -1/2 u'' + [((K+1)^2 - 1/4) / (2 rho^2) + rho^2 / 2 + V(rho)] u = eps u
//! ```
//!
//! and the non-interacting spectrum is exactly `eps = 2N + K + 2`.
//!
//! The basis functions are the exact `V = 0` eigenfunctions
//!
//! ```text
//! u_{KN}(rho) = sqrt(2 a^{K+2} N! / (N+K+1)!) rho^{K+3/2}
//!               exp(-a rho^2 / 2) LaguerreL_N^{(K+1)}(a rho^2)
//! ```
//!
//! with scale parameter `a` (equal to 1 in internal units). Logarithmic
//! moments `<ln(rho/rho0)>` have closed forms obtained by differentiating the
//! Laguerre orthogonality relation with respect to the order: diagonal
//! elements are digamma values, off-diagonal ones a square-rooted factorial
//! ratio. Both are cross-checked against adaptive quadrature.

use crate::numeric::{
    adaptive_gauss_kronrod, digamma, gamma_ln, laguerre, tridiag_smallest_eigenvalues,
};
use crate::Error;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// basis functions
// ---------------------------------------------------------------------------

/// Normalization constant `sqrt(2 a^{K+2} N! / Gamma(N+K+2))`.
pub fn radial_norm_constant(k: u32, n: u32, a: f64) -> f64 {
    let kf = f64::from(k);
    let nf = f64::from(n);
    (2.0 * a.powi(k as i32 + 2) * (gamma_ln(nf + 1.0) - gamma_ln(nf + kf + 2.0)).exp()).sqrt()
}

/// Basis function value `u_{KN}(rho)`.
pub fn radial_basis_value(k: u32, n: u32, a: f64, rho: f64) -> f64 {
    radial_norm_constant(k, n, a)
        * rho.powf(f64::from(k) + 1.5)
        * (-0.5 * a * rho * rho).exp()
        * laguerre(n, f64::from(k) + 1.0, a * rho * rho)
}

/// Non-interacting radial eigenvalue in internal units (before any overall
/// prefactor): `2N + K + 2`.
pub fn noninteracting_epsilon(k: u32, n: u32) -> f64 {
    f64::from(2 * n + k) + 2.0
}

/// Overall prefactor convention for the non-interacting hyperradial ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrefactorMode {
    /// `sqrt(2/3)`, reproducing the published closed-form expression.
    Paper,
    /// `1`, consistent with the independent differential-equation oracle.
    Oracle,
}

impl PrefactorMode {
    pub fn value(self) -> f64 {
        match self {
            PrefactorMode::Paper => (2.0f64 / 3.0).sqrt(),
            PrefactorMode::Oracle => 1.0,
        }
    }
}

// ---------------------------------------------------------------------------
// logarithmic moments (analytic)
// ---------------------------------------------------------------------------

/// Dimensionless log-moment kernel `Lambda_{N N'}` at fixed K:
/// `Int t^{K+1} e^{-t} L_N L_N' ln(t) dt` in normalized form. Diagonal:
/// `psi(N+K+2)`; off-diagonal (N > M):
/// `-(1/(N-M)) sqrt(N! Gamma(M+K+2) / (M! Gamma(N+K+2)))`.
pub fn lambda_kernel(k: u32, n1: u32, n2: u32) -> f64 {
    let kf = f64::from(k);
    if n1 == n2 {
        return digamma(f64::from(n1) + kf + 2.0);
    }
    let (hi, lo) = if n1 > n2 { (n1, n2) } else { (n2, n1) };
    let (hf, lf) = (f64::from(hi), f64::from(lo));
    let log_ratio =
        gamma_ln(hf + 1.0) + gamma_ln(lf + kf + 2.0) - gamma_ln(lf + 1.0) - gamma_ln(hf + kf + 2.0);
    -(0.5 * log_ratio).exp() / (hf - lf)
}

/// Matrix of `<u_{KN} | ln(rho/rho0) | u_{KN'}>` for `N, N' <= n_max`:
/// `1/2 Lambda - delta_{NN'} (1/2 ln a + ln rho0)`.
pub fn log_moment_matrix(k: u32, n_max: u32, a: f64, rho0: f64) -> DMatrix<f64> {
    let dim = (n_max + 1) as usize;
    let shift = 0.5 * a.ln() + rho0.ln();
    DMatrix::from_fn(dim, dim, |r, c| {
        0.5 * lambda_kernel(k, r as u32, c as u32) - if r == c { shift } else { 0.0 }
    })
}

/// Log moment by adaptive Gauss-Kronrod quadrature (independent oracle).
pub fn log_moment_quadrature(k: u32, n1: u32, n2: u32, a: f64, rho0: f64) -> f64 {
    let f = |rho: f64| {
        radial_basis_value(k, n1, a, rho)
            * radial_basis_value(k, n2, a, rho)
            * (rho / rho0).ln()
    };
    // The integrand decays like exp(-a rho^2); 30/sqrt(a) truncates far below
    // double precision.
    let upper = 30.0 / a.sqrt();
    adaptive_gauss_kronrod(f, 0.0, upper, 1e-13).0
}

/// Log moment by the analytic formula, verified on the spot against the
/// quadrature oracle; errors out if the two routes disagree.
pub fn log_moment_checked(k: u32, n1: u32, n2: u32, a: f64, rho0: f64) -> Result<f64, Error> {
    let analytic = 0.5 * lambda_kernel(k, n1, n2)
        - if n1 == n2 { 0.5 * a.ln() + rho0.ln() } else { 0.0 };
    let quad = log_moment_quadrature(k, n1, n2, a, rho0);
    if (analytic - quad).abs() > 1e-10 {
        return Err(Error::Invariant(format!(
            "log moment mismatch at K={k} N={n1} N'={n2}: analytic {analytic:.14e} vs quadrature {quad:.14e}"
        )));
    }
    Ok(analytic)
}

// ---------------------------------------------------------------------------
// overlaps across K
// ---------------------------------------------------------------------------

/// Overlap `<u_{K1 N1} | u_{K2 N2}>` (same scale `a`), exact for all N.
///
/// With `s = (K1+K2)/2 + 1` the integral reduces to
/// `c1 c2 / (2 a^{s+1}) Int t^s e^-t L^{(K1+1)}_{N1} L^{(K2+1)}_{N2} dt`, and
/// the standard Laguerre product integral
/// `Int t^s e^-t L_m^(A) L_n^(B) dt = (-1)^{m+n} Gamma(s+1) sum_k
/// C(s-A, m-k) C(s-B, n-k) C(s+k, k)` truncates to at most
/// `d+1 = (s - K1 - 1) + 1` terms because `s - A = d` is a small non-negative
/// integer. K1 and K2 must share parity so that `d` is an integer.
pub fn radial_overlap(k1: u32, n1: u32, k2: u32, n2: u32, a: f64) -> f64 {
    assert_eq!((k1 + k2) % 2, 0, "overlap requires equal K parity");
    // Order so that K1 <= K2; the integral is symmetric.
    let (k1, n1, k2, n2) = if k1 <= k2 { (k1, n1, k2, n2) } else { (k2, n2, k1, n1) };
    let d = (k2 - k1) / 2;
    let s = k1 + 1 + d;
    // C(d, j) for 0 <= j <= d (zero otherwise).
    let binom_d = |j: i64| -> f64 {
        if j < 0 || j > i64::from(d) {
            0.0
        } else {
            let (mut num, mut den) = (1.0, 1.0);
            for i in 0..j {
                num *= f64::from(d) - i as f64;
                den *= i as f64 + 1.0;
            }
            num / den
        }
    };
    // C(-d, j) = (-1)^j C(d+j-1, j) for j >= 0 (and C(0, j) = delta_{j0}).
    let binom_neg_d = |j: i64| -> f64 {
        if j < 0 || (d == 0 && j > 0) {
            return 0.0;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let (mut num, mut den) = (1.0, 1.0);
        for i in 0..j {
            num *= f64::from(d) + i as f64;
            den *= i as f64 + 1.0;
        }
        sign * num / den
    };
    // C(s+k, k) = prod_{i=1..s} (k+i)/i : small product, s is small.
    let binom_sk = |k: i64| -> f64 {
        let mut p = 1.0;
        for i in 1..=i64::from(s) {
            p *= (k + i) as f64 / i as f64;
        }
        p
    };
    let mut sum = 0.0;
    let lo = i64::from(n1) - i64::from(d);
    for k in lo.max(0)..=i64::from(n1) {
        sum += binom_d(i64::from(n1) - k) * binom_neg_d(i64::from(n2) - k) * binom_sk(k);
    }
    let parity = if (n1 + n2) % 2 == 0 { 1.0 } else { -1.0 };
    let c1 = radial_norm_constant(k1, n1, a);
    let c2 = radial_norm_constant(k2, n2, a);
    parity * c1 * c2 / (2.0 * a.powi(s as i32 + 1)) * gamma_ln(f64::from(s) + 1.0).exp() * sum
}

// ---------------------------------------------------------------------------
// finite-difference ODE oracle
// ---------------------------------------------------------------------------

/// Smallest eigenvalues of the single-channel hyperradial equation with an
/// arbitrary extra potential `v(rho)` (beyond trap + centrifugal), by
/// three-point finite differences with Dirichlet walls and Sturm bisection,
/// Richardson-extrapolated over grid halving.
pub fn solve_radial_ode(
    k: u32,
    v: &dyn Fn(f64) -> f64,
    n_nodes: usize,
    rho_max: f64,
    n_levels: usize,
) -> Vec<f64> {
    let coarse = radial_fd_eigenvalues(k, v, n_nodes, rho_max, n_levels);
    let fine = radial_fd_eigenvalues(k, v, 2 * n_nodes, rho_max, n_levels);
    coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect()
}

fn radial_fd_eigenvalues(
    k: u32,
    v: &dyn Fn(f64) -> f64,
    n: usize,
    rho_max: f64,
    n_levels: usize,
) -> Vec<f64> {
    let h = rho_max / (n as f64 + 1.0);
    let cent = (f64::from(k) + 1.0).powi(2) - 0.25;
    let diag: Vec<f64> = (1..=n)
        .map(|i| {
            let rho = i as f64 * h;
            1.0 / (h * h) + cent / (2.0 * rho * rho) + 0.5 * rho * rho + v(rho)
        })
        .collect();
    let off = vec![-0.5 / (h * h); n - 1];
    tridiag_smallest_eigenvalues(&diag, &off, n_levels)
}

/// The effective single-channel potential grid for diagnostics: trap plus
/// centrifugal plus `v`.
pub fn effective_potential(k: u32, v: &dyn Fn(f64) -> f64, rho: f64) -> f64 {
    let cent = (f64::from(k) + 1.0).powi(2) - 0.25;
    cent / (2.0 * rho * rho) + 0.5 * rho * rho + v(rho)
}
