//! Material parameters, magnetic-field frequencies, and unit conversions.
//!
//! External quantities are meV, Tesla, and nanometers. Internally the solver
//! works in oscillator units of the *relative* motion: energies in units of
//! hbar*omega_eff and the hyperradius in units of
//! sigma = sqrt(hbar / (mu * omega_eff)) with mu = m*/sqrt(3) the three-body
//! reduced mass. In those units the hyperradial equation carries the
//! oscillator coefficient (1/4) * omega_tilde^2 * rho^2 with omega_tilde = 2,
//! so the Laguerre width parameter is alpha = omega_tilde / 2 = 1.

use crate::Error;
use serde::{Deserialize, Serialize};

/// hbar * c in meV * nm.
pub const HBAR_C_MEV_NM: f64 = 197_326.980_4;
/// Electron rest energy m_e c^2 in meV.
pub const ELECTRON_MASS_MEV: f64 = 5.109_989_5e8;
/// Bohr magneton in meV per Tesla (= hbar e / (2 m_e)).
pub const BOHR_MAGNETON_MEV_PER_T: f64 = 5.788_381_806e-2;
/// Coulomb coupling e^2 / (4 pi eps0) in meV * nm.
pub const COULOMB_MEV_NM: f64 = 1_439.964_547_8;

/// Effective-mass material host (e.g. GaAs: ratio 0.067, eps_r 12).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaterialParams {
    /// m* / m_e.
    pub m_eff_ratio: f64,
    /// Relative dielectric constant.
    pub epsilon_r: f64,
}

impl MaterialParams {
    pub fn new(m_eff_ratio: f64, epsilon_r: f64) -> Result<Self, Error> {
        if !(m_eff_ratio.is_finite() && m_eff_ratio > 0.0) {
            return Err(Error::Config(format!("m_eff_ratio must be positive, got {m_eff_ratio}")));
        }
        if !(epsilon_r.is_finite() && epsilon_r > 0.0) {
            return Err(Error::Config(format!("epsilon_r must be positive, got {epsilon_r}")));
        }
        Ok(Self { m_eff_ratio, epsilon_r })
    }

    /// GaAs defaults used throughout the worked examples.
    pub fn gaas() -> Self {
        Self { m_eff_ratio: 0.067, epsilon_r: 12.0 }
    }

    /// Rest energy of the effective mass, m* c^2 in meV.
    pub fn rest_energy_mev(&self) -> f64 {
        self.m_eff_ratio * ELECTRON_MASS_MEV
    }
}

/// Physical definition of one dot problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DotConfig {
    /// Confinement quantum hbar*omega_0 in meV.
    pub hbar_omega0_mev: f64,
    /// Perpendicular magnetic field in Tesla.
    pub b_tesla: f64,
    /// Logarithmic pair coupling beta in meV (per pair).
    pub beta_mev: f64,
    /// Logarithm reference length, in internal length units (sigma).
    pub rho0: f64,
    pub material: MaterialParams,
}

impl DotConfig {
    pub fn new(
        hbar_omega0_mev: f64,
        b_tesla: f64,
        beta_mev: f64,
        rho0: f64,
        material: MaterialParams,
    ) -> Result<Self, Error> {
        if !(hbar_omega0_mev.is_finite() && hbar_omega0_mev > 0.0) {
            return Err(Error::Config(format!(
                "hbar_omega0_mev must be positive, got {hbar_omega0_mev}"
            )));
        }
        if !(b_tesla.is_finite() && b_tesla >= 0.0) {
            return Err(Error::Config(format!("b_tesla must be >= 0, got {b_tesla}")));
        }
        if !(beta_mev.is_finite() && beta_mev >= 0.0) {
            return Err(Error::Config(format!("beta_mev must be >= 0, got {beta_mev}")));
        }
        if !(rho0.is_finite() && rho0 > 0.0) {
            return Err(Error::Config(format!("rho0 must be positive, got {rho0}")));
        }
        Ok(Self { hbar_omega0_mev, b_tesla, beta_mev, rho0, material })
    }

    pub fn frequencies(&self) -> Frequencies {
        Frequencies::new(self.hbar_omega0_mev, self.b_tesla, self.material)
    }
}

/// The three hbar-frequencies of the field-dressed oscillator, in meV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frequencies {
    /// Confinement hbar*omega_0.
    pub omega0_mev: f64,
    /// Larmor hbar*omega_L = hbar e B / (2 m*).
    pub omega_l_mev: f64,
    /// Effective hbar*omega = sqrt(omega_0^2 + omega_L^2).
    pub omega_eff_mev: f64,
}

impl Frequencies {
    pub fn new(hbar_omega0_mev: f64, b_tesla: f64, material: MaterialParams) -> Self {
        let omega_l = larmor_energy_mev(b_tesla, material);
        Self {
            omega0_mev: hbar_omega0_mev,
            omega_l_mev: omega_l,
            omega_eff_mev: effective_energy_mev(hbar_omega0_mev, omega_l),
        }
    }
}

/// Larmor energy hbar*omega_L in meV for a field in Tesla.
pub fn larmor_energy_mev(b_tesla: f64, material: MaterialParams) -> f64 {
    BOHR_MAGNETON_MEV_PER_T * b_tesla / material.m_eff_ratio
}

/// Effective confinement hbar*omega = sqrt((hbar w0)^2 + (hbar wL)^2) in meV.
pub fn effective_energy_mev(hbar_omega0_mev: f64, hbar_omega_l_mev: f64) -> f64 {
    hbar_omega0_mev.hypot(hbar_omega_l_mev)
}

/// Single-particle oscillator length l0 = sqrt(hbar / (m* omega_0)) in nm.
pub fn oscillator_length_nm(hbar_omega0_mev: f64, material: MaterialParams) -> f64 {
    HBAR_C_MEV_NM / (material.rest_energy_mev() * hbar_omega0_mev).sqrt()
}

/// Hyperradial length unit sigma = sqrt(hbar / (mu omega_eff)) in nm, with
/// mu = m*/sqrt(3).
pub fn hyperradial_scale_nm(hbar_omega_eff_mev: f64, material: MaterialParams) -> f64 {
    let mu_rest = material.rest_energy_mev() / 3.0f64.sqrt();
    HBAR_C_MEV_NM / (mu_rest * hbar_omega_eff_mev).sqrt()
}

/// Default logarithmic coupling beta = e^2 / (eps_r l0) in meV.
pub fn default_beta_mev(hbar_omega0_mev: f64, material: MaterialParams) -> f64 {
    COULOMB_MEV_NM / (material.epsilon_r * oscillator_length_nm(hbar_omega0_mev, material))
}

/// meV -> internal energy units (hbar*omega_eff = 1).
pub fn energy_to_internal(energy_mev: f64, hbar_omega_eff_mev: f64) -> f64 {
    energy_mev / hbar_omega_eff_mev
}

/// Internal energy units -> meV.
pub fn energy_from_internal(energy_internal: f64, hbar_omega_eff_mev: f64) -> f64 {
    energy_internal * hbar_omega_eff_mev
}
