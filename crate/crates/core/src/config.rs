//! Layered run configuration: defaults < TOML file < environment variables
//! (prefix `HYPERDOT_`) < command-line flags.
//!
//! The TOML schema mirrors the section structs below; unknown keys are
//! rejected so typos fail loudly (exit code 2). `beta_mev` may be omitted, in
//! which case the material's natural Coulomb scale
//! `e^2 / (epsilon_r l0)` at the zero-field oscillator length `l0` is used.

use crate::hyperangular::YoungSector;
use crate::radial::PrefactorMode;
use crate::spectrum::SolverOptions;
use crate::units::{default_beta_mev, DotConfig, MaterialParams};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Environment variable prefix for overrides, e.g. `HYPERDOT_K_MAX=8`.
pub const ENV_PREFIX: &str = "HYPERDOT_";

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MaterialSection {
    /// Effective mass in units of the bare electron mass.
    pub m_eff_ratio: f64,
    /// Relative dielectric constant.
    pub epsilon_r: f64,
}

impl Default for MaterialSection {
    fn default() -> Self {
        let gaas = MaterialParams::gaas();
        Self { m_eff_ratio: gaas.m_eff_ratio, epsilon_r: gaas.epsilon_r }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DotSection {
    /// Confinement quantum in meV.
    pub hbar_omega0_mev: f64,
    /// Magnetic field in Tesla.
    pub b_tesla: f64,
    /// Interaction strength in meV; `None` selects the material default.
    pub beta_mev: Option<f64>,
    /// Logarithm reference length in internal (hyperradial sigma) units.
    pub rho0: f64,
}

impl Default for DotSection {
    fn default() -> Self {
        Self { hbar_omega0_mev: 5.0, b_tesla: 0.0, beta_mev: None, rho0: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BasisSection {
    pub k_max: u32,
    pub n_max: u32,
    pub l_total: i32,
    pub sector: YoungSector,
}

impl Default for BasisSection {
    fn default() -> Self {
        Self { k_max: 6, n_max: 16, l_total: 0, sector: YoungSector::Symmetric }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSection {
    pub grid_alpha: usize,
    pub grid_phi: usize,
}

impl Default for QuadratureSection {
    fn default() -> Self {
        Self { grid_alpha: 64, grid_phi: 64 }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverSection {
    pub prefactor: PrefactorMode,
    pub overlap_threshold: f64,
    /// Number of levels reported by spectrum commands.
    pub n_levels: usize,
    /// Worker threads; 0 uses the runtime default.
    pub threads: usize,
}

impl Default for SolverSection {
    fn default() -> Self {
        Self {
            prefactor: PrefactorMode::Oracle,
            overlap_threshold: 1e-10,
            n_levels: 8,
            threads: 0,
        }
    }
}

/// The full file-level configuration (all sections optional in TOML).
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RawConfig {
    pub material: MaterialSection,
    pub dot: DotSection,
    pub basis: BasisSection,
    pub quadrature: QuadratureSection,
    pub solver: SolverSection,
}

impl RawConfig {
    pub fn from_toml(text: &str) -> Result<Self, Error> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config parse error: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_toml(&text)
    }
}

/// Apply `HYPERDOT_*` environment overrides through an injectable lookup
/// (testable without touching the process environment).
pub fn apply_env_overrides(
    raw: &mut RawConfig,
    get: impl Fn(&str) -> Option<String>,
) -> Result<(), Error> {
    fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Error>
    where
        T::Err: std::fmt::Display,
    {
        v.parse().map_err(|e| Error::Config(format!("bad {ENV_PREFIX}{key}={v}: {e}")))
    }
    macro_rules! num {
        ($key:literal, $slot:expr) => {
            if let Some(v) = get($key) {
                $slot = parse($key, &v)?;
            }
        };
    }
    num!("M_EFF_RATIO", raw.material.m_eff_ratio);
    num!("EPSILON_R", raw.material.epsilon_r);
    num!("HBAR_OMEGA0_MEV", raw.dot.hbar_omega0_mev);
    num!("B_TESLA", raw.dot.b_tesla);
    num!("RHO0", raw.dot.rho0);
    num!("K_MAX", raw.basis.k_max);
    num!("N_MAX", raw.basis.n_max);
    num!("L_TOTAL", raw.basis.l_total);
    num!("GRID_ALPHA", raw.quadrature.grid_alpha);
    num!("GRID_PHI", raw.quadrature.grid_phi);
    num!("OVERLAP_THRESHOLD", raw.solver.overlap_threshold);
    num!("N_LEVELS", raw.solver.n_levels);
    num!("THREADS", raw.solver.threads);
    if let Some(v) = get("BETA_MEV") {
        raw.dot.beta_mev = Some(parse("BETA_MEV", &v)?);
    }
    if let Some(v) = get("SECTOR") {
        raw.basis.sector = parse_sector(&v)?;
    }
    if let Some(v) = get("PREFACTOR") {
        raw.solver.prefactor = parse_prefactor(&v)?;
    }
    Ok(())
}

/// Apply overrides from the process environment.
pub fn apply_process_env(raw: &mut RawConfig) -> Result<(), Error> {
    apply_env_overrides(raw, |key| std::env::var(format!("{ENV_PREFIX}{key}")).ok())
}

pub fn parse_sector(s: &str) -> Result<YoungSector, Error> {
    match s.to_ascii_lowercase().as_str() {
        "symmetric" => Ok(YoungSector::Symmetric),
        "mixed" => Ok(YoungSector::Mixed),
        "antisymmetric" => Ok(YoungSector::Antisymmetric),
        _ => Err(Error::Config(format!(
            "unknown sector '{s}' (expected symmetric | mixed | antisymmetric)"
        ))),
    }
}

pub fn parse_prefactor(s: &str) -> Result<PrefactorMode, Error> {
    match s.to_ascii_lowercase().as_str() {
        "paper" => Ok(PrefactorMode::Paper),
        "oracle" => Ok(PrefactorMode::Oracle),
        _ => Err(Error::Config(format!("unknown prefactor '{s}' (expected paper | oracle)"))),
    }
}

/// Command-line overrides (highest precedence).
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub k_max: Option<u32>,
    pub n_max: Option<u32>,
    pub beta_mev: Option<f64>,
    pub rho0: Option<f64>,
    pub b_tesla: Option<f64>,
    pub l_total: Option<i32>,
    pub sector: Option<YoungSector>,
    pub prefactor: Option<PrefactorMode>,
    pub n_levels: Option<usize>,
    pub threads: Option<usize>,
}

/// Fully resolved and validated run configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub material: MaterialParams,
    pub dot: DotConfig,
    pub solver: SolverOptions,
    pub n_levels: usize,
    pub threads: usize,
    /// True when `beta_mev` came from the material default rather than the
    /// file/env/flags.
    pub beta_defaulted: bool,
}

/// Merge `raw` (already env-patched) with CLI overrides and validate.
pub fn resolve(raw: &RawConfig, ov: &Overrides) -> Result<RunConfig, Error> {
    let material = MaterialParams::new(raw.material.m_eff_ratio, raw.material.epsilon_r)?;
    let hbar_omega0 = raw.dot.hbar_omega0_mev;
    let explicit_beta = ov.beta_mev.or(raw.dot.beta_mev);
    let beta_defaulted = explicit_beta.is_none();
    let beta = match explicit_beta {
        Some(b) => b,
        None => {
            if !(hbar_omega0.is_finite() && hbar_omega0 > 0.0) {
                return Err(Error::Config(format!(
                    "hbar_omega0_mev must be positive, got {hbar_omega0}"
                )));
            }
            default_beta_mev(hbar_omega0, material)
        }
    };
    let dot = DotConfig::new(
        hbar_omega0,
        ov.b_tesla.unwrap_or(raw.dot.b_tesla),
        beta,
        ov.rho0.unwrap_or(raw.dot.rho0),
        material,
    )?;
    let solver = SolverOptions {
        k_max: ov.k_max.unwrap_or(raw.basis.k_max),
        n_max: ov.n_max.unwrap_or(raw.basis.n_max),
        l_total: ov.l_total.unwrap_or(raw.basis.l_total),
        sector: ov.sector.unwrap_or(raw.basis.sector),
        prefactor: ov.prefactor.unwrap_or(raw.solver.prefactor),
        grid_alpha: raw.quadrature.grid_alpha,
        grid_phi: raw.quadrature.grid_phi,
        overlap_threshold: raw.solver.overlap_threshold,
    };
    validate_solver(&solver)?;
    let n_levels = ov.n_levels.unwrap_or(raw.solver.n_levels);
    if n_levels == 0 {
        return Err(Error::Config("n_levels must be at least 1".into()));
    }
    Ok(RunConfig {
        material,
        dot,
        solver,
        n_levels,
        threads: ov.threads.unwrap_or(raw.solver.threads),
        beta_defaulted,
    })
}

fn validate_solver(s: &SolverOptions) -> Result<(), Error> {
    if s.grid_alpha < 8 {
        return Err(Error::Config(format!("grid_alpha {} too small (need >= 8)", s.grid_alpha)));
    }
    // Phase products of harmonics reach frequency 2 K_max per circle; the
    // uniform rule is exact only beyond that.
    if s.grid_phi <= 2 * s.k_max as usize {
        return Err(Error::Config(format!(
            "grid_phi {} cannot resolve K_max {} (need > 2 K_max)",
            s.grid_phi, s.k_max
        )));
    }
    if !(s.overlap_threshold.is_finite() && s.overlap_threshold > 0.0 && s.overlap_threshold < 1.0)
    {
        return Err(Error::Config(format!(
            "overlap_threshold must be in (0, 1), got {}",
            s.overlap_threshold
        )));
    }
    // The smallest channel for total momentum L has K = |L|.
    if s.l_total.unsigned_abs() > s.k_max {
        return Err(Error::Config(format!(
            "no channels exist with K <= {} for L = {}",
            s.k_max, s.l_total
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn defaults_resolve_to_material_beta() {
        let raw = RawConfig::default();
        let rc = resolve(&raw, &Overrides::default()).unwrap();
        assert_relative_eq!(rc.dot.beta_mev, 7.9564, max_relative = 1e-4);
        assert!(rc.beta_defaulted);
        assert_eq!(rc.solver.k_max, 6);
        assert_eq!(rc.solver.n_max, 16);
        assert_eq!(rc.n_levels, 8);
    }

    #[test]
    fn toml_round_trip_and_unknown_key_rejection() {
        let text = r#"
            [dot]
            hbar_omega0_mev = 3.0
            beta_mev = 2.5

            [basis]
            k_max = 4
            sector = "mixed"

            [solver]
            prefactor = "oracle"
        "#;
        let raw = RawConfig::from_toml(text).unwrap();
        assert_eq!(raw.basis.k_max, 4);
        assert_eq!(raw.basis.sector, YoungSector::Mixed);
        assert_eq!(raw.solver.prefactor, PrefactorMode::Oracle);
        let rc = resolve(&raw, &Overrides::default()).unwrap();
        assert_eq!(rc.dot.beta_mev, 2.5);
        assert!(!rc.beta_defaulted);

        let bad = RawConfig::from_toml("[dot]\nhbaromega = 1.0\n");
        assert!(matches!(bad, Err(Error::Config(_))));
    }

    #[test]
    fn env_overrides_apply_and_validate() {
        let mut raw = RawConfig::default();
        let env = |k: &str| match k {
            "K_MAX" => Some("8".to_string()),
            "BETA_MEV" => Some("1.25".to_string()),
            "SECTOR" => Some("antisymmetric".to_string()),
            "PREFACTOR" => Some("oracle".to_string()),
            _ => None,
        };
        apply_env_overrides(&mut raw, env).unwrap();
        assert_eq!(raw.basis.k_max, 8);
        assert_eq!(raw.dot.beta_mev, Some(1.25));
        assert_eq!(raw.basis.sector, YoungSector::Antisymmetric);
        assert_eq!(raw.solver.prefactor, PrefactorMode::Oracle);

        let bad = apply_env_overrides(&mut raw, |k| {
            (k == "N_MAX").then(|| "not-a-number".to_string())
        });
        assert!(matches!(bad, Err(Error::Config(_))));
    }

    #[test]
    fn flag_precedence_beats_env_and_file() {
        let mut raw = RawConfig::from_toml("[basis]\nk_max = 2\n").unwrap();
        apply_env_overrides(&mut raw, |k| (k == "K_MAX").then(|| "4".to_string())).unwrap();
        assert_eq!(raw.basis.k_max, 4);
        let ov = Overrides { k_max: Some(6), ..Default::default() };
        let rc = resolve(&raw, &ov).unwrap();
        assert_eq!(rc.solver.k_max, 6);
    }

    #[test]
    fn validation_catches_coarse_phi_grid() {
        let mut raw = RawConfig::default();
        raw.quadrature.grid_phi = 8;
        raw.basis.k_max = 6;
        let err = resolve(&raw, &Overrides::default());
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn sector_and_prefactor_parsers() {
        assert_eq!(parse_sector("SYMMETRIC").unwrap(), YoungSector::Symmetric);
        assert!(parse_sector("bogus").is_err());
        assert_eq!(parse_prefactor("Paper").unwrap(), PrefactorMode::Paper);
        assert!(parse_prefactor("exact").is_err());
    }
}
