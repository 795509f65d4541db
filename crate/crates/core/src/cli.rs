//! Command-line interface behind the thin `hyperdot` binary.
//!
//! Subcommands:
//! - `cm-spectrum`: center-of-mass Fock-Darwin levels at one field point
//! - `rel-spectrum`: interacting relative-motion levels at one field point
//! - `ground-state`: ground energy with a convergence trace over K cutoffs
//! - `sweep`: levels vs magnetic field (`--b START:STOP:STEPS`), CSV output
//! - `selfcheck`: named internal invariant checks (exit 4 on any failure)
//!
//! Every command prints a JSON envelope (version, echoed configuration,
//! result, wall time) to stdout. `--out PATH` additionally writes the CSV
//! table plus a `PATH.manifest.json` run manifest. CSV files contain no
//! timestamps and identical runs produce byte-identical CSV, so diffing
//! output across runs or thread counts is meaningful; volatile metadata
//! (wall time) lives only in the manifest/envelope.
//!
//! Configuration precedence: defaults < `--config` TOML < `HYPERDOT_*`
//! environment variables < flags.

use crate::config::{apply_process_env, parse_sector, Overrides, RawConfig, RunConfig};
use crate::hyperangular::{
    enumerate_channels, gram_matrix, rr_matrix, AngularGrid, YoungSector,
};
use crate::jacobi::JacobiSet;
use crate::numeric::{integrate_poly_times_log, C64};
use crate::radial::{log_moment_checked, PrefactorMode};
use crate::spectrum::{
    field_sweep, ground_state_trace, linspace, solve_relative, GroundStateTrace, SpectrumTable,
    SweepKind,
};
use crate::units::Frequencies;
use crate::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::Serialize;
use std::path::PathBuf;
use std::time::Instant;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Source revision captured at build time ("unknown" outside a checkout).
pub const CODE_HASH: &str = env!("HYPERDOT_BUILD_HASH");

#[derive(Debug, Parser)]
#[command(
    name = "hyperdot",
    version,
    about = "Spectra of three planar electrons in a parabolic dot with logarithmic interaction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by all subcommands (override file and environment).
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML configuration file.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Grand-angular-momentum cutoff.
    #[arg(long, value_name = "K")]
    pub k_max: Option<u32>,
    /// Radial basis size per angular state (N = 0..=n_max).
    #[arg(long, value_name = "N")]
    pub n_max: Option<u32>,
    /// Interaction strength in meV.
    #[arg(long, value_name = "MEV")]
    pub beta_mev: Option<f64>,
    /// Logarithm reference length (internal units).
    #[arg(long, value_name = "RHO0")]
    pub rho0: Option<f64>,
    /// Magnetic field in Tesla (single-point commands).
    #[arg(long, value_name = "T")]
    pub b_tesla: Option<f64>,
    /// Total planar angular momentum of the relative motion.
    #[arg(long, value_name = "L")]
    pub l_total: Option<i32>,
    /// Exchange sector: symmetric | mixed | antisymmetric.
    #[arg(long, value_name = "SECTOR")]
    pub sector: Option<String>,
    /// Non-interacting ladder convention.
    #[arg(long, value_enum, value_name = "MODE")]
    pub prefactor: Option<PrefactorFlag>,
    /// Number of levels to report.
    #[arg(long, value_name = "COUNT")]
    pub levels: Option<usize>,
    /// Worker threads (0 = runtime default).
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
    /// Write a CSV table here (plus PATH.manifest.json).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrefactorFlag {
    Paper,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepWhat {
    Cm,
    RelNoninteracting,
    RelInteracting,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Center-of-mass Fock-Darwin levels at the configured field.
    CmSpectrum(CommonArgs),
    /// Interacting relative-motion levels at the configured field.
    RelSpectrum(CommonArgs),
    /// Ground-state energy with a convergence trace over K cutoffs.
    GroundState(CommonArgs),
    /// Levels versus magnetic field.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Field grid START:STOP:STEPS (Tesla, inclusive).
        #[arg(long, value_name = "SPEC")]
        b: String,
        /// Which spectrum to sweep.
        #[arg(long, value_enum, default_value = "rel-interacting")]
        what: SweepWhat,
    },
    /// Run named internal invariant checks; exit 4 if any fails.
    Selfcheck(CommonArgs),
}

// ---------------------------------------------------------------------------
// envelopes and manifests
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub version: &'static str,
    pub code_hash: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub result: T,
    pub wall_time_s: f64,
}

#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub version: &'static str,
    pub code_hash: &'static str,
    pub command: String,
    pub config: &'a RunConfig,
    pub sweep_name: String,
    pub label_names: Vec<String>,
    pub n_rows: usize,
    pub csv_file: String,
    pub wall_time_s: f64,
}

fn write_outputs(
    table: &SpectrumTable,
    out: &std::path::Path,
    command: &str,
    config: &RunConfig,
    wall_time_s: f64,
) -> Result<(), Error> {
    std::fs::write(out, table.to_csv())?;
    let manifest = RunManifest {
        version: VERSION,
        code_hash: CODE_HASH,
        command: command.to_string(),
        config,
        sweep_name: table.sweep_name.clone(),
        label_names: table.label_names.clone(),
        n_rows: table.rows.len(),
        csv_file: out
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_else(|| out.display().to_string()),
        wall_time_s,
    };
    let mpath = manifest_path(out);
    std::fs::write(&mpath, serde_json::to_string_pretty(&manifest).expect("manifest json") + "\n")?;
    Ok(())
}

/// `foo.csv -> foo.csv.manifest.json` (keeps the pairing unambiguous).
pub fn manifest_path(out: &std::path::Path) -> PathBuf {
    let mut p = out.as_os_str().to_owned();
    p.push(".manifest.json");
    PathBuf::from(p)
}

// ---------------------------------------------------------------------------
// command execution
// ---------------------------------------------------------------------------

impl CommonArgs {
    fn resolve(&self) -> Result<RunConfig, Error> {
        let mut raw = match &self.config {
            Some(p) => RawConfig::from_file(p)?,
            None => RawConfig::default(),
        };
        apply_process_env(&mut raw)?;
        let ov = Overrides {
            k_max: self.k_max,
            n_max: self.n_max,
            beta_mev: self.beta_mev,
            rho0: self.rho0,
            b_tesla: self.b_tesla,
            l_total: self.l_total,
            sector: self.sector.as_deref().map(parse_sector).transpose()?,
            prefactor: self.prefactor.map(|p| match p {
                PrefactorFlag::Paper => PrefactorMode::Paper,
                PrefactorFlag::Oracle => PrefactorMode::Oracle,
            }),
            n_levels: self.levels,
            threads: self.threads,
        };
        crate::config::resolve(&raw, &ov)
    }
}

/// Parse `START:STOP:STEPS` into a field grid.
pub fn parse_b_spec(spec: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!(
            "--b expects START:STOP:STEPS, got '{spec}'"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|e| Error::Config(format!("bad sweep start '{}': {e}", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|e| Error::Config(format!("bad sweep stop '{}': {e}", parts[1])))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|e| Error::Config(format!("bad sweep steps '{}': {e}", parts[2])))?;
    if start < 0.0 || stop < start {
        return Err(Error::Config(format!(
            "sweep range must satisfy 0 <= START <= STOP, got {start}..{stop}"
        )));
    }
    linspace(start, stop, steps)
}

/// Run inside an optionally sized thread pool so `--threads` takes effect for
/// all parallel sections.
fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Solver(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Debug, Serialize)]
struct LevelsResult {
    levels_mev: Vec<f64>,
    labels: Vec<Vec<String>>,
    b_tesla: f64,
    frequencies: Frequencies,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostics: Option<SolveDiagnostics>,
}

#[derive(Debug, Serialize)]
struct SolveDiagnostics {
    basis_dim: usize,
    n_angular_states: usize,
    a_defect: f64,
    gram_defect: f64,
    loewdin_condition: f64,
    loewdin_pruned: usize,
}

#[derive(Debug, Serialize)]
struct GroundStateResult {
    energy_mev: f64,
    trace: GroundStateTrace,
    diagnostics: SolveDiagnostics,
}

#[derive(Debug, Serialize)]
struct SweepResult {
    n_rows: usize,
    n_fields: usize,
    csv_preview: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Cli {
    /// Execute; the JSON envelope goes to stdout.
    pub fn run(self) -> Result<i32, Error> {
        match self.command {
            Command::CmSpectrum(c) => run_cm(&c),
            Command::RelSpectrum(c) => run_rel(&c),
            Command::GroundState(c) => run_ground(&c),
            Command::Sweep { common, b, what } => run_sweep(&common, &b, what),
            Command::Selfcheck(c) => run_selfcheck(&c),
        }
    }
}

fn emit<T: Serialize>(command: &str, config: RunConfig, result: T, t0: Instant) {
    let env = Envelope {
        version: VERSION,
        code_hash: CODE_HASH,
        command: command.to_string(),
        config,
        result,
        wall_time_s: t0.elapsed().as_secs_f64(),
    };
    println!("{}", serde_json::to_string_pretty(&env).expect("envelope json"));
}

fn run_cm(c: &CommonArgs) -> Result<i32, Error> {
    let t0 = Instant::now();
    let rc = c.resolve()?;
    let table = with_threads(rc.threads, || {
        field_sweep(&rc.dot, &rc.solver, SweepKind::Cm, &[rc.dot.b_tesla], rc.n_levels)
    })??;
    if let Some(out) = &c.out {
        write_outputs(&table, out, "cm-spectrum", &rc, t0.elapsed().as_secs_f64())?;
    }
    let result = LevelsResult {
        levels_mev: table.rows.iter().map(|r| r.energy_mev).collect(),
        labels: table.rows.iter().map(|r| r.labels.clone()).collect(),
        b_tesla: rc.dot.b_tesla,
        frequencies: rc.dot.frequencies(),
        diagnostics: None,
    };
    emit("cm-spectrum", rc, result, t0);
    Ok(0)
}

fn run_rel(c: &CommonArgs) -> Result<i32, Error> {
    let t0 = Instant::now();
    let rc = c.resolve()?;
    let sol = with_threads(rc.threads, || solve_relative(&rc.dot, &rc.solver))??;
    let n = rc.n_levels.min(sol.energies_mev.len());
    let sector_tag = format!("{:?}", rc.solver.sector).to_lowercase();
    let table = SpectrumTable {
        sweep_name: "b_tesla".into(),
        label_names: vec!["level".into(), "l_total".into(), "sector".into()],
        rows: (0..n)
            .map(|i| crate::spectrum::SpectrumRow {
                sweep: rc.dot.b_tesla,
                labels: vec![
                    i.to_string(),
                    rc.solver.l_total.to_string(),
                    sector_tag.clone(),
                ],
                energy_mev: sol.energies_mev[i],
            })
            .collect(),
    };
    if let Some(out) = &c.out {
        write_outputs(&table, out, "rel-spectrum", &rc, t0.elapsed().as_secs_f64())?;
    }
    let result = LevelsResult {
        levels_mev: sol.energies_mev[..n].to_vec(),
        labels: table.rows.iter().map(|r| r.labels.clone()).collect(),
        b_tesla: rc.dot.b_tesla,
        frequencies: rc.dot.frequencies(),
        diagnostics: Some(SolveDiagnostics {
            basis_dim: sol.basis_dim,
            n_angular_states: sol.n_angular_states,
            a_defect: sol.a_defect,
            gram_defect: sol.gram_defect,
            loewdin_condition: sol.loewdin.condition,
            loewdin_pruned: sol.loewdin.n_pruned,
        }),
    };
    emit("rel-spectrum", rc, result, t0);
    Ok(0)
}

fn run_ground(c: &CommonArgs) -> Result<i32, Error> {
    let t0 = Instant::now();
    let rc = c.resolve()?;
    // Trace over K cutoffs of the right parity up to k_max.
    let parity = rc.solver.l_total.rem_euclid(2) as u32;
    let k_values: Vec<u32> = (0..=rc.solver.k_max).filter(|k| k % 2 == parity).collect();
    let (trace, sol) = with_threads(rc.threads, || -> Result<_, Error> {
        let trace = ground_state_trace(&rc.dot, &rc.solver, &k_values)?;
        let sol = solve_relative(&rc.dot, &rc.solver)?;
        Ok((trace, sol))
    })??;
    if let Some(out) = &c.out {
        let table = SpectrumTable {
            sweep_name: "k_max".into(),
            label_names: vec!["basis_dim".into()],
            rows: trace
                .entries
                .iter()
                .map(|e| crate::spectrum::SpectrumRow {
                    sweep: f64::from(e.k_max),
                    labels: vec![e.basis_dim.to_string()],
                    energy_mev: e.energy_mev,
                })
                .collect(),
        };
        write_outputs(&table, out, "ground-state", &rc, t0.elapsed().as_secs_f64())?;
    }
    let result = GroundStateResult {
        energy_mev: sol.energies_mev[0],
        trace,
        diagnostics: SolveDiagnostics {
            basis_dim: sol.basis_dim,
            n_angular_states: sol.n_angular_states,
            a_defect: sol.a_defect,
            gram_defect: sol.gram_defect,
            loewdin_condition: sol.loewdin.condition,
            loewdin_pruned: sol.loewdin.n_pruned,
        },
    };
    emit("ground-state", rc, result, t0);
    Ok(0)
}

fn run_sweep(c: &CommonArgs, b_spec: &str, what: SweepWhat) -> Result<i32, Error> {
    let t0 = Instant::now();
    let rc = c.resolve()?;
    let grid = parse_b_spec(b_spec)?;
    let kind = match what {
        SweepWhat::Cm => SweepKind::Cm,
        SweepWhat::RelNoninteracting => SweepKind::RelNoninteracting,
        SweepWhat::RelInteracting => SweepKind::RelInteracting,
    };
    let table =
        with_threads(rc.threads, || field_sweep(&rc.dot, &rc.solver, kind, &grid, rc.n_levels))??;
    if let Some(out) = &c.out {
        write_outputs(&table, out, "sweep", &rc, t0.elapsed().as_secs_f64())?;
    }
    let csv = table.to_csv();
    let result = SweepResult {
        n_rows: table.rows.len(),
        n_fields: grid.len(),
        csv_preview: csv.lines().take(6).map(|s| s.to_string()).collect(),
    };
    emit("sweep", rc, result, t0);
    Ok(0)
}

// ---------------------------------------------------------------------------
// selfcheck
// ---------------------------------------------------------------------------

/// Run the named invariant checks. All are fast (seconds, not minutes).
pub fn run_checks(rc: &RunConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        out.push(CheckResult { name: name.to_string(), passed, detail });
    };

    // 1. Logarithmic angular quadrature anchor.
    let anchor = 0.25 * integrate_poly_times_log(|_| 1.0);
    push(
        "angular-log-anchor",
        (anchor + 0.25).abs() < 1e-12,
        format!("integral {anchor:.15} vs -0.25"),
    );

    // 2. Channel Gram matrix is the identity.
    let grid = AngularGrid::new(48, 32);
    let channels = enumerate_channels(4, 0, None);
    let gram = gram_matrix(&channels, &grid);
    let id = DMatrix::<C64>::identity(channels.len(), channels.len());
    let gd = (&gram - &id).camax();
    push("angular-gram-identity", gd < 1e-10, format!("defect {gd:.3e}"));

    // 3. Kinematic-rotation cycle composes to the identity.
    let mut worst = 0.0f64;
    for &(k, l) in &[(2u32, 0i32), (4, 0)] {
        let m12 = rr_matrix(k, l, JacobiSet::S1, JacobiSet::S2, &grid);
        let m23 = rr_matrix(k, l, JacobiSet::S2, JacobiSet::S3, &grid);
        let m31 = rr_matrix(k, l, JacobiSet::S3, JacobiSet::S1, &grid);
        let dim = m12.nrows();
        let cyc = (&m12 * &m23 * &m31 - DMatrix::<C64>::identity(dim, dim)).camax();
        let uni = (&m12 * m12.adjoint() - DMatrix::<C64>::identity(dim, dim)).camax();
        worst = worst.max(cyc).max(uni);
    }
    push("kinematic-cycle-identity", worst < 1e-8, format!("worst defect {worst:.3e}"));

    // 4. Radial log moments: analytic formula vs quadrature.
    let mut worst_detail = String::from("all pairs agree within 1e-10");
    let mut ok = true;
    'outer: for k in [0u32, 2, 4] {
        for n1 in 0..=6u32 {
            for n2 in n1..=6u32 {
                if let Err(e) = log_moment_checked(k, n1, n2, 1.0, rc.dot.rho0) {
                    ok = false;
                    worst_detail = format!("{e}");
                    break 'outer;
                }
            }
        }
    }
    push("radial-log-dual-route", ok, worst_detail);

    // 5. Non-interacting reduction in both prefactor conventions.
    let mut red_ok = true;
    let mut red_detail = String::new();
    for mode in [PrefactorMode::Oracle, PrefactorMode::Paper] {
        let mut dot = rc.dot;
        dot.beta_mev = 0.0;
        let opts = crate::spectrum::SolverOptions {
            k_max: 4,
            n_max: 4,
            l_total: 0,
            sector: YoungSector::Symmetric,
            prefactor: mode,
            grid_alpha: 48,
            grid_phi: 32,
            overlap_threshold: rc.solver.overlap_threshold,
        };
        match solve_relative(&dot, &opts) {
            Ok(sol) => {
                let f = dot.frequencies();
                let want = mode.value() * 2.0 * f.omega_eff_mev;
                let dev = (sol.energies_mev[0] - want).abs() / want.abs();
                if dev > 1e-8 {
                    red_ok = false;
                    red_detail = format!("{mode:?}: ground deviates {dev:.3e}");
                }
            }
            Err(e) => {
                red_ok = false;
                red_detail = format!("{mode:?}: {e}");
            }
        }
    }
    if red_ok {
        red_detail = "beta = 0 reproduces the closed-form ladder in both conventions".into();
    }
    push("noninteracting-reduction", red_ok, red_detail);

    // 6. Detector sensitivity: a deliberately under-resolved phi grid must
    // produce a large Gram defect (the invariant detectors can fail).
    let coarse = AngularGrid::new(48, 4);
    let ch6 = enumerate_channels(4, 0, None);
    let bad = (gram_matrix(&ch6, &coarse) - DMatrix::<C64>::identity(ch6.len(), ch6.len())).camax();
    push(
        "coarse-grid-detector",
        bad > 1e-3,
        format!("corrupted quadrature defect {bad:.3e} (must be large)"),
    );

    // 7. Determinism: repeated small sweeps are byte-identical.
    let dot = rc.dot;
    let opts = crate::spectrum::SolverOptions {
        k_max: 2,
        n_max: 4,
        l_total: 0,
        sector: YoungSector::Symmetric,
        prefactor: rc.solver.prefactor,
        grid_alpha: 32,
        grid_phi: 16,
        overlap_threshold: rc.solver.overlap_threshold,
    };
    let grid_b: Vec<f64> = vec![0.0, 0.5, 1.0];
    let run = || {
        field_sweep(&dot, &opts, SweepKind::RelInteracting, &grid_b, 3).map(|t| t.to_csv())
    };
    match (run(), run()) {
        (Ok(a), Ok(b)) => push(
            "sweep-determinism",
            a == b,
            if a == b { "identical bytes across repeated runs".into() } else { "outputs differ".into() },
        ),
        (Err(e), _) | (_, Err(e)) => push("sweep-determinism", false, format!("{e}")),
    }

    out
}

fn run_selfcheck(c: &CommonArgs) -> Result<i32, Error> {
    let t0 = Instant::now();
    let rc = c.resolve()?;
    let checks = with_threads(rc.threads, || run_checks(&rc))?;
    let all_passed = checks.iter().all(|c| c.passed);
    for c in &checks {
        eprintln!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    emit("selfcheck", rc, &checks, t0);
    if all_passed {
        Ok(0)
    } else {
        Err(Error::Invariant("selfcheck failed; see check list".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_spec_parsing() {
        assert_eq!(parse_b_spec("0:2:5").unwrap(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(parse_b_spec("1.5:1.5:1").unwrap(), vec![1.5]);
        assert!(parse_b_spec("2:1:5").is_err());
        assert!(parse_b_spec("0:1").is_err());
        assert!(parse_b_spec("a:b:c").is_err());
        assert!(parse_b_spec("-1:1:3").is_err());
    }

    #[test]
    fn manifest_path_appends_suffix() {
        assert_eq!(
            manifest_path(std::path::Path::new("out/run.csv")),
            PathBuf::from("out/run.csv.manifest.json")
        );
    }

    #[test]
    fn cli_parses_subcommands_and_flags() {
        let cli = Cli::try_parse_from([
            "hyperdot",
            "sweep",
            "--b",
            "0:10:21",
            "--what",
            "cm",
            "--k-max",
            "4",
            "--prefactor",
            "oracle",
            "--threads",
            "2",
        ])
        .unwrap();
        match cli.command {
            Command::Sweep { common, b, what } => {
                assert_eq!(b, "0:10:21");
                assert_eq!(what, SweepWhat::Cm);
                assert_eq!(common.k_max, Some(4));
                assert_eq!(common.prefactor, Some(PrefactorFlag::Oracle));
                assert_eq!(common.threads, Some(2));
            }
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["hyperdot", "bogus"]).is_err());
    }

    #[test]
    fn selfcheck_suite_passes_on_defaults() {
        let raw = RawConfig::default();
        let rc = crate::config::resolve(&raw, &Default::default()).unwrap();
        let checks = run_checks(&rc);
        assert!(checks.len() >= 6);
        for c in &checks {
            assert!(c.passed, "check {} failed: {}", c.name, c.detail);
        }
    }
}
