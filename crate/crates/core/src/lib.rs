//! Hyperspherical eigensolver for three planar electrons in a parabolic
//! quantum dot with a logarithmic pair interaction.
//!
//! The relative motion of three equal-mass particles in the plane lives on a
//! four-dimensional space spanned by two mass-scaled Jacobi vectors. This
//! crate expands the relative wavefunction in hyperspherical harmonics on the
//! unit 3-sphere of that space, couples the channels through the logarithmic
//! pair potential, and solves the resulting hyperradial problem in a
//! generalized-Laguerre basis (Rayleigh-Ritz).
//!
//! Modules follow the pipeline:
//! - [`units`]: material constants, magnetic-field frequencies, unit scaling
//! - [`jacobi`]: mass-scaled Jacobi sets, kinematic rotations, hyperangles
//! - [`hyperangular`]: harmonics, angular quadrature, Raynal-Revai
//!   transforms, S3 symmetrization
//! - [`potential`]: logarithmic pair-interaction coupling matrices
//! - [`radial`]: Laguerre hyperradial basis, analytic log moments, the
//!   finite-difference ODE oracle
//! - [`spectrum`]: Fock-Darwin levels, Hamiltonian assembly, ground state,
//!   field sweeps
//! - [`cli`]: configuration files, output tables/manifests, the `selfcheck`
//!   invariant suite backing the `hyperdot` binary
//!
//! Every major capability has a runnable example; see `examples/` and the
//! README. Run `cargo run --example ground_state_convergence` for the
//! convergence study, or use the thin `hyperdot` binary for CSV/JSON output.

use thiserror::Error;

/// Crate-wide error; the CLI maps the variants onto distinct exit codes
/// (config 2, solver 3, invariant 4; i/o joins solver as 3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the binary: 0 is success, 2 configuration,
    /// 3 solver/i-o, 4 violated internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Solver(_) | Error::Io(_) => 3,
            Error::Invariant(_) => 4,
        }
    }
}

pub mod cli;
pub mod config;
pub mod hyperangular;
pub mod jacobi;
pub mod numeric;
pub mod potential;
pub mod radial;
pub mod spectrum;
pub mod units;
