//! Reproduction of the reference tables and figures, and the grid
//! verification runner behind `prolate verify`.

pub mod config;
pub mod figures;
pub mod format;
pub mod tables;
pub mod verify;

pub use figures::reproduce_figure;
pub use tables::{reproduce_table, ArtifactId, Cell, Table};
pub use verify::{verify, VerifyReport};

use crate::pswf::DEFAULT_TOL;

/// Knobs shared by tables, figures and the verifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Allow the `c = 10000` table and the `c = 1000` verify band.
    pub heavy: bool,
    pub tol: f64,
    /// Relative perturbation applied to every `χ_n` before checking. Zero in
    /// normal runs; nonzero values are for fault injection.
    pub perturb_chi: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            heavy: false,
            tol: DEFAULT_TOL,
            perturb_chi: 0.0,
        }
    }
}
