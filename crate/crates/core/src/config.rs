//! Analysis configuration shared across the expansion and contact pipelines.

use crate::scalar::Mode;

/// Coefficient domain plus the global relative tolerance used for every
/// numeric zero test (a complex value `c` counts as zero against a context of
/// scale `S` when `|c| <= tol * S`).
#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub mode: Mode,
    pub tol: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            mode: Mode::Numeric,
            tol: 1e-9,
        }
    }
}

impl Config {
    pub fn numeric() -> Self {
        Config::default()
    }

    pub fn exact() -> Self {
        Config {
            mode: Mode::Exact,
            tol: 1e-9,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Threshold for merging near-coincident roots of an edge polynomial:
    /// multiple roots of an analytically exact polynomial computed in doubles
    /// scatter by roughly the square root of the coefficient error, so the
    /// cluster radius is `sqrt(tol)` times the local scale.
    pub fn cluster_delta(&self, scale: f64) -> f64 {
        self.tol.sqrt() * scale.max(1.0)
    }
}
