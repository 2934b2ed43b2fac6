use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::CoreError;

/// Physical and discretization parameters of a time-periodic run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Drift (Reynolds) parameter; must be nonzero.
    pub lambda: f64,
    /// Time period T > 0.
    pub period: f64,
    /// Half-length L of the periodic box [-L, L)^3.
    pub box_half_length: f64,
    /// Points per spatial axis (even, >= 4).
    pub n_spatial: usize,
    /// Number N of temporal modes: k ranges over -N..=N.
    pub n_temporal: usize,
    /// Apply 2/3-rule dealiasing to quadratic products.
    #[serde(default = "default_dealias")]
    pub dealias: bool,
    /// Relative divergence tolerance for fields flagged solenoidal.
    #[serde(default = "default_tol_div")]
    pub tol_div: f64,
    /// Relative spectral residual tolerance of the nonlinear solver.
    #[serde(default = "default_tol_solver")]
    pub tol_solver: f64,
    /// Iteration cap of the nonlinear solver.
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

fn default_dealias() -> bool {
    true
}
fn default_tol_div() -> f64 {
    1e-10
}
fn default_tol_solver() -> f64 {
    1e-8
}
fn default_max_iter() -> usize {
    30
}

impl Default for Params {
    fn default() -> Self {
        Params {
            lambda: 1.0,
            period: 2.0 * PI,
            box_half_length: 16.0,
            n_spatial: 64,
            n_temporal: 8,
            dealias: true,
            tol_div: default_tol_div(),
            tol_solver: default_tol_solver(),
            max_iter: default_max_iter(),
        }
    }
}

impl Params {
    /// Checks the standing invariants; `lambda = 0` is rejected with "drift required".
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.lambda == 0.0 {
            return Err(CoreError::DriftRequired);
        }
        if !self.lambda.is_finite() {
            return Err(invalid("lambda", "must be finite"));
        }
        if !(self.period > 0.0 && self.period.is_finite()) {
            return Err(invalid("period", "must be positive and finite"));
        }
        if !(self.box_half_length > 0.0 && self.box_half_length.is_finite()) {
            return Err(invalid("box_half_length", "must be positive and finite"));
        }
        if self.n_spatial < 4 || self.n_spatial % 2 != 0 {
            return Err(invalid("n_spatial", "must be even and at least 4"));
        }
        if self.n_temporal < 1 {
            return Err(invalid("n_temporal", "must be at least 1"));
        }
        if !(self.tol_div >= 0.0) {
            return Err(invalid("tol_div", "must be nonnegative"));
        }
        if !(self.tol_solver > 0.0) {
            return Err(invalid("tol_solver", "must be positive"));
        }
        if self.max_iter < 1 {
            return Err(invalid("max_iter", "must be at least 1"));
        }
        Ok(())
    }

    /// Base angular frequency 2π/T.
    pub fn omega(&self) -> f64 {
        2.0 * PI / self.period
    }
}

fn invalid(name: &'static str, reason: &str) -> CoreError {
    CoreError::InvalidParam {
        name,
        reason: reason.to_string(),
    }
}
