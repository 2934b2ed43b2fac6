//! Angular dependence of the decay of Γ^λ: the wake region.

use rayon::prelude::*;

use tpns_kernels::{frobenius, oseen_gamma_values};

use crate::error::AsymptoticsError;
use crate::fit::{fit_decay, DecayFit};

/// Downstream axis -sign(λ)·e₁, along which Γ^λ decays slowest.
pub fn downstream_axis(lambda: f64) -> [f64; 3] {
    [-lambda.signum(), 0.0, 0.0]
}

/// Unit direction at angle θ from the downstream axis, turning towards e₂.
pub fn wake_direction(lambda: f64, theta: f64) -> [f64; 3] {
    let d = downstream_axis(lambda);
    [d[0] * theta.cos(), theta.sin(), 0.0]
}

/// Fits the decay of |Γ^λ| along rays at the given angles from the downstream axis;
/// the fits are returned in increasing angle.
pub fn wake_scan(lambda: f64, angles: &[f64], radii: &[f64]) -> Result<Vec<DecayFit>, AsymptoticsError> {
    let mut sorted = angles.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .par_iter()
        .map(|&theta| {
            let d = wake_direction(lambda, theta);
            let samples = radii
                .iter()
                .map(|&r| Ok((r, frobenius(&oseen_gamma_values(d.map(|v| v * r), lambda)?))))
                .collect::<Result<Vec<_>, AsymptoticsError>>()?;
            fit_decay(&samples, d, "gamma_oseen")
        })
        .collect()
}
