//! Pointwise and sphere-integral properties of the steady Oseen kernel Γ^λ.

use rayon::prelude::*;

use tpns_asymptotics::{fit_decay, geometric_radii, wake_direction, wake_scan, DecayFit};
use tpns_kernels::quad::{gauss_interval, sphere_rule};
use tpns_kernels::{frobenius, oseen_gamma_jet, oseen_gamma_values, KernelError};

use crate::error::VerifyError;
use crate::report::{Bound, ReportBuilder, VerificationReport};

pub const CLAIM: &str = "lemma_5_4_oseen";
/// Largest admissible max/min ratio, across directions, of a compensated supremum.
pub const ANISOTROPY_RATIO_MAX: f64 = 50.0;
/// Largest admissible max/min ratio of r^{1/2}∫_{∂B_r}|∇Γ^λ| dS.
pub const SPHERE_RATIO_MAX: f64 = 3.0;
pub const SPHERE_REFINEMENT_TOL: f64 = 1e-6;
pub const DOWNSTREAM_ALPHA: (f64, f64) = (0.9, 1.1);

/// Sphere radii 1, 2, 4, …, 64.
pub fn sphere_radii() -> Vec<f64> {
    (0..7).map(|j| 2f64.powi(j)).collect()
}

/// Angles of the wake scan, from the downstream axis.
pub fn wake_angles() -> Vec<f64> {
    use std::f64::consts::PI;
    vec![0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI]
}

fn grad_norm(x: [f64; 3], lambda: f64) -> Result<f64, KernelError> {
    let (_, dg) = oseen_gamma_jet(x, lambda, true)?;
    Ok(dg.iter().flatten().flatten().map(|v| v * v).sum::<f64>().sqrt())
}

/// ∫_{∂B_r}|∇Γ^λ| dS by a product rule around the downstream axis: composite
/// Gauss–Legendre in the polar angle θ on panels [0, a], [a, 2a], [2a, 4a], … with
/// a = 1/(4√(|λ|r)) resolving the wake, and the trapezoidal rule in the azimuth.
pub fn sphere_gradient_integral(r: f64, lambda: f64, order: usize, n_phi: usize) -> Result<f64, KernelError> {
    use std::f64::consts::PI;
    let a = (0.25 / (lambda.abs() * r).sqrt()).min(PI / 4.0);
    let mut edges = vec![0.0];
    let mut e = a;
    while e < PI {
        edges.push(e);
        e *= 2.0;
    }
    edges.push(PI);
    let axis = [-lambda.signum(), 0.0, 0.0];
    let dphi = 2.0 * PI / n_phi as f64;
    let mut total = 0.0;
    for w in edges.windows(2) {
        let (th, wt) = gauss_interval(order, w[0], w[1]);
        for (t, q) in th.iter().zip(&wt) {
            let (s, c) = t.sin_cos();
            let mut ring = 0.0;
            for j in 0..n_phi {
                let (sp, cp) = (dphi * j as f64).sin_cos();
                let x = [axis[0] * c * r, s * cp * r, s * sp * r];
                ring += grad_norm(x, lambda)?;
            }
            total += q * s * ring * dphi * r * r;
        }
    }
    Ok(total)
}

/// Per-direction suprema over |x| ∈ [1, 100] of |x|·|Γ^λ| and |x|^{3/2}·|∇Γ^λ|.
fn compensated_suprema(lambda: f64) -> Result<(Vec<f64>, Vec<f64>), KernelError> {
    let (dirs, _) = sphere_rule(12, 24, [-lambda.signum(), 0.0, 0.0]);
    let mut dirs = dirs;
    dirs.push([-lambda.signum(), 0.0, 0.0]);
    dirs.push([lambda.signum(), 0.0, 0.0]);
    let radii = geometric_radii(1.0, 100.0, 16);
    let sups = dirs
        .par_iter()
        .map(|d| {
            let mut v: f64 = 0.0;
            let mut g: f64 = 0.0;
            for &r in &radii {
                let x = d.map(|c| c * r);
                v = v.max(r * frobenius(&oseen_gamma_values(x, lambda)?));
                g = g.max(r.powf(1.5) * grad_norm(x, lambda)?);
            }
            Ok((v, g))
        })
        .collect::<Result<Vec<_>, KernelError>>()?;
    Ok(sups.into_iter().unzip())
}

fn ratio(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a: f64, &b| a.max(b)) / v.iter().fold(f64::INFINITY, |a: f64, &b| a.min(b))
}

/// Oseen kernel properties and the wake scan behind them.
pub fn verify_oseen_props(lambda: f64) -> Result<(VerificationReport, Vec<DecayFit>), VerifyError> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(KernelError::DriftRequired.into());
    }
    let mut b = ReportBuilder::new(CLAIM);

    let (vsup, gsup) = compensated_suprema(lambda)?;
    b.check("value_sup_anisotropy_ratio", ratio(&vsup), Bound::AtMost(ANISOTROPY_RATIO_MAX))
        .check("gradient_sup_anisotropy_ratio", ratio(&gsup), Bound::AtMost(ANISOTROPY_RATIO_MAX))
        .record("constant_value", vsup.iter().fold(0.0, |a: f64, &v| a.max(v)))
        .record("constant_gradient", gsup.iter().fold(0.0, |a: f64, &v| a.max(v)));

    let radii = sphere_radii();
    let integrals = radii
        .par_iter()
        .map(|&r| {
            let coarse = sphere_gradient_integral(r, lambda, 16, 8)?;
            let fine = sphere_gradient_integral(r, lambda, 32, 16)?;
            Ok((coarse, fine))
        })
        .collect::<Result<Vec<_>, KernelError>>()?;
    let compensated: Vec<f64> = radii.iter().zip(&integrals).map(|(r, (i, _))| r.sqrt() * i).collect();
    let refinement = integrals.iter().map(|(c, f)| (c - f).abs() / f).fold(0.0, f64::max);
    let sphere_fit = fit_decay(
        &radii.iter().zip(&integrals).map(|(r, (i, _))| (*r, *i)).collect::<Vec<_>>(),
        [-lambda.signum(), 0.0, 0.0],
        "sphere_gradient_integral",
    )?;
    b.check("sphere_integral_ratio", ratio(&compensated), Bound::AtMost(SPHERE_RATIO_MAX))
        .check("sphere_refinement_change", refinement, Bound::AtMost(SPHERE_REFINEMENT_TOL))
        .record("alpha_sphere_integral", sphere_fit.alpha);

    let wake = wake_scan(lambda, &wake_angles(), &geometric_radii(5.0, 80.0, 8))?;
    let downstream = wake[0].alpha;
    let monotone = wake.windows(2).all(|w| w[1].alpha >= w[0].alpha);
    let argmin_zero = wake.iter().all(|f| f.alpha >= downstream);
    b.check(
        "alpha_downstream",
        downstream,
        Bound::Within(DOWNSTREAM_ALPHA.0, DOWNSTREAM_ALPHA.1),
    )
    .check_flag("wake_alpha_nondecreasing", monotone)
    .check_flag("wake_alpha_min_at_zero", argmin_zero);
    for (theta, f) in wake_angles().iter().zip(&wake) {
        b.record(format!("alpha_wake_theta{:.4}", theta), f.alpha);
    }
    // consistency of the scan direction convention
    debug_assert_eq!(wake[0].direction, wake_direction(lambda, 0.0));
    Ok((b.finish(), wake))
}
