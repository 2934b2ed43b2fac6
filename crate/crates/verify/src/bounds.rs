//! Pointwise bounds of the per-mode scalar kernel Γ_{R,k} and its derivatives.

use tpns_asymptotics::fit_decay;
use tpns_core::Params;
use tpns_kernels::{scalar_jet, ModeRates};

use crate::error::VerifyError;
use crate::report::{Bound, ReportBuilder, VerificationReport};

pub const CLAIM: &str = "lemma_4_3_kernel_bounds";

/// Largest admissible growth of a compensated maximum from the smallest to any
/// larger |k| (the bound must hold with one constant for all k).
pub const K_GROWTH_MAX: f64 = 2.0;

/// The 26 directions towards the neighbours of a cube cell, normalized.
pub fn cube_directions() -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity(26);
    for a in -1i32..=1 {
        for b in -1i32..=1 {
            for c in -1i32..=1 {
                if (a, b, c) == (0, 0, 0) {
                    continue;
                }
                let v = [a as f64, b as f64, c as f64];
                let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                out.push(v.map(|x| x / n));
            }
        }
    }
    out
}

/// Sample points: the 26 cube directions at `count` geometric radii in [lo, hi].
pub fn default_points(lo: f64, hi: f64, count: usize) -> Vec<[f64; 3]> {
    let radii = tpns_asymptotics::geometric_radii(lo, hi, count);
    cube_directions()
        .into_iter()
        .flat_map(|d| radii.clone().into_iter().map(move |r| d.map(|v| v * r)))
        .collect()
}

/// Checks, over all (k, x):
/// - |Γ_{R,k}(x)| ≤ 1/(4π|x|) exactly;
/// - the slope of log(4π|x||Γ_{R,k}(x)|) against √|k|·|x| is negative (rate c > 0);
/// - |∇Γ| / ((|x|⁻² + √|k||x|⁻¹)e^{-c₀√|k||x|}) and
///   |∇²Γ| / ((|x|⁻³ + √|k||x|⁻² + |k||x|⁻¹)e^{-c₀√|k||x|}) have maxima that do not grow
///   with |k|, where c₀ = min_k (Re a_k - |b|)/√|k| is the uniform decay rate.
pub fn verify_mode_kernel_bounds(params: &Params, ks: &[i64], xs: &[[f64; 3]]) -> Result<VerificationReport, VerifyError> {
    params.validate()?;
    if ks.contains(&0) {
        return Err(VerifyError::SteadyMode);
    }
    if ks.is_empty() || xs.is_empty() {
        return Err(VerifyError::EmptyInput("k set and point set must be nonempty"));
    }
    let mut ks = ks.to_vec();
    ks.sort_by_key(|k| k.unsigned_abs());
    let rates: Vec<ModeRates> = ks.iter().map(|&k| ModeRates::new(k, params.lambda, params.period)).collect();
    let c0 = ks
        .iter()
        .zip(&rates)
        .map(|(k, r)| r.min_rate() / (k.unsigned_abs() as f64).sqrt())
        .fold(f64::INFINITY, f64::min);

    let mut max_value_ratio: f64 = 0.0;
    let mut regression = Vec::new();
    let mut comp = Vec::with_capacity(ks.len());
    for (&k, rate) in ks.iter().zip(&rates) {
        let sk = (k.unsigned_abs() as f64).sqrt();
        let kk = k.unsigned_abs() as f64;
        let mut q = [0.0f64; 3];
        for x in xs {
            let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
            let jet = scalar_jet(rate, *x);
            let g = jet.value.norm();
            let ratio = 4.0 * std::f64::consts::PI * r * g;
            max_value_ratio = max_value_ratio.max(ratio);
            regression.push((sk * r, ratio.ln()));
            let env = (-c0 * sk * r).exp();
            let grad = jet.grad.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            let hess = jet.hess.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            q[0] = q[0].max(g * r / env);
            q[1] = q[1].max(grad / ((r.powi(-2) + sk / r) * env));
            q[2] = q[2].max(hess / ((r.powi(-3) + sk * r.powi(-2) + kk / r) * env));
        }
        comp.push(q);
    }
    let slope = least_squares_slope(&regression);

    let mut b = ReportBuilder::new(CLAIM);
    b.check("max_value_times_4pi_r", max_value_ratio, Bound::AtMost(1.0))
        .check("fitted_rate_c", -slope, Bound::Above(0.0))
        .record("uniform_rate_c0", c0);
    for (d, name) in ["value", "gradient", "hessian"].iter().enumerate() {
        let first = comp[0][d];
        let growth = comp.iter().map(|q| q[d]).fold(0.0, f64::max) / first;
        b.record(format!("constant_{name}"), comp.iter().map(|q| q[d]).fold(0.0, f64::max))
            .check(format!("k_growth_{name}"), growth, Bound::AtMost(K_GROWTH_MAX));
    }
    // the value bound also decays in |x| for every k: report the fitted exponent of
    // the smallest mode along the first direction as a sanity figure
    let samples: Vec<(f64, f64)> = xs
        .iter()
        .take_while(|x| same_direction(x, &xs[0]))
        .map(|x| {
            let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
            (r, scalar_jet(&rates[0], *x).value.norm())
        })
        .collect();
    if let Ok(fit) = fit_decay(&samples, xs[0], "mode_scalar") {
        b.record("alpha_first_direction_smallest_k", fit.alpha);
    }
    Ok(b.finish())
}

fn same_direction(a: &[f64; 3], b: &[f64; 3]) -> bool {
    let na = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    let nb = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    (0..3).all(|i| (a[i] / na - b[i] / nb).abs() < 1e-12)
}

/// Slope of the least-squares line through (s, y) pairs.
pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let ms = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - ms) * (p.0 - ms)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - ms) * (p.1 - my)).sum();
    sxy / sxx
}
