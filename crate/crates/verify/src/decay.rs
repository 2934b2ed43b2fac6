//! Decay of the L²-in-time magnitude of Γ⊥ and of its gradient.

use rayon::prelude::*;

use tpns_asymptotics::{fit_decay, geometric_radii, ScanRow};
use tpns_core::Params;
use tpns_kernels::velocity::{l2t_from_modes, positive_modes, synthesize};

use crate::error::VerifyError;
use crate::report::{Bound, ReportBuilder, VerificationReport};

pub const CLAIM: &str = "lemma_4_4_decay";
pub const VALUE_MIN_ALPHA: f64 = 2.8;
pub const GRAD_MIN_ALPHA: f64 = 3.7;
/// Largest admissible max/min ratio of |x|³·value and |x|⁴·gradient over the range.
pub const COMPENSATED_RATIO_MAX: f64 = 5.0;
pub const PLANCHEREL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct DecayPlan {
    pub directions: Vec<[f64; 3]>,
    pub radii: Vec<f64>,
}

impl Default for DecayPlan {
    fn default() -> Self {
        let d = 1.0 / 3f64.sqrt();
        DecayPlan {
            directions: vec![[-1.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [d, d, d]],
            radii: geometric_radii(2.0, 10.0, 6),
        }
    }
}

/// Sampled magnitudes of Γ⊥ (`tp_l2t`), of ∇Γ⊥ (`tp_l2t_grad`) and of every mode
/// (`mode_k<k>`, the Frobenius norm of the k-th slice tensor), plus the relative
/// difference between the Parseval magnitude and a direct time quadrature at the
/// first sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayScan {
    pub rows: Vec<ScanRow>,
    pub plancherel_error: f64,
}

impl DecayScan {
    /// Samples (radius, value) of one quantity along one direction.
    pub fn samples(&self, direction: [f64; 3], quantity: &str) -> Vec<(f64, f64)> {
        self.rows
            .iter()
            .filter(|r| r.direction == direction && r.quantity == quantity)
            .map(|r| (r.radius, r.value))
            .collect()
    }
}

fn unit(d: [f64; 3]) -> [f64; 3] {
    let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    d.map(|v| v / n)
}

pub fn decay_scan(params: &Params, plan: &DecayPlan) -> Result<DecayScan, VerifyError> {
    params.validate()?;
    if plan.directions.is_empty() || plan.radii.is_empty() {
        return Err(VerifyError::EmptyInput("decay plan needs directions and radii"));
    }
    let n = params.n_temporal;
    let points: Vec<([f64; 3], f64)> = plan
        .directions
        .iter()
        .map(|d| unit(*d))
        .flat_map(|d| plan.radii.iter().map(move |&r| (d, r)))
        .collect();
    let modes = points
        .par_iter()
        .map(|(d, r)| positive_modes(d.map(|v| v * r), params, n, 1))
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows = Vec::new();
    for ((d, r), m) in points.iter().zip(&modes) {
        let row = |quantity: String, value: f64| ScanRow {
            direction: *d,
            radius: *r,
            quantity,
            value,
        };
        rows.push(row("tp_l2t".into(), l2t_from_modes(m, 0)));
        rows.push(row("tp_l2t_grad".into(), l2t_from_modes(m, 1)));
        for (k, (slice, _)) in m.iter().enumerate() {
            let f = slice.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            rows.push(row(format!("mode_k{}", k + 1), f));
        }
    }

    // Parseval against the mean of |Γ⊥(t)|² over 4N+1 equispaced times, which is exact
    // for the degree-2N trigonometric polynomial |Γ⊥(t)|².
    let first = &modes[0];
    let mut slices = Vec::with_capacity(2 * n);
    for (k, (m, _)) in first.iter().enumerate() {
        let k = k as i64 + 1;
        slices.push((k, *m));
        slices.push((-k, m.map(|row| row.map(|v| v.conj()))));
    }
    let count = 4 * n + 1;
    let mean_sq = (0..count)
        .map(|j| {
            let t = params.period * j as f64 / count as f64;
            synthesize(t, params, &slices).value.iter().flatten().map(|v| v * v).sum::<f64>()
        })
        .sum::<f64>()
        / count as f64;
    let parseval = l2t_from_modes(first, 0);
    let plancherel_error = (mean_sq.sqrt() - parseval).abs() / parseval;
    Ok(DecayScan { rows, plancherel_error })
}

/// Fits the decay of Γ⊥ and ∇Γ⊥ along every direction of the default plan.
pub fn verify_tp_kernel_decay(params: &Params) -> Result<(VerificationReport, DecayScan), VerifyError> {
    let plan = DecayPlan::default();
    let scan = decay_scan(params, &plan)?;
    Ok((decay_report(&scan, &plan)?, scan))
}

/// Report of an existing scan.
pub fn decay_report(scan: &DecayScan, plan: &DecayPlan) -> Result<VerificationReport, VerifyError> {
    let mut b = ReportBuilder::new(CLAIM);
    let mut min_value: f64 = f64::INFINITY;
    let mut min_grad: f64 = f64::INFINITY;
    for (i, d) in plan.directions.iter().map(|d| unit(*d)).enumerate() {
        for (quantity, power, min_alpha, tag) in [
            ("tp_l2t", 3, VALUE_MIN_ALPHA, "value"),
            ("tp_l2t_grad", 4, GRAD_MIN_ALPHA, "grad"),
        ] {
            let s = scan.samples(d, quantity);
            let fit = fit_decay(&s, d, quantity)?;
            let comp: Vec<f64> = s.iter().map(|(r, v)| r.powi(power) * v).collect();
            let ratio = comp.iter().fold(0.0, |a: f64, &v| a.max(v)) / comp.iter().fold(f64::INFINITY, |a: f64, &v| a.min(v));
            b.check(format!("alpha_{tag}_dir{i}"), fit.alpha, Bound::AtLeast(min_alpha))
                .check(format!("compensated_ratio_{tag}_dir{i}"), ratio, Bound::AtMost(COMPENSATED_RATIO_MAX))
                .record(format!("constant_{tag}_dir{i}"), comp.iter().fold(0.0, |a: f64, &v| a.max(v)));
            if tag == "value" {
                min_value = min_value.min(fit.alpha);
            } else {
                min_grad = min_grad.min(fit.alpha);
            }
        }
    }
    b.record("alpha_value_min", min_value)
        .record("alpha_grad_min", min_grad)
        .check("plancherel_relative_error", scan.plancherel_error, Bound::AtMost(PLANCHEREL_TOL));
    Ok(b.finish())
}
