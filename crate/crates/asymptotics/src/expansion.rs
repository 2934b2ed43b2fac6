//! Remainder scans and decay fits of the linear expansion u = Γ^λ·c_f + R.

use serde::{Deserialize, Serialize};

use tpns_core::Params;
use tpns_solver::ForcingSpec;

use crate::error::AsymptoticsError;
use crate::farfield::{evaluate_points, profile, FarField};
use crate::fit::{fit_decay, DecayFit};
use crate::ray::RayRule;
use crate::source::{norm, BallRule};

/// Smallest admissible remainder exponent: 3/2 - ε with ε = 0.1.
pub const REMAINDER_MIN_ALPHA: f64 = 1.4;
/// Smallest admissible exponent of the L²-in-time oscillatory far field.
pub const OSCILLATORY_MIN_ALPHA: f64 = 2.8;

/// Sampling plan of an expansion scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanPlan {
    pub directions: Vec<[f64; 3]>,
    pub radii: Vec<f64>,
    /// Radii of the oscillatory L²-in-time fits. Along the downstream axis the
    /// first harmonic still interferes with its exponentially damped wake term near
    /// |x| = 10, so these start further out.
    pub oscillatory_radii: Vec<f64>,
    /// Fractions of the period at which the remainder is sampled.
    pub time_fractions: Vec<f64>,
    pub ball: BallRule,
    pub rays: RayRule,
}

impl Default for ScanPlan {
    fn default() -> Self {
        let d = 1.0 / 3f64.sqrt();
        ScanPlan {
            directions: vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [d, d, d]],
            radii: vec![10.0, 14.0, 20.0, 28.0, 40.0],
            oscillatory_radii: vec![16.0, 22.6, 32.0, 45.3, 64.0],
            time_fractions: vec![0.0, 0.25, 0.5],
            ball: BallRule::default(),
            rays: RayRule::default(),
        }
    }
}

/// One sampled magnitude: a row of `remainder_scan.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub direction: [f64; 3],
    pub radius: f64,
    pub quantity: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub c_f: [f64; 3],
    /// Fits of max_t |R(t, x)|.
    pub fits: Vec<DecayFit>,
    /// Fits of |Γ^λ(x)·c_f| (empty when c_f = 0).
    pub profile_fits: Vec<DecayFit>,
    /// Fits of the L²-in-time magnitude of the oscillatory part (empty without
    /// oscillating harmonics); reported alongside, not part of `pass`.
    pub oscillatory_fits: Vec<DecayFit>,
    /// min over directions of |profile| / max_t |R| at the largest radius (absent
    /// when c_f = 0).
    pub dominance_ratio: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub report: ExpansionReport,
    pub rows: Vec<ScanRow>,
}

fn unit(d: [f64; 3]) -> [f64; 3] {
    let n = norm(d);
    d.map(|v| v / n)
}

/// Samples remainder, profile and oscillatory magnitudes along the plan's rays and
/// fits their decay.
pub fn expand(spec: &ForcingSpec, params: &Params, plan: &ScanPlan) -> Result<Expansion, AsymptoticsError> {
    let ff = FarField::new(spec, params, plan.ball, plan.rays)?;
    let c_f = ff.c_f();
    let has_profile = norm(c_f) > 0.0;
    let directions: Vec<[f64; 3]> = plan.directions.iter().map(|d| unit(*d)).collect();
    let points: Vec<[f64; 3]> = directions
        .iter()
        .flat_map(|d| plan.radii.iter().map(move |r| d.map(|v| v * r)))
        .collect();
    let values = evaluate_points(&ff, &points)?;

    let mut rows = Vec::new();
    let mut fits = Vec::new();
    let mut profile_fits = Vec::new();
    let mut oscillatory_fits = Vec::new();
    let mut dominance: Option<f64> = None;
    let nr = plan.radii.len();
    for (i, d) in directions.iter().enumerate() {
        let mut rem = Vec::with_capacity(nr);
        let mut prof = Vec::with_capacity(nr);
        for (j, &r) in plan.radii.iter().enumerate() {
            let pt = &values[i * nr + j];
            let mut worst: f64 = 0.0;
            for f in &plan.time_fractions {
                worst = worst.max(norm(ff.remainder(pt, f * params.period)?));
            }
            rem.push((r, worst));
            rows.push(ScanRow {
                direction: *d,
                radius: r,
                quantity: "remainder".into(),
                value: worst,
            });
            if has_profile {
                let p = norm(profile(pt.x, c_f, params.lambda)?);
                prof.push((r, p));
                rows.push(ScanRow {
                    direction: *d,
                    radius: r,
                    quantity: "profile".into(),
                    value: p,
                });
            }
        }
        fits.push(fit_decay(&rem, *d, "remainder")?);
        if has_profile {
            profile_fits.push(fit_decay(&prof, *d, "profile")?);
            let ratio = prof[nr - 1].1 / rem[nr - 1].1;
            dominance = Some(dominance.map_or(ratio, |m: f64| m.min(ratio)));
        }
    }
    if ff.has_oscillation() {
        let no = plan.oscillatory_radii.len();
        let points: Vec<[f64; 3]> = directions
            .iter()
            .flat_map(|d| plan.oscillatory_radii.iter().map(move |r| d.map(|v| v * r)))
            .collect();
        let values = evaluate_points(&ff, &points)?;
        for (i, d) in directions.iter().enumerate() {
            let mut osc = Vec::with_capacity(no);
            for (j, &r) in plan.oscillatory_radii.iter().enumerate() {
                let o = values[i * no + j].oscillatory_l2t();
                osc.push((r, o));
                rows.push(ScanRow {
                    direction: *d,
                    radius: r,
                    quantity: "oscillatory_l2t".into(),
                    value: o,
                });
            }
            oscillatory_fits.push(fit_decay(&osc, *d, "oscillatory_l2t")?);
        }
    }
    let pass = fits.iter().all(|f| f.alpha >= REMAINDER_MIN_ALPHA) && dominance.map_or(true, |r| r > 1.0);
    Ok(Expansion {
        report: ExpansionReport {
            c_f,
            fits,
            profile_fits,
            oscillatory_fits,
            dominance_ratio: dominance,
            pass,
        },
        rows,
    })
}
