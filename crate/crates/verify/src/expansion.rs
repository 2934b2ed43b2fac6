//! The linear far-field expansion u = Γ^λ·c_f + R with a faster-decaying remainder.

use tpns_asymptotics::{expand, mean_force_spec, source::norm, Expansion, ScanPlan, OSCILLATORY_MIN_ALPHA, REMAINDER_MIN_ALPHA};
use tpns_core::Params;
use tpns_solver::ForcingSpec;

use crate::error::VerifyError;
use crate::report::{Bound, ReportBuilder, VerificationReport};

pub const CLAIM: &str = "theorem_2_2_expansion";

/// Whether the profile-dominance assertion runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// Assert it when c_f ≠ 0.
    Auto,
    /// Assert it; an error when c_f = 0, where it is vacuous.
    Required,
}

/// Remainder exponents in every direction, profile dominance at the largest radius
/// when c_f ≠ 0, and for zero-mean forcing the oscillatory exponent.
pub fn verify_expansion(spec: &ForcingSpec, params: &Params) -> Result<(VerificationReport, Expansion), VerifyError> {
    verify_expansion_with(spec, params, &ScanPlan::default(), Dominance::Auto)
}

pub fn verify_expansion_with(
    spec: &ForcingSpec,
    params: &Params,
    plan: &ScanPlan,
    dominance: Dominance,
) -> Result<(VerificationReport, Expansion), VerifyError> {
    if dominance == Dominance::Required && norm(mean_force_spec(spec, plan.ball)) == 0.0 {
        return Err(VerifyError::VacuousDominance);
    }
    let exp = expand(spec, params, plan)?;
    let r = &exp.report;
    let has_mean = norm(r.c_f) > 0.0;
    let mut b = ReportBuilder::new(CLAIM);
    for (i, c) in r.c_f.iter().enumerate() {
        b.record(format!("c_f_{i}"), *c);
    }
    let mut min_alpha = f64::INFINITY;
    for (i, f) in r.fits.iter().enumerate() {
        b.check(format!("alpha_remainder_dir{i}"), f.alpha, Bound::AtLeast(REMAINDER_MIN_ALPHA));
        min_alpha = min_alpha.min(f.alpha);
    }
    b.record("alpha_remainder_min", min_alpha);
    for (i, f) in r.profile_fits.iter().enumerate() {
        b.record(format!("alpha_profile_dir{i}"), f.alpha);
    }
    if let Some(d) = r.dominance_ratio {
        b.check("profile_dominance_ratio", d, Bound::Above(1.0));
    }
    for (i, f) in r.oscillatory_fits.iter().enumerate() {
        let key = format!("alpha_oscillatory_dir{i}");
        if has_mean {
            b.record(key, f.alpha);
        } else {
            b.check(key, f.alpha, Bound::AtLeast(OSCILLATORY_MIN_ALPHA));
        }
    }
    Ok((b.finish(), exp))
}
