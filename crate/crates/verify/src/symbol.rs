//! Non-vanishing of the oscillatory symbol |ξ|² + i((2π/T)k - λξ₁) on the lattice.

use tpns_core::{build_lattice, Params};
use tpns_multipliers::osc_denominator;

use crate::error::VerifyError;
use crate::report::{Bound, ReportBuilder, VerificationReport};

pub const CLAIM: &str = "lemma_4_2_symbol";

/// Exhaustive sweep of the denominator over every lattice mode (k, ξ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DenominatorSweep {
    /// min |D| over k ≠ 0.
    pub min_oscillatory: f64,
    /// Number of lattice modes with D = 0.
    pub zeros: usize,
    /// Whether (0, 0) is one of them.
    pub zero_at_origin: bool,
    /// |D| at (k = 1, ξ = 0) and at (k = -1, ξ = 0).
    pub unit_mode: [f64; 2],
}

pub fn sweep_denominator(params: &Params) -> Result<DenominatorSweep, VerifyError> {
    params.validate()?;
    let lat = build_lattice(params)?;
    let mut min_osc = f64::INFINITY;
    let mut zeros = 0;
    let mut zero_at_origin = false;
    for it in 0..lat.n_time() {
        let k = lat.temporal_mode(it);
        for p in 0..lat.n_space() {
            let d = osc_denominator(&lat, params, k, p).norm();
            if d == 0.0 {
                zeros += 1;
                zero_at_origin |= k == 0 && p == 0;
            }
            if k != 0 {
                min_osc = min_osc.min(d);
            }
        }
    }
    let unit_mode = [1, -1].map(|k| osc_denominator(&lat, params, k, 0).norm());
    Ok(DenominatorSweep {
        min_oscillatory: min_osc,
        zeros,
        zero_at_origin,
        unit_mode,
    })
}

/// Asserts min over k ≠ 0 of |D| > 0, that (0, 0) is the only lattice zero and that
/// |D| = 2π/T exactly at (±1, 0).
pub fn verify_symbol_nonvanishing(params: &Params) -> Result<VerificationReport, VerifyError> {
    let s = sweep_denominator(params)?;
    let exact = 2.0 * std::f64::consts::PI / params.period;
    let mut b = ReportBuilder::new(CLAIM);
    b.check("min_oscillatory_denominator", s.min_oscillatory, Bound::Above(0.0))
        .check("lattice_zero_count", s.zeros as f64, Bound::Within(1.0, 1.0))
        .check_flag("zero_only_at_origin", s.zero_at_origin && s.zeros == 1)
        .check(
            "unit_mode_denominator_error",
            (s.unit_mode[0] - exact).abs().max((s.unit_mode[1] - exact).abs()),
            Bound::AtMost(0.0),
        )
        .record("unit_mode_denominator", s.unit_mode[0]);
    Ok(b.finish())
}
