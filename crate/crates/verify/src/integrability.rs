//! Discrete L^r norms of the time slices of Γ⊥ and ∇Γ⊥ on the run lattice.

use num_complex::Complex64;
use rayon::prelude::*;

use tpns_core::{build_lattice, Params};
use tpns_kernels::spectral::spectral_slice_grid;

use crate::error::VerifyError;
use crate::report::{Bound, ReportBuilder, VerificationReport};

pub const CLAIM: &str = "lemma_4_5_integrability";
/// Largest admissible share of the ball(16) total carried by shell(8, 16).
pub const TAIL_MAX: f64 = 0.05;
pub const DEFAULT_KERNEL_R: [f64; 2] = [1.2, 1.5];
pub const DEFAULT_GRAD_R: [f64; 2] = [1.2, 1.3];
/// Radii 2^j, j = 1..4, of the nested balls.
pub const BALL_RADII: [f64; 4] = [2.0, 4.0, 8.0, 16.0];

/// Weight of each unique symmetric entry in the Frobenius norm.
const SYM_WEIGHT: [f64; 6] = [1.0, 2.0, 2.0, 1.0, 2.0, 1.0];

fn check_exponents(kernel: &[f64], grad: &[f64]) -> Result<(), VerifyError> {
    for &r in kernel {
        if !(r > 1.0 && r < 5.0 / 3.0) {
            return Err(VerifyError::ExponentOutOfRange {
                what: "kernel",
                r,
                range: "(1, 5/3)",
            });
        }
    }
    for &r in grad {
        if !(r > 1.0 && r <= 4.0 / 3.0) {
            return Err(VerifyError::ExponentOutOfRange {
                what: "gradient",
                r,
                range: "(1, 4/3]",
            });
        }
    }
    Ok(())
}

/// Squared Frobenius norms |Γ⊥(t_j, x_p)|² (or of ∂_hΓ⊥ summed over h) at `times`
/// equispaced times, flattened as [j][p].
fn squared_norms(params: &Params, times: usize, gradient: bool) -> Vec<f64> {
    let n = params.n_temporal as i64;
    let np = params.n_spatial.pow(3);
    let phases: Vec<Vec<Complex64>> = (0..times)
        .map(|j| {
            let t = params.period * j as f64 / times as f64;
            (1..=n).map(|k| Complex64::from_polar(1.0, params.omega() * k as f64 * t)).collect()
        })
        .collect();
    let mut acc = vec![0.0; times * np];
    let dirs: Vec<Option<usize>> = if gradient { (0..3).map(Some).collect() } else { vec![None] };
    for dir in dirs {
        let slices: Vec<Vec<[Complex64; 6]>> = (1..=n).map(|k| spectral_slice_grid(k, params, dir)).collect();
        acc.par_chunks_mut(np).zip(&phases).for_each(|(out, ph)| {
            for (p, o) in out.iter_mut().enumerate() {
                let mut s = 0.0;
                for (e, w) in SYM_WEIGHT.iter().enumerate() {
                    let mut v = 0.0;
                    for (slice, z) in slices.iter().zip(ph) {
                        v += 2.0 * (z * slice[p][e]).re;
                    }
                    s += w * v * v;
                }
                *o += s;
            }
        });
    }
    acc
}

/// Σ over lattice points and time samples of |·|^r·h³/M inside each nested ball, the
/// origin cell excluded.
fn ball_integrals(params: &Params, sq: &[f64], times: usize, r: f64) -> Result<[f64; 4], VerifyError> {
    let lat = build_lattice(params)?;
    let np = lat.n_space();
    let w = lat.spacing().powi(3) / times as f64;
    let mut out = [0.0; 4];
    for p in 0..np {
        let x = lat.point(p);
        let rad = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if rad == 0.0 {
            continue;
        }
        let s: f64 = (0..times).map(|j| sq[j * np + p].powf(r / 2.0)).sum::<f64>() * w;
        for (o, &b) in out.iter_mut().zip(&BALL_RADII) {
            if rad < b {
                *o += s;
            }
        }
    }
    Ok(out)
}

/// Nested-ball integrals ∫|Γ⊥|^r over ball(2^j), j = 1..4, for each requested
/// exponent; the shell(8, 16) tail is (I₄ - I₃)/I₄.
pub fn verify_integrability(params: &Params, kernel_r: &[f64], grad_r: &[f64]) -> Result<VerificationReport, VerifyError> {
    params.validate()?;
    check_exponents(kernel_r, grad_r)?;
    if params.box_half_length < BALL_RADII[3] {
        return Err(VerifyError::ShellOutsideTrustedRegion {
            inner: BALL_RADII[2],
            outer: BALL_RADII[3],
            limit: params.box_half_length,
        });
    }
    let times = 4 * params.n_temporal + 1;
    let mut b = ReportBuilder::new(CLAIM);
    b.record("origin_exclusion_half_width", build_lattice(params)?.spacing() / 2.0)
        .record("time_samples", times as f64);
    for (gradient, rs, tag) in [(false, kernel_r, "kernel"), (true, grad_r, "grad")] {
        if rs.is_empty() {
            continue;
        }
        let sq = squared_norms(params, times, gradient);
        for &r in rs {
            let ints = ball_integrals(params, &sq, times, r)?;
            for (j, v) in ints.iter().enumerate() {
                b.record(format!("{tag}_r{r}_ball{}", BALL_RADII[j]), v.powf(1.0 / r));
            }
            b.check(format!("{tag}_r{r}_tail"), (ints[3] - ints[2]) / ints[3], Bound::AtMost(TAIL_MAX));
        }
    }
    Ok(b.finish())
}
