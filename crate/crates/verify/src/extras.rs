//! Checks of the computational machinery itself: agreement of the two kernel routes,
//! exactness of the lattice multipliers and the small-data Picard iteration.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use tpns_core::{transform, Direction, Params, Representation, TPField};
use tpns_kernels::{mode_velocity_kernel, velocity::Route};
use tpns_multipliers::Multipliers;
use tpns_solver::{
    linear_solve, manufactured_field, manufactured_roundtrip, picard_solve_observed, sample_forcing, spectral_forcing,
    ForcingSpec, Solution,
};

use crate::error::VerifyError;
use crate::report::{Bound, ReportBuilder, VerificationReport};
use crate::symbol::sweep_denominator;

pub const DUAL_ROUTE_CLAIM: &str = "kernel_dual_route";
pub const MULTIPLIER_CLAIM: &str = "multiplier_exactness";
pub const PICARD_CLAIM: &str = "picard_small_data";

pub const DUAL_ROUTE_TOL: f64 = 1e-3;
pub const DUAL_ROUTE_POINTS: usize = 20;
/// Radii of the dual-route sample points.
pub const DUAL_ROUTE_RADII: (f64, f64) = (1.0, 6.0);
pub const ROUNDTRIP_TOL: f64 = 1e-9;
pub const IDEMPOTENCE_TOL: f64 = 1e-13;
pub const FIRST_ITERATE_TOL: f64 = 1e-12;
pub const MAX_PICARD_ITERATIONS: usize = 30;
/// Admissible ratio of nonlinear corrections across an amplitude halving (4 ± factor 2).
pub const CORRECTION_RATIO: (f64, f64) = (2.0, 8.0);

/// Seeded sample (k, x) pairs: uniform direction, radius uniform in the range, k
/// uniform in 1..=N.
pub fn dual_route_points(params: &Params, seed: u64, count: usize) -> Vec<(i64, [f64; 3])> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=params.n_temporal as i64);
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let r = rng.gen_range(DUAL_ROUTE_RADII.0..DUAL_ROUTE_RADII.1);
            let s = (1.0 - z * z).sqrt();
            (k, [r * s * phi.cos(), r * s * phi.sin(), r * z])
        })
        .collect()
}

/// Spectral against convolution evaluation of the per-mode velocity kernel.
pub fn verify_dual_route(params: &Params, seed: u64) -> Result<VerificationReport, VerifyError> {
    params.validate()?;
    let points = dual_route_points(params, seed, DUAL_ROUTE_POINTS);
    let errors = points
        .par_iter()
        .map(|&(k, x)| {
            let conv = mode_velocity_kernel(k, x, params, Route::Convolution)?;
            let spec = mode_velocity_kernel(k, x, params, Route::Spectral)?;
            Ok(conv.max_diff(&spec) / conv.max_abs())
        })
        .collect::<Result<Vec<f64>, VerifyError>>()?;
    let mut b = ReportBuilder::new(DUAL_ROUTE_CLAIM);
    b.check("max_relative_difference", errors.iter().fold(0.0, |a: f64, &e| a.max(e)), Bound::AtMost(DUAL_ROUTE_TOL))
        .record("points", errors.len() as f64);
    Ok(b.finish())
}

fn random_physical_field(params: &Params, seed: u64) -> Result<TPField, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = TPField::zeros(params, 3, Representation::Physical)?;
    for v in f.data.iter_mut() {
        *v = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
    }
    Ok(f)
}

/// Manufactured roundtrip through the oscillatory inverse, idempotence of the
/// Helmholtz projection on a random field, and the oscillatory denominator.
pub fn verify_multiplier_exactness(params: &Params, seed: u64) -> Result<VerificationReport, VerifyError> {
    params.validate()?;
    let w = manufactured_field(
        params,
        seed,
        params.n_temporal.min(3) as i64,
        (params.n_spatial / 4) as i64,
    )?;
    let roundtrip = manufactured_roundtrip(&w, params)?;

    let mult = Multipliers::new(params)?;
    let g = transform(&random_physical_field(params, seed)?, Direction::ToSpectral)?;
    let once = mult.helmholtz(&g)?;
    let twice = mult.helmholtz(&once)?;
    let idem = once
        .data
        .iter()
        .zip(&twice.data)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
        / once.max_abs();

    let s = sweep_denominator(params)?;
    let exact = 2.0 * std::f64::consts::PI / params.period;
    let mut b = ReportBuilder::new(MULTIPLIER_CLAIM);
    b.check("roundtrip_relative_error", roundtrip, Bound::AtMost(ROUNDTRIP_TOL))
        .check("helmholtz_idempotence", idem, Bound::AtMost(IDEMPOTENCE_TOL))
        .check("min_oscillatory_denominator", s.min_oscillatory, Bound::Above(0.0))
        .check(
            "unit_mode_denominator_error",
            (s.unit_mode[0] - exact).abs().max((s.unit_mode[1] - exact).abs()),
            Bound::AtMost(0.0),
        );
    Ok(b.finish())
}

/// Picard solve keeping the first iterate.
fn solve_with_first(f: &TPField, params: &Params) -> Result<(Solution, TPField), VerifyError> {
    let mut first = None;
    let sol = picard_solve_observed(f, params, |m, u| {
        if m == 1 {
            first = Some(u.clone());
        }
    })?;
    let first = first.expect("at least one Picard iteration runs");
    Ok((sol, first))
}

fn max_diff(a: &TPField, b: &TPField) -> f64 {
    a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// The converged solution at the recorded amplitude together with its sampled forcing.
#[derive(Clone, Debug)]
pub struct SmallDataSolve {
    pub solution: Solution,
    pub forcing: TPField,
    pub amplitude: f64,
}

/// Small-data Picard checks at the amplitude of `spec` and at half of it.
pub fn verify_picard_small_data(
    spec: &ForcingSpec,
    params: &Params,
) -> Result<(VerificationReport, SmallDataSolve), VerifyError> {
    let f = sample_forcing(spec, params)?;
    let (sol, first) = solve_with_first(&f, params)?;
    let mult = Multipliers::new(params)?;
    let linear = linear_solve(&mult, &spectral_forcing(&f, params)?)?;
    let scale = linear.max_abs();
    let first_err = if scale > 0.0 { max_diff(&first, &linear) / scale } else { max_diff(&first, &linear) };
    let correction = max_diff(&sol.u, &first);

    let half = ForcingSpec {
        amplitude: spec.amplitude.map(|a| a / 2.0),
        ..spec.clone()
    };
    let fh = sample_forcing(&half, params)?;
    let (sol_h, first_h) = solve_with_first(&fh, params)?;
    let correction_h = max_diff(&sol_h.u, &first_h);
    let amplitude = spec.amplitude.iter().map(|a| a * a).sum::<f64>().sqrt();

    let mut b = ReportBuilder::new(PICARD_CLAIM);
    b.record("amplitude", amplitude)
        .check("iterations", sol.iterations as f64, Bound::AtMost(MAX_PICARD_ITERATIONS as f64))
        .check_flag("converged", sol.converged)
        .check("final_residual", sol.final_residual(), Bound::AtMost(params.tol_solver))
        .check("relative_divergence", sol.relative_divergence()?, Bound::AtMost(params.tol_div))
        .check("first_iterate_error", first_err, Bound::AtMost(FIRST_ITERATE_TOL))
        .record("half_amplitude_iterations", sol_h.iterations as f64)
        .record("nonlinear_correction", correction)
        .record("half_amplitude_nonlinear_correction", correction_h);
    let ratio = if correction_h > 0.0 { correction / correction_h } else { f64::NAN };
    b.check(
        "correction_ratio",
        ratio,
        Bound::Within(CORRECTION_RATIO.0, CORRECTION_RATIO.1),
    );
    Ok((
        b.finish(),
        SmallDataSolve {
            solution: sol,
            forcing: f,
            amplitude,
        },
    ))
}
