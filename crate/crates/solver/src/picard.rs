//! Small-data Picard iteration for the time-periodic Navier–Stokes system
//! ∂_t u - Δu - λ∂₁u + ∇p + u·∇u = f, div u = 0, on the periodic lattice.
//!
//! Each step solves the steady part with the steady Oseen inverse and the oscillatory
//! part with the oscillatory inverse after Helmholtz projection:
//! u^{m+1} = A[P(f - N(u^m))] + A⊥[P_H P⊥(f - N(u^m))], N(u) = div(u⊗u).
//!
//! The steady ξ = 0 velocity coefficient is held at zero (decay at infinity); the
//! (k = 0, ξ = 0) equation, which only carries the box mean of f, is excluded from the
//! residual.

use num_complex::Complex64;
use rayon::prelude::*;

use tpns_core::{divergence_max, reduce::det_max, transform, Direction, Params, Representation, TPField};
use tpns_multipliers::{Multipliers, Projection};

use crate::advect::advect;
use crate::error::SolverError;

/// Converged (or last) Picard iterate.
#[derive(Clone, Debug)]
pub struct Solution {
    /// Velocity, spectral, divergence-free.
    pub u: TPField,
    /// Pressure, spectral, scalar.
    pub p: TPField,
    /// Spectral residual after each iteration, relative to max|f̂|.
    pub residual_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl Solution {
    pub fn final_residual(&self) -> f64 {
        self.residual_history.last().copied().unwrap_or(0.0)
    }

    /// divergence_max(u) relative to max|û| (0 for u = 0).
    pub fn relative_divergence(&self) -> Result<f64, SolverError> {
        let m = self.u.max_abs();
        Ok(if m > 0.0 { divergence_max(&self.u)? / m } else { 0.0 })
    }
}

/// Velocity of the linear problem with right-hand side g (spectral, 3 components).
pub fn linear_solve(mult: &Multipliers, g: &TPField) -> Result<TPField, SolverError> {
    let steady = mult.apply_steady_oseen_inverse(g)?;
    let osc = mult.project(g, Projection::Oscillatory)?;
    let mut u = mult.apply_osc_inverse(&mult.helmholtz(&osc)?)?;
    u.data
        .par_iter_mut()
        .zip(steady.data.par_iter())
        .for_each(|(a, b)| *a += b);
    Ok(u)
}

/// Spectral forcing: transforms physical input, checks parameters.
pub fn spectral_forcing(f: &TPField, params: &Params) -> Result<TPField, SolverError> {
    if &f.params != params {
        return Err(tpns_core::CoreError::ParamsMismatch.into());
    }
    f.expect_components(3)?;
    Ok(match f.representation {
        Representation::Spectral => f.clone(),
        Representation::Physical => transform(f, Direction::ToSpectral)?,
    })
}

/// max over modes other than (k = 0, ξ = 0) of |D û + iξ p̂ + n̂ - f̂|, with
/// D = |ξ|² + i((2π/T)k - λξ₁) and n̂ the quadratic term.
pub fn spectral_residual(
    mult: &Multipliers,
    u: &TPField,
    p: &TPField,
    nonlinear: &TPField,
    f_hat: &TPField,
) -> Result<f64, SolverError> {
    let lu = mult.oseen_operator(u)?;
    let gp = mult.gradient(p)?;
    let lat = &mult.lattice;
    let ns = lat.n_space();
    let it0 = lat.temporal_index(0);
    let modes = lat.n_time() * ns;
    Ok(det_max(modes, |i| {
        if i == it0 * ns {
            return 0.0;
        }
        (0..3)
            .map(|c| {
                let j = 3 * i + c;
                (lu.data[j] + gp.data[j] + nonlinear.data[j] - f_hat.data[j]).norm()
            })
            .fold(0.0, f64::max)
    }))
}

fn is_finite(field: &TPField) -> bool {
    field.max_abs().is_finite()
}

fn difference(a: &TPField, b: &TPField) -> TPField {
    let mut out = a.clone();
    out.data
        .par_iter_mut()
        .zip(b.data.par_iter())
        .for_each(|(x, y)| *x -= y);
    out
}

/// Picard solve from u⁰ = 0.
pub fn picard_solve(f: &TPField, params: &Params) -> Result<Solution, SolverError> {
    picard_solve_observed(f, params, |_, _| {})
}

/// Picard solve, reporting every iterate (1-based index) to `observer`.
pub fn picard_solve_observed<F>(f: &TPField, params: &Params, mut observer: F) -> Result<Solution, SolverError>
where
    F: FnMut(usize, &TPField),
{
    params.validate()?;
    let mult = Multipliers::new(params)?;
    let f_hat = spectral_forcing(f, params)?;
    let f_max = f_hat.max_abs();
    if !f_max.is_finite() {
        return Err(SolverError::NonFinite { iteration: 0 });
    }
    let mut nonlinear = TPField::zeros(params, 3, Representation::Spectral)?;
    let mut history = Vec::new();
    let mut u = TPField::zeros(params, 3, Representation::Spectral)?;
    let mut p = TPField::zeros(params, 1, Representation::Spectral)?;
    let mut converged = false;
    let mut iterations = 0;
    for m in 1..=params.max_iter.max(1) {
        iterations = m;
        let g = difference(&f_hat, &nonlinear);
        u = linear_solve(&mult, &g)?;
        if !is_finite(&u) {
            return Err(SolverError::NonFinite { iteration: m });
        }
        observer(m, &u);
        let next = advect(&u)?;
        p = mult.recover_pressure(&difference(&f_hat, &next))?;
        let res = spectral_residual(&mult, &u, &p, &next, &f_hat)?;
        if !res.is_finite() {
            return Err(SolverError::NonFinite { iteration: m });
        }
        let rel = if f_max > 0.0 { res / f_max } else { res };
        history.push(rel);
        nonlinear = next;
        if rel <= params.tol_solver {
            converged = true;
            break;
        }
    }
    Ok(Solution {
        u,
        p,
        residual_history: history,
        iterations,
        converged,
    })
}

/// Explicit per-mode linear solution: for every mode with D ≠ 0 (and not the steady
/// mean), û = P_ξ f̂ / D with P_ξ the Helmholtz projector.
pub fn linear_oracle(f_hat: &TPField) -> Result<TPField, SolverError> {
    f_hat.expect(Representation::Spectral)?;
    let lat = f_hat.lattice();
    let params = &f_hat.params;
    let ns = lat.n_space();
    let mut out = TPField::zeros(params, 3, Representation::Spectral)?;
    out.data.par_chunks_mut(3).enumerate().for_each(|(i, o)| {
        let (it, p) = (i / ns, i % ns);
        let k = lat.temporal_mode(it);
        if k == 0 && p == 0 {
            return;
        }
        let xi = lat.xi(p);
        let xd = lat.deriv_xi(p);
        let d = Complex64::new(
            xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2],
            params.omega() * k as f64 - params.lambda * xd[0],
        );
        let v = &f_hat.data[3 * i..3 * i + 3];
        let q2 = xd[0] * xd[0] + xd[1] * xd[1] + xd[2] * xd[2];
        let dot = v[0] * xd[0] + v[1] * xd[1] + v[2] * xd[2];
        for c in 0..3 {
            let proj = if q2 > 0.0 { v[c] - dot * (xd[c] / q2) } else { v[c] };
            o[c] = proj / d;
        }
    });
    Ok(out)
}
