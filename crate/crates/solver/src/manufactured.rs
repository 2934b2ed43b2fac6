//! Manufactured oscillatory solutions: build F = ∂_tW - ΔW - λ∂₁W spectrally and
//! check that the oscillatory inverse returns W.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tpns_core::{build_lattice, divergence_max, Params, Representation, TPField};
use tpns_multipliers::{Multipliers, Projection};

use crate::error::SolverError;

/// Random real (Hermitian-symmetric), solenoidal, purely oscillatory field whose
/// coefficients are supported on 1 ≤ |k| ≤ k_band and |m_i| ≤ m_band.
pub fn manufactured_field(params: &Params, seed: u64, k_band: i64, m_band: i64) -> Result<TPField, SolverError> {
    let lat = build_lattice(params)?;
    let mult = Multipliers::new(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = TPField::zeros(params, 3, Representation::Spectral)?;
    let ns = lat.n_space();
    for it in 0..lat.n_time() {
        let k = lat.temporal_mode(it);
        if k == 0 || k.abs() > k_band {
            continue;
        }
        for p in 0..ns {
            let [a, b, c] = lat.unflat(p);
            let inside = [a, b, c]
                .iter()
                .all(|&i| !lat.is_nyquist(i) && lat.spatial_mode(i).abs() <= m_band);
            if !inside {
                continue;
            }
            let ct = lat.conjugate_temporal(it);
            let cp = lat.conjugate_spatial(p);
            let here = it * ns + p;
            let there = ct * ns + cp;
            if here > there {
                continue;
            }
            for comp in 0..3 {
                let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let i = w.index(it, p, comp);
                let j = w.index(ct, cp, comp);
                w.data[i] = v;
                w.data[j] = v.conj();
            }
        }
    }
    Ok(mult.helmholtz(&w)?)
}

/// Relative max error of apply_osc_inverse(∂_tW - ΔW - λ∂₁W) against W.
pub fn manufactured_roundtrip(w: &TPField, params: &Params) -> Result<f64, SolverError> {
    w.expect(Representation::Spectral)?;
    w.expect_components(3)?;
    if &w.params != params {
        return Err(tpns_core::CoreError::ParamsMismatch.into());
    }
    let mult = Multipliers::new(params)?;
    let scale = w.max_abs();
    let steady = mult.project(w, Projection::Steady)?.max_abs();
    if steady > 0.0 {
        return Err(SolverError::SteadyContent(steady));
    }
    let div = divergence_max(w)?;
    if div > params.tol_div * scale {
        return Err(SolverError::NotSolenoidal {
            divergence: div,
            allowed: params.tol_div * scale,
        });
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    let f = mult.oseen_operator(w)?;
    let back = mult.apply_osc_inverse(&f)?;
    let err = back
        .data
        .iter()
        .zip(&w.data)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(err / scale)
}
