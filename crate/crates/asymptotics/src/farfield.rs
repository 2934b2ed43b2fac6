//! Mean force, asymptotic profile, linear far field outside the forcing support and
//! the remainder of the expansion u = Γ^λ·c_f + R.

use num_complex::Complex64;
use rayon::prelude::*;

use tpns_core::{build_lattice, transform, Direction, Params, Representation, TPField};
use tpns_kernels::oseen_gamma_values;
use tpns_solver::ForcingSpec;

use crate::error::AsymptoticsError;
use crate::ray::{bump_mode_response, RayMode, RayRule};
use crate::source::{BallRule, BumpQuadrature};

/// (1/T)∫₀^T∫ f dx dt of a sampled forcing: the (k = 0, ξ = 0) spectral coefficient
/// times the box measure (2L)³.
pub fn mean_force(f: &TPField) -> Result<[f64; 3], AsymptoticsError> {
    f.expect_components(3)?;
    let spec = match f.representation {
        Representation::Spectral => f.clone(),
        Representation::Physical => transform(f, Direction::ToSpectral)?,
    };
    let lat = build_lattice(&f.params)?;
    let it = lat.temporal_index(0);
    let p = lat.flat(0, 0, 0);
    let vol = lat.box_measure();
    Ok([0, 1, 2].map(|c| spec.data[spec.index(it, p, c)].re * vol))
}

/// The same coefficient computed from the continuous forcing: amplitude times the
/// time mean of the profile times ∫ψ by ball quadrature.
pub fn mean_force_spec(spec: &ForcingSpec, rule: BallRule) -> [f64; 3] {
    let q = BumpQuadrature::new(spec.center, spec.radius, rule);
    let s = spec.time_profile.mean() * q.integral;
    spec.amplitude.map(|a| a * s)
}

/// Γ^λ(x)·c_f.
pub fn profile(x: [f64; 3], c_f: [f64; 3], lambda: f64) -> Result<[f64; 3], AsymptoticsError> {
    if x == [0.0; 3] {
        return Err(AsymptoticsError::AtOrigin);
    }
    let g = oseen_gamma_values(x, lambda)?;
    Ok([0, 1, 2].map(|j| (0..3).map(|l| g[j][l] * c_f[l]).sum()))
}

/// Linear far field of one point: the steady part and the positive-k temporal
/// coefficients of the oscillatory part (the -k coefficients are their conjugates).
#[derive(Clone, Debug, PartialEq)]
pub struct FarFieldPoint {
    pub x: [f64; 3],
    pub steady: [f64; 3],
    pub modes: Vec<(i64, [Complex64; 3])>,
    pub omega: f64,
}

impl FarFieldPoint {
    /// Oscillatory part at time t: 2 Re Σ_{k>0} e^{iω_k t} W_k.
    pub fn oscillatory(&self, t: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (k, w) in &self.modes {
            let e = Complex64::from_polar(1.0, self.omega * *k as f64 * t);
            for c in 0..3 {
                out[c] += 2.0 * (e * w[c]).re;
            }
        }
        out
    }

    /// Full linear solution at time t.
    pub fn value(&self, t: f64) -> [f64; 3] {
        let o = self.oscillatory(t);
        [0, 1, 2].map(|c| self.steady[c] + o[c])
    }

    /// ((1/T)∫₀^T |oscillatory part|² dt)^{1/2}.
    pub fn oscillatory_l2t(&self) -> f64 {
        let s: f64 = self
            .modes
            .iter()
            .flat_map(|(_, w)| w.iter())
            .map(|v| v.norm_sqr())
            .sum();
        (2.0 * s).sqrt()
    }
}

/// Evaluator of the linear far field of one forcing: quadrature of the steady Oseen
/// kernel over the support ball, ray integrals for each active harmonic.
#[derive(Clone, Debug)]
pub struct FarField {
    pub spec: ForcingSpec,
    pub params: Params,
    pub source: BumpQuadrature,
    pub rays: RayRule,
    modes: Vec<(RayMode, i64, f64)>,
}

impl FarField {
    pub fn new(spec: &ForcingSpec, params: &Params, ball: BallRule, rays: RayRule) -> Result<FarField, AsymptoticsError> {
        params.validate()?;
        spec.validate(params)?;
        let modes = (1..=spec.time_profile.max_harmonic() as i64)
            .map(|k| (k, spec.time_profile.coefficient(k)))
            .filter(|(_, c)| *c != 0.0)
            .map(|(k, c)| (RayMode::new(k, params), k, c))
            .collect();
        Ok(FarField {
            spec: spec.clone(),
            params: params.clone(),
            source: BumpQuadrature::new(spec.center, spec.radius, ball),
            rays,
            modes,
        })
    }

    /// Default quadrature orders.
    pub fn with_defaults(spec: &ForcingSpec, params: &Params) -> Result<FarField, AsymptoticsError> {
        FarField::new(spec, params, BallRule::default(), RayRule::default())
    }

    /// Mean-force coefficient consistent with this evaluator's quadrature.
    pub fn c_f(&self) -> [f64; 3] {
        let s = self.spec.time_profile.mean() * self.source.integral;
        self.spec.amplitude.map(|a| a * s)
    }

    pub fn has_oscillation(&self) -> bool {
        !self.modes.is_empty()
    }

    pub fn evaluate(&self, x: [f64; 3]) -> Result<FarFieldPoint, AsymptoticsError> {
        self.source.check_outside(x)?;
        let amp = self.spec.amplitude;
        let c0 = self.spec.time_profile.mean();
        let steady = if c0 == 0.0 {
            [0.0; 3]
        } else {
            let g = self.source.oseen_apply(x, self.params.lambda)?;
            [0, 1, 2].map(|j| c0 * (0..3).map(|l| g[j][l] * amp[l]).sum::<f64>())
        };
        let modes = self
            .modes
            .iter()
            .map(|(mode, k, c)| {
                let w = bump_mode_response(mode, &self.rays, &self.source, x);
                let v = [0, 1, 2].map(|j| (0..3).map(|l| w[j][l] * amp[l]).sum::<Complex64>() * *c);
                (*k, v)
            })
            .collect();
        Ok(FarFieldPoint {
            x,
            steady,
            modes,
            omega: self.params.omega(),
        })
    }

    /// R(t, x) = u(t, x) - Γ^λ(x)·c_f.
    pub fn remainder(&self, point: &FarFieldPoint, t: f64) -> Result<[f64; 3], AsymptoticsError> {
        let u = point.value(t);
        let p = profile(point.x, self.c_f(), self.params.lambda)?;
        Ok([0, 1, 2].map(|c| u[c] - p[c]))
    }
}

/// Linear solution at (t, x) outside the forcing support (|x| ≥ 2·radius + |center|).
pub fn farfield_linear(t: f64, x: [f64; 3], spec: &ForcingSpec, params: &Params) -> Result<[f64; 3], AsymptoticsError> {
    Ok(FarField::with_defaults(spec, params)?.evaluate(x)?.value(t))
}

/// farfield_linear(t, x) - profile(x, c_f).
pub fn remainder(t: f64, x: [f64; 3], spec: &ForcingSpec, params: &Params) -> Result<[f64; 3], AsymptoticsError> {
    let ff = FarField::with_defaults(spec, params)?;
    let p = ff.evaluate(x)?;
    ff.remainder(&p, t)
}

/// Evaluates many points in parallel; results keep the input order.
pub fn evaluate_points(ff: &FarField, points: &[[f64; 3]]) -> Result<Vec<FarFieldPoint>, AsymptoticsError> {
    points.par_iter().map(|x| ff.evaluate(*x)).collect()
}

