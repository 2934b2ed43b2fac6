//! Compactly supported smooth forcing: amplitude ⊗ time profile ⊗ bump.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use tpns_core::{build_lattice, transform, Direction, Params, TPField};

use crate::error::SolverError;

/// Time dependence of the forcing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TimeProfile {
    Constant,
    /// cos(k₀ (2π/T) t).
    Cosine { k0: u32 },
    /// Σ_j weights[j]·cos(j (2π/T) t); weights[0] is the time mean.
    Mixed { weights: Vec<f64> },
}

impl TimeProfile {
    pub fn value(&self, t: f64, omega: f64) -> f64 {
        match self {
            TimeProfile::Constant => 1.0,
            TimeProfile::Cosine { k0 } => (*k0 as f64 * omega * t).cos(),
            TimeProfile::Mixed { weights } => weights
                .iter()
                .enumerate()
                .map(|(j, w)| w * (j as f64 * omega * t).cos())
                .sum(),
        }
    }

    /// Highest temporal harmonic present.
    pub fn max_harmonic(&self) -> usize {
        match self {
            TimeProfile::Constant => 0,
            TimeProfile::Cosine { k0 } => *k0 as usize,
            TimeProfile::Mixed { weights } => weights.len().saturating_sub(1),
        }
    }

    /// Coefficient of the steady (time-mean) part.
    pub fn mean(&self) -> f64 {
        self.coefficient(0)
    }

    /// Temporal Fourier coefficient c_k with profile(t) = Σ_k c_k e^{ik(2π/T)t}.
    pub fn coefficient(&self, k: i64) -> f64 {
        let j = k.unsigned_abs() as usize;
        let half = if j == 0 { 1.0 } else { 0.5 };
        match self {
            TimeProfile::Constant => {
                if j == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            TimeProfile::Cosine { k0 } => {
                if j == *k0 as usize {
                    if j == 0 {
                        1.0
                    } else {
                        0.5
                    }
                } else {
                    0.0
                }
            }
            TimeProfile::Mixed { weights } => weights.get(j).copied().unwrap_or(0.0) * half,
        }
    }
}

/// Forcing f(t, x) = amplitude · profile(t) · ψ(x), with the bump
/// ψ(x) = exp(-1/(1 - (|x - center|/radius)²)) inside the ball and 0 outside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcingSpec {
    pub center: [f64; 3],
    pub radius: f64,
    pub amplitude: [f64; 3],
    pub time_profile: TimeProfile,
}

impl Default for ForcingSpec {
    fn default() -> Self {
        ForcingSpec {
            center: [0.0; 3],
            radius: 2.0,
            amplitude: [0.1, 0.0, 0.0],
            time_profile: TimeProfile::Mixed {
                weights: vec![1.0, 1.0],
            },
        }
    }
}

/// The bump ψ(x).
pub fn bump(x: [f64; 3], center: [f64; 3], radius: f64) -> f64 {
    let d2 = (0..3).map(|i| (x[i] - center[i]).powi(2)).sum::<f64>() / (radius * radius);
    if d2 >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - d2)).exp()
    }
}

impl ForcingSpec {
    pub fn validate(&self, params: &Params) -> Result<(), SolverError> {
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(SolverError::InvalidForcing(format!(
                "radius must be positive, got {}",
                self.radius
            )));
        }
        if self.center.iter().chain(&self.amplitude).any(|v| !v.is_finite()) {
            return Err(SolverError::InvalidForcing("center and amplitude must be finite".into()));
        }
        let extent = self.center.iter().map(|c| c * c).sum::<f64>().sqrt() + self.radius;
        let limit = params.box_half_length / 2.0;
        if extent > limit {
            return Err(SolverError::SupportTooLarge { extent, limit });
        }
        let h = self.time_profile.max_harmonic();
        if h > params.n_temporal {
            return Err(SolverError::InvalidForcing(format!(
                "time profile harmonic {h} exceeds n_temporal = {}",
                params.n_temporal
            )));
        }
        Ok(())
    }

    /// Spatial-and-temporal value at one point.
    pub fn value(&self, t: f64, x: [f64; 3], omega: f64) -> [f64; 3] {
        let s = self.time_profile.value(t, omega) * bump(x, self.center, self.radius);
        self.amplitude.map(|a| a * s)
    }
}

/// Physical-representation samples of the forcing on the lattice of `params`.
pub fn sample_forcing(spec: &ForcingSpec, params: &Params) -> Result<TPField, SolverError> {
    spec.validate(params)?;
    let omega = params.omega();
    Ok(TPField::from_fn(params, 3, |t, x, out| {
        let v = spec.value(t, x, omega);
        for c in 0..3 {
            out[c] = Complex64::new(v[c], 0.0);
        }
    })?)
}

/// Largest spectral coefficient on the spatial Nyquist faces relative to the largest
/// coefficient overall: a resolution diagnostic for the sampled bump.
pub fn nyquist_tail(field: &TPField) -> Result<f64, SolverError> {
    let spec = match field.representation {
        tpns_core::Representation::Spectral => field.clone(),
        tpns_core::Representation::Physical => transform(field, Direction::ToSpectral)?,
    };
    let lat = build_lattice(&spec.params)?;
    let ns = lat.n_space();
    let c = spec.components;
    let mut tail: f64 = 0.0;
    for (i, v) in spec.data.iter().enumerate() {
        let p = (i / c) % ns;
        let [a, b, d] = lat.unflat(p);
        if lat.is_nyquist(a) || lat.is_nyquist(b) || lat.is_nyquist(d) {
            tail = tail.max(v.norm());
        }
    }
    let peak = spec.max_abs();
    Ok(if peak > 0.0 { tail / peak } else { 0.0 })
}
