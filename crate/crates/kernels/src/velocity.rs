//! Per-mode velocity kernel (slice tensor) with a choice of evaluation route, and the
//! time-periodic kernel Γ⊥ built from its modes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use tpns_core::Params;

use crate::convolution::{conv_slice, ConvRule, MIN_CONV_RADIUS};
use crate::error::KernelError;
use crate::spectral::{spectral_slice, SpectralLattice};
use crate::tensor::{KernelTensor, Mode};

/// How the per-mode velocity kernel is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Lattice inversion of the Fourier symbol.
    Spectral,
    /// Whole-space convolution quadrature.
    Convolution,
}

fn check(k: i64, x: [f64; 3]) -> Result<(), KernelError> {
    if k == 0 {
        return Err(KernelError::SteadyMode);
    }
    if x == [0.0; 3] {
        return Err(KernelError::AtOrigin);
    }
    Ok(())
}

type Mat = [[Complex64; 3]; 3];
type Grad = [[[Complex64; 3]; 3]; 3];

/// Slice tensor and optional gradient through the requested route.
pub fn mode_velocity_jet(
    k: i64,
    x: [f64; 3],
    params: &Params,
    route: Route,
    with_grad: bool,
) -> Result<(Mat, Option<Grad>), KernelError> {
    check(k, x)?;
    params.validate()?;
    match route {
        Route::Convolution => conv_slice(k, x, params, &ConvRule::default(), with_grad),
        Route::Spectral => Ok(spectral_slice(
            k,
            x,
            params,
            SpectralLattice::for_points(params),
            with_grad,
        )),
    }
}

/// The 3×3 entries δ_jl Σ_h Γ_{k,hh}(x) - Γ_{k,jl}(x) of the k-th mode of Γ⊥, where
/// Γ_{k,jl} has Fourier symbol ξ_jξ_l/(|ξ|²(|ξ|² + i((2π/T)k - λξ₁))) up to sign
/// (the slice symbol is (I - ξ⊗ξ/|ξ|²) divided by the same denominator).
pub fn mode_velocity_kernel(k: i64, x: [f64; 3], params: &Params, route: Route) -> Result<KernelTensor, KernelError> {
    let (m, _) = mode_velocity_jet(k, x, params, route, false)?;
    Ok(KernelTensor::new(m, x, Mode::Oscillatory(k), None))
}

/// ∂_h of the slice tensor for h = 1, 2, 3.
pub fn mode_velocity_kernel_grad(
    k: i64,
    x: [f64; 3],
    params: &Params,
    route: Route,
) -> Result<Vec<KernelTensor>, KernelError> {
    let (_, g) = mode_velocity_jet(k, x, params, route, true)?;
    let g = g.expect("gradient requested");
    Ok((0..3)
        .map(|h| KernelTensor::new(g[h], x, Mode::Oscillatory(k), Some(h)))
        .collect())
}

/// Route used by the Γ⊥ evaluators: whole-space convolution away from the origin,
/// spectral inversion very close to it.
pub fn default_route(x: [f64; 3]) -> Route {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if r >= MIN_CONV_RADIUS {
        Route::Convolution
    } else {
        Route::Spectral
    }
}

fn check_kmax(params: &Params, k_max: usize) -> Result<(), KernelError> {
    if k_max < 1 || k_max > params.n_temporal {
        return Err(KernelError::ModeRange {
            k_max,
            n_temporal: params.n_temporal,
        });
    }
    Ok(())
}

/// Γ⊥ at time t: Σ_{0<|k|<=k_max} e^{i(2π/T)kt}·slice_k(x), evaluating both signs of k.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSlice {
    pub value: [[f64; 3]; 3],
    /// Largest imaginary part of the mode sum relative to its largest real entry.
    pub imag_residue: f64,
}

pub fn tp_kernel_timeslice(t: f64, x: [f64; 3], params: &Params, k_max: usize) -> Result<TimeSlice, KernelError> {
    check(1, x)?;
    check_kmax(params, k_max)?;
    let route = default_route(x);
    let mut slices = Vec::new();
    for k in 1..=k_max as i64 {
        for kk in [k, -k] {
            let (m, _) = mode_velocity_jet(kk, x, params, route, false)?;
            slices.push((kk, m));
        }
    }
    Ok(synthesize(t, params, &slices))
}

/// Sums modal tensors at time t and splits the result into real value and imaginary
/// residue.
pub fn synthesize(t: f64, params: &Params, slices: &[(i64, Mat)]) -> TimeSlice {
    let mut acc = [[Complex64::default(); 3]; 3];
    for (k, m) in slices {
        let ph = Complex64::from_polar(1.0, params.omega() * *k as f64 * t);
        for j in 0..3 {
            for l in 0..3 {
                acc[j][l] += ph * m[j][l];
            }
        }
    }
    let mut value = [[0.0; 3]; 3];
    let mut re_max: f64 = 0.0;
    let mut im_max: f64 = 0.0;
    for j in 0..3 {
        for l in 0..3 {
            value[j][l] = acc[j][l].re;
            re_max = re_max.max(acc[j][l].re.abs());
            im_max = im_max.max(acc[j][l].im.abs());
        }
    }
    TimeSlice {
        value,
        imag_residue: if re_max > 0.0 { im_max / re_max } else { im_max },
    }
}

/// Positive-k slice tensors (and gradients when `deriv = 1`) for k = 1..=k_max.
pub fn positive_modes(
    x: [f64; 3],
    params: &Params,
    k_max: usize,
    deriv: u8,
) -> Result<Vec<(Mat, Option<Grad>)>, KernelError> {
    check(1, x)?;
    check_kmax(params, k_max)?;
    if deriv > 1 {
        return Err(KernelError::DerivOrder(deriv));
    }
    let route = default_route(x);
    (1..=k_max as i64)
        .map(|k| mode_velocity_jet(k, x, params, route, deriv == 1))
        .collect()
}

/// ((1/T)∫₀^T |Γ⊥(t,x)|² dt)^{1/2} (Frobenius norm over entries, and over the
/// derivative direction when `deriv = 1`) via Parseval: the ℓ² sum over modes. The
/// -k entries are the complex conjugates of the +k entries, so each positive mode
/// counts twice.
pub fn tp_kernel_l2t(x: [f64; 3], params: &Params, k_max: usize, deriv: u8) -> Result<f64, KernelError> {
    let modes = positive_modes(x, params, k_max, deriv)?;
    Ok(l2t_from_modes(&modes, deriv))
}

/// L²-in-time magnitude from precomputed positive modes.
pub fn l2t_from_modes(modes: &[(Mat, Option<Grad>)], deriv: u8) -> f64 {
    let mut s = 0.0;
    for (m, g) in modes {
        if deriv == 0 {
            s += m.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>();
        } else {
            let g = g.as_ref().expect("gradient modes");
            s += g.iter().flatten().flatten().map(|v| v.norm_sqr()).sum::<f64>();
        }
    }
    (2.0 * s).sqrt()
}
