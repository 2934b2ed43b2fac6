//! Spectral evaluation of the per-mode velocity kernel by lattice inversion of its
//! Fourier symbol (I - ξ⊗ξ/|ξ|²)/(|ξ|² + i((2π/T)k - λξ₁)).
//!
//! A plain truncated Fourier sum of a 1/|x|-singular kernel converges only slowly and
//! not uniformly, so the closed-form zero-drift kernel (see [`crate::brinkman`]) is
//! subtracted in physical space, and only the remainder symbol
//! P·(1/D - 1/D₀) = P·iλξ₁/(D·D₀) is summed on the lattice, with a smooth radial taper
//! and the unpaired Nyquist modes dropped. The remainder also decays faster in x, so
//! periodic images of the box contaminate it less.
//!
//! Point values go one step further: with ε = iλξ₁ and D = D₀ - ε,
//! 1/D - 1/D₀ = ε/D₀² + ε²/(D₀²D). The first term inverts in closed form,
//! F⁻¹[P·iλξ₁/D₀²] = -λ ∂_{κ²} ∂₁G₀ (G₀ the zero-drift kernel, κ² = i(2π/T)k), so
//! only the faster-decaying symbol P·ε²/(D₀²D) is summed.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use tpns_core::fft::{corner_phase, fft_space, Shape};
use tpns_core::Params;

use crate::blend::chi;
use crate::brinkman::brinkman_jet;
use crate::special::sqrt_nnr;

/// Unique entries (j, l) of a symmetric 3×3 tensor.
pub const SYM: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Internal lattice used by the spectral route.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralLattice {
    pub n: usize,
    pub half_length: f64,
}

impl SpectralLattice {
    /// Lattice for point evaluations: the run box at a quarter of the run spacing
    /// (n → 4n). The remainder left after the closed-form subtraction decays
    /// exponentially, so the box needs no enlargement and all modes go to resolution.
    pub fn for_points(params: &Params) -> SpectralLattice {
        SpectralLattice {
            n: 4 * params.n_spatial,
            half_length: params.box_half_length,
        }
    }

    /// Lattice for grid evaluations: box doubled at the run spacing (n → 2n, L → 2L),
    /// so run-lattice points are a subset of the internal grid.
    pub fn for_grid(params: &Params) -> SpectralLattice {
        SpectralLattice {
            n: 2 * params.n_spatial,
            half_length: 2.0 * params.box_half_length,
        }
    }

    fn freqs(&self) -> Vec<f64> {
        let dxi = PI / self.half_length;
        (0..self.n)
            .map(|i| {
                let m = if i < self.n / 2 { i as i64 } else { i as i64 - self.n as i64 };
                dxi * m as f64
            })
            .collect()
    }

    /// Radial cutoff: the per-axis Nyquist frequency.
    fn cutoff(&self) -> f64 {
        PI * self.n as f64 / (2.0 * self.half_length)
    }
}

/// The velocity-kernel symbol (I - ξ⊗ξ/|ξ|²)/(|ξ|² + i((2π/T)k - λξ₁)) at one
/// frequency (ξ = 0 uses the identity for the projector).
pub fn velocity_symbol(k: i64, xi: [f64; 3], params: &Params) -> [[Complex64; 3]; 3] {
    let k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    let d = Complex64::new(k2, params.omega() * k as f64 - params.lambda * xi[0]);
    let mut out = [[Complex64::default(); 3]; 3];
    for j in 0..3 {
        for l in 0..3 {
            let dl = if j == l { 1.0 } else { 0.0 };
            let p = if k2 > 0.0 { dl - xi[j] * xi[l] / k2 } else { dl };
            out[j][l] = p / d;
        }
    }
    out
}

/// Scalar factor of the remainder symbol times taper at one frequency; `None` if the
/// mode is dropped. `second_order` selects ε²/(D₀²D) instead of ε/(D·D₀).
#[inline]
fn remainder(xi: [f64; 3], omk: f64, lambda: f64, taper_cut: f64, second_order: bool) -> Option<(f64, Complex64)> {
    let k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if k2 == 0.0 {
        return None;
    }
    let t = chi(k2.sqrt() / taper_cut);
    if t == 0.0 {
        return None;
    }
    let d = Complex64::new(k2, omk - lambda * xi[0]);
    let d0 = Complex64::new(k2, omk);
    let eps = Complex64::new(0.0, lambda * xi[0]);
    let rem = if second_order {
        eps * eps / (d0 * d0 * d)
    } else {
        eps / (d * d0)
    };
    Some((k2, rem * t))
}

/// First-order drift term -λ ∂_{κ²} ∂₁G₀(x; κ), with the κ-derivative taken by a
/// central difference of the closed form (analytic in κ).
fn drift_correction(kap: Complex64, x: [f64; 3], lambda: f64) -> [[Complex64; 3]; 3] {
    let dk = kap * 1e-3;
    let (_, up) = brinkman_jet(kap + dk, x, true);
    let (_, dn) = brinkman_jet(kap - dk, x, true);
    let mut out = [[Complex64::default(); 3]; 3];
    for j in 0..3 {
        for l in 0..3 {
            let dkap = (up[0][j][l] - dn[0][j][l]) / (2.0 * dk);
            out[j][l] = -lambda * dkap / (2.0 * kap);
        }
    }
    out
}

fn kappa(k: i64, params: &Params) -> Complex64 {
    sqrt_nnr(Complex64::new(0.0, params.omega() * k as f64))
}

/// Slice tensor δ_jl Γ_{k,hh} - Γ_{k,jl} at x ≠ 0 and, when requested, its gradient
/// (indexed [h][j][l]).
pub fn spectral_slice(
    k: i64,
    x: [f64; 3],
    params: &Params,
    lat: SpectralLattice,
    with_grad: bool,
) -> ([[Complex64; 3]; 3], Option<[[[Complex64; 3]; 3]; 3]>) {
    let n = lat.n;
    let freqs = lat.freqs();
    let cut = lat.cutoff();
    let omk = params.omega() * k as f64;
    let lambda = params.lambda;
    let nyq = n / 2;
    let phase: Vec<[Complex64; 3]> = freqs
        .iter()
        .map(|&f| {
            [
                Complex64::from_polar(1.0, f * x[0]),
                Complex64::from_polar(1.0, f * x[1]),
                Complex64::from_polar(1.0, f * x[2]),
            ]
        })
        .collect();
    let nacc = if with_grad { 24 } else { 6 };
    let partials: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|ix| {
            let mut acc = vec![Complex64::default(); nacc];
            if ix == nyq {
                return acc;
            }
            for iy in 0..n {
                if iy == nyq {
                    continue;
                }
                let pxy = phase[ix][0] * phase[iy][1];
                for iz in 0..n {
                    if iz == nyq {
                        continue;
                    }
                    let xi = [freqs[ix], freqs[iy], freqs[iz]];
                    let Some((k2, rem)) = remainder(xi, omk, lambda, cut, !with_grad) else {
                        continue;
                    };
                    let w = rem * (pxy * phase[iz][2]);
                    for (e, &(j, l)) in SYM.iter().enumerate() {
                        let dl = if j == l { 1.0 } else { 0.0 };
                        let v = w * (dl - xi[j] * xi[l] / k2);
                        acc[e] += v;
                        if with_grad {
                            for h in 0..3 {
                                acc[6 + 6 * h + e] += v * Complex64::new(0.0, xi[h]);
                            }
                        }
                    }
                }
            }
            acc
        })
        .collect();
    let mut sum = vec![Complex64::default(); nacc];
    for p in &partials {
        for (s, v) in sum.iter_mut().zip(p) {
            *s += v;
        }
    }
    let vol = (2.0 * lat.half_length).powi(3);
    let kap = kappa(k, params);
    let (g0, dg0) = brinkman_jet(kap, x, with_grad);
    let mut out = g0;
    if !with_grad {
        let c = drift_correction(kap, x, params.lambda);
        for j in 0..3 {
            for l in 0..3 {
                out[j][l] += c[j][l];
            }
        }
    }
    for (e, &(j, l)) in SYM.iter().enumerate() {
        out[j][l] += sum[e] / vol;
        out[l][j] = out[j][l];
    }
    let grad = with_grad.then(|| {
        let mut dg = dg0;
        for h in 0..3 {
            for (e, &(j, l)) in SYM.iter().enumerate() {
                dg[h][j][l] += sum[6 + 6 * h + e] / vol;
                dg[h][l][j] = dg[h][j][l];
            }
        }
        dg
    });
    (out, grad)
}

/// Slice tensor (or its ∂_h derivative when `deriv_dir = Some(h)`) at every point of the
/// run lattice, evaluated with one FFT per unique entry on [`SpectralLattice::for_grid`].
/// Values are returned in run-lattice flat order as 6 unique entries (see [`SYM`]);
/// the origin point, where the kernel is singular, is set to zero.
pub fn spectral_slice_grid(k: i64, params: &Params, deriv_dir: Option<usize>) -> Vec<[Complex64; 6]> {
    let lat = SpectralLattice::for_grid(params);
    let n = lat.n;
    let nyq = n / 2;
    let freqs = lat.freqs();
    let cut = lat.cutoff();
    let omk = params.omega() * k as f64;
    let lambda = params.lambda;
    let vol = (2.0 * lat.half_length).powi(3);
    let shape = Shape { nt: 1, n, comps: 1 };
    let nr = params.n_spatial;
    let offset = nr / 2;
    let h = 2.0 * params.box_half_length / nr as f64;
    let mut out = vec![[Complex64::default(); 6]; nr * nr * nr];
    for (e, &(j, l)) in SYM.iter().enumerate() {
        let mut buf = vec![Complex64::default(); n * n * n];
        buf.par_chunks_mut(n * n).enumerate().for_each(|(ix, plane)| {
            if ix == nyq {
                return;
            }
            for iy in 0..n {
                if iy == nyq {
                    continue;
                }
                for iz in 0..n {
                    if iz == nyq {
                        continue;
                    }
                    let xi = [freqs[ix], freqs[iy], freqs[iz]];
                    let Some((k2, rem)) = remainder(xi, omk, lambda, cut, false) else {
                        continue;
                    };
                    let dl = if j == l { 1.0 } else { 0.0 };
                    let mut v = rem * (dl - xi[j] * xi[l] / k2) / vol;
                    if let Some(hd) = deriv_dir {
                        v *= Complex64::new(0.0, xi[hd]);
                    }
                    plane[iy * n + iz] = v;
                }
            }
        });
        corner_phase(&mut buf, shape);
        fft_space(&mut buf, shape, true);
        out.par_iter_mut().enumerate().for_each(|(p, o)| {
            let a = p / (nr * nr);
            let b = (p / nr) % nr;
            let c = p % nr;
            let q = ((a + offset) * n + b + offset) * n + c + offset;
            o[e] = buf[q];
        });
    }
    let kap = kappa(k, params);
    let l0 = params.box_half_length;
    out.par_iter_mut().enumerate().for_each(|(p, o)| {
        let a = p / (nr * nr);
        let b = (p / nr) % nr;
        let c = p % nr;
        let x = [-l0 + h * a as f64, -l0 + h * b as f64, -l0 + h * c as f64];
        if a == offset && b == offset && c == offset {
            *o = [Complex64::default(); 6];
            return;
        }
        let (g0, dg0) = brinkman_jet(kap, x, deriv_dir.is_some());
        for (e, &(j, l)) in SYM.iter().enumerate() {
            o[e] += match deriv_dir {
                None => g0[j][l],
                Some(hd) => dg0[hd][j][l],
            };
        }
    });
    out
}
