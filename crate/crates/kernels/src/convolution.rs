//! Convolution evaluation of the per-mode velocity kernel
//! Γ_{k,jl} = ∂_j∂_l(Φ_L ∗ Γ_{R,k}) with Φ_L = 1/(4π|x|) the Laplace kernel.
//!
//! Its Fourier symbol is -ξ_jξ_l/(|ξ|²D), so after one integration by parts
//!
//! Γ_{k,jl}(x) = -∫ ∂_jΦ_L(x - y) ∂_lΓ_{R,k}(y) dy,
//!
//! in which both factors are only |·|^{-2}-singular. The integral is split with a
//! smooth partition of unity w(y) = χ(|y - x|/ρ), ρ = |x|/2:
//!
//! * the outer part (1 - w) is integrated in spherical coordinates centred at the
//!   origin (the r² Jacobian cancels the singularity of ∂Γ_{R,k}), with the radial
//!   range truncated per direction where the exponential weight of Γ_{R,k} falls below
//!   a tolerance;
//! * the inner part w is integrated in spherical coordinates centred at x (the r²
//!   Jacobian cancels the singularity of ∂Φ_L).
//!
//! Gradients keep the partition centred at the evaluation point and move the
//! derivative onto ∂Φ_L (outer part) or onto w·∂Γ_{R,k} (inner part).

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use tpns_core::Params;

use crate::blend::{chi, chi_deriv};
use crate::error::KernelError;
use crate::mode::{scalar_jet, ModeRates};
use crate::quad::{gauss_interval, sphere_rule};

/// Smallest |x| accepted by the convolution route; below it the inner ball becomes
/// too small for the fixed quadrature orders.
pub const MIN_CONV_RADIUS: f64 = 0.25;

/// Quadrature orders of the convolution route.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvRule {
    pub n_theta: usize,
    pub n_phi: usize,
    /// Gauss–Legendre nodes per radial panel.
    pub n_radial: usize,
    /// Maximal radial panel length.
    pub panel: f64,
    /// Relative size of the exponential weight at the radial truncation.
    pub tol: f64,
}

impl Default for ConvRule {
    fn default() -> Self {
        ConvRule {
            n_theta: 48,
            n_phi: 48,
            n_radial: 16,
            panel: 1.0,
            tol: 1e-10,
        }
    }
}

impl ConvRule {
    /// Rule with doubled angular resolution and halved panels.
    pub fn refined(&self) -> ConvRule {
        ConvRule {
            n_theta: 2 * self.n_theta,
            n_phi: 2 * self.n_phi,
            n_radial: self.n_radial,
            panel: self.panel / 2.0,
            tol: self.tol * 1e-2,
        }
    }
}

type Mat = [[Complex64; 3]; 3];
type Grad = [[[Complex64; 3]; 3]; 3];

fn breakpoints(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step).ceil().max(1.0) as usize;
    (0..=count).map(|i| lo + (hi - lo) * i as f64 / count as f64).collect()
}

fn radial_nodes(edges: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut r = Vec::new();
    let mut w = Vec::new();
    for pair in edges.windows(2) {
        let (a, b) = gauss_interval(n, pair[0], pair[1]);
        r.extend(a);
        w.extend(b);
    }
    (r, w)
}

/// Γ_{k,jl}(x) and optionally ∂_hΓ_{k,jl}(x) ([h][j][l]).
pub fn conv_gamma(
    k: i64,
    x: [f64; 3],
    params: &Params,
    rule: &ConvRule,
    with_grad: bool,
) -> Result<(Mat, Option<Grad>), KernelError> {
    if k == 0 {
        return Err(KernelError::SteadyMode);
    }
    let xn = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    if xn < MIN_CONV_RADIUS {
        return Err(KernelError::InsideQuadratureBall {
            min: MIN_CONV_RADIUS,
            got: xn,
        });
    }
    let rates = ModeRates::new(k, params.lambda, params.period);
    let a = rates.a;
    let b = rates.b;
    let rho = xn / 2.0;
    let (dirs, wdir) = sphere_rule(rule.n_theta, rule.n_phi, x);
    let log_tol = (1.0 / rule.tol).ln();
    let near_step = rule.panel.min(rho / 2.0);
    let nacc = if with_grad { 36 } else { 9 };

    let inv4pi = 1.0 / (4.0 * PI);

    // Outer part, origin-centred.
    let outer: Vec<Vec<Complex64>> = dirs
        .par_iter()
        .zip(wdir.par_iter())
        .map(|(n, &wd)| {
            let mut acc = vec![Complex64::default(); nacc];
            let rate = a.re + b * n[0];
            let r_max = log_tol / rate;
            let near = (3.0 * xn).min(r_max);
            let mut edges = breakpoints(0.0, near, near_step);
            if r_max > near {
                let far = breakpoints(near, r_max, rule.panel);
                edges.extend_from_slice(&far[1..]);
            }
            let (rs, ws) = radial_nodes(&edges, rule.n_radial);
            for (&r, &wr) in rs.iter().zip(&ws) {
                let y = [r * n[0], r * n[1], r * n[2]];
                let z = [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
                let dz = (z[0] * z[0] + z[1] * z[1] + z[2] * z[2]).sqrt();
                let t = dz / rho;
                let w_out = if t >= 1.0 { 1.0 } else { 1.0 - chi(t) };
                if w_out == 0.0 {
                    continue;
                }
                // r²·∂_lΓ_R(y) = e^{-ar - b y₁}/(4π)·(-(a r + 1) n_l - b r δ_l1)
                let e = (-a * r - b * y[0]).exp() * inv4pi;
                let ar1 = a * r + 1.0;
                let mut dg = [-ar1 * n[0] - b * r, -ar1 * n[1], -ar1 * n[2]];
                for v in dg.iter_mut() {
                    *v *= e;
                }
                let wt = wd * wr * w_out;
                let dz3 = dz * dz * dz;
                let dphi = [-z[0] / dz3 * inv4pi, -z[1] / dz3 * inv4pi, -z[2] / dz3 * inv4pi];
                for j in 0..3 {
                    for l in 0..3 {
                        acc[3 * j + l] += dg[l] * (wt * dphi[j]);
                    }
                }
                if with_grad {
                    let dz2 = dz * dz;
                    for h in 0..3 {
                        for j in 0..3 {
                            let dd = if h == j { 1.0 } else { 0.0 };
                            let ddphi = (3.0 * z[h] * z[j] / dz2 - dd) / dz3 * inv4pi;
                            for l in 0..3 {
                                acc[9 + 9 * h + 3 * j + l] += dg[l] * (wt * ddphi);
                            }
                        }
                    }
                }
            }
            acc
        })
        .collect();

    // Inner part, centred at x: y = x + s m, where ∂_jΦ_L(x - y)·s² = m_j/(4π).
    let inner_edges = {
        let mut e = breakpoints(0.0, rho / 2.0, rule.panel);
        let tail = breakpoints(rho / 2.0, rho, rule.panel);
        e.extend_from_slice(&tail[1..]);
        e
    };
    let (ss, wss) = radial_nodes(&inner_edges, rule.n_radial);
    let inner: Vec<Vec<Complex64>> = dirs
        .par_iter()
        .zip(wdir.par_iter())
        .map(|(m, &wd)| {
            let mut acc = vec![Complex64::default(); nacc];
            for (&s, &wsn) in ss.iter().zip(&wss) {
                let t = s / rho;
                let w_in = chi(t);
                let dw = chi_deriv(t) / rho;
                if w_in == 0.0 && dw == 0.0 {
                    continue;
                }
                let y = [x[0] + s * m[0], x[1] + s * m[1], x[2] + s * m[2]];
                let jet = scalar_jet(&rates, y);
                let wt = wd * wsn * inv4pi;
                for j in 0..3 {
                    for l in 0..3 {
                        acc[3 * j + l] += jet.grad[l] * (wt * m[j] * w_in);
                    }
                }
                if with_grad {
                    for h in 0..3 {
                        for j in 0..3 {
                            for l in 0..3 {
                                let v = jet.grad[l] * (dw * m[h]) + jet.hess[h][l] * w_in;
                                acc[9 + 9 * h + 3 * j + l] += v * (wt * m[j]);
                            }
                        }
                    }
                }
            }
            acc
        })
        .collect();

    let mut sum = vec![Complex64::default(); nacc];
    for part in outer.iter().chain(inner.iter()) {
        for (s, v) in sum.iter_mut().zip(part) {
            *s += v;
        }
    }
    let mut g = [[Complex64::default(); 3]; 3];
    for j in 0..3 {
        for l in 0..3 {
            g[j][l] = -sum[3 * j + l];
        }
    }
    let grad = with_grad.then(|| {
        let mut dg = [[[Complex64::default(); 3]; 3]; 3];
        for h in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    dg[h][j][l] = -sum[9 + 9 * h + 3 * j + l];
                }
            }
        }
        dg
    });
    Ok((g, grad))
}

/// Slice tensor δ_jl Σ_h Γ_{k,hh} - Γ_{k,jl} (and its gradient) by the convolution route.
pub fn conv_slice(
    k: i64,
    x: [f64; 3],
    params: &Params,
    rule: &ConvRule,
    with_grad: bool,
) -> Result<(Mat, Option<Grad>), KernelError> {
    let (g, dg) = conv_gamma(k, x, params, rule, with_grad)?;
    Ok((to_slice(&g), dg.map(|d| [to_slice(&d[0]), to_slice(&d[1]), to_slice(&d[2])])))
}

/// δ_jl tr(G) - G_jl.
pub fn to_slice(g: &Mat) -> Mat {
    let tr = g[0][0] + g[1][1] + g[2][2];
    let mut out = [[Complex64::default(); 3]; 3];
    for j in 0..3 {
        for l in 0..3 {
            out[j][l] = -g[j][l];
        }
        out[j][j] += tr;
    }
    out
}
