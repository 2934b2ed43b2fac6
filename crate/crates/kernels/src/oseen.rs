//! Steady Oseen fundamental solution Φ^λ and the velocity tensor
//! Γ^λ_ij = (δ_ij Δ - ∂_i∂_j) Φ^λ with analytic first derivatives.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::KernelError;
use crate::special::{oseen_e, oseen_e_derivs};
use crate::tensor::{KernelTensor, Mode};

fn norm(x: [f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// Φ^λ(x) = E(λ(|x| + x₁)/2) / (4πλ).
pub fn oseen_phi(x: [f64; 3], lambda: f64) -> Result<f64, KernelError> {
    let r = norm(x);
    if r == 0.0 {
        return Err(KernelError::AtOrigin);
    }
    if lambda == 0.0 {
        return Err(KernelError::DriftRequired);
    }
    Ok(oseen_e(lambda * (r + x[0]) / 2.0) / (4.0 * PI * lambda))
}

/// Γ^λ(x) and, optionally, ∂_hΓ^λ(x) for λ > 0.
fn gamma_positive(x: [f64; 3], lam: f64, with_grad: bool) -> ([[f64; 3]; 3], [[[f64; 3]; 3]; 3]) {
    let r = norm(x);
    let s = lam * (r + x[0]) / 2.0;
    let (e1, e2, e3) = oseen_e_derivs(s);
    let c = 1.0 / (4.0 * PI * lam);
    let half = lam / 2.0;
    let r3 = r * r * r;
    let mut si = [0.0; 3];
    for i in 0..3 {
        si[i] = half * (x[i] / r + delta(i, 0));
    }
    let mut sij = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            sij[i][j] = half * (delta(i, j) / r - x[i] * x[j] / r3);
        }
    }
    // ΔΦ = e^{-s}/(4πr).
    let lap = (-s).exp() / (4.0 * PI * r);
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let dd = c * (e2 * si[i] * si[j] + e1 * sij[i][j]);
            g[i][j] = delta(i, j) * lap - dd;
        }
    }
    let mut dg = [[[0.0; 3]; 3]; 3];
    if with_grad {
        let r5 = r3 * r * r;
        for h in 0..3 {
            let dlap = lap * (-si[h] - x[h] / (r * r));
            for i in 0..3 {
                for j in 0..3 {
                    let shij = half
                        * (-delta(i, j) * x[h] / r3
                            - (delta(h, i) * x[j] + delta(h, j) * x[i]) / r3
                            + 3.0 * x[i] * x[j] * x[h] / r5);
                    let ddd = c
                        * (e3 * si[h] * si[i] * si[j]
                            + e2 * (sij[h][i] * si[j] + sij[h][j] * si[i] + si[h] * sij[i][j])
                            + e1 * shij);
                    dg[h][i][j] = delta(i, j) * dlap - ddd;
                }
            }
        }
    }
    (g, dg)
}

/// Γ^λ(x) as a real 3×3 array. For λ < 0 the decaying solution is the mirror image
/// Γ^λ(x) = R Γ^{|λ|}(Rx) R with R = diag(-1, 1, 1).
pub fn oseen_gamma_values(x: [f64; 3], lambda: f64) -> Result<[[f64; 3]; 3], KernelError> {
    Ok(oseen_gamma_jet(x, lambda, false)?.0)
}

/// Γ^λ(x) together with all ∂_hΓ^λ_ij(x) (indexed [h][i][j]).
pub fn oseen_gamma_jet(
    x: [f64; 3],
    lambda: f64,
    with_grad: bool,
) -> Result<([[f64; 3]; 3], [[[f64; 3]; 3]; 3]), KernelError> {
    if norm(x) == 0.0 {
        return Err(KernelError::AtOrigin);
    }
    if lambda == 0.0 {
        return Err(KernelError::DriftRequired);
    }
    if lambda > 0.0 {
        return Ok(gamma_positive(x, lambda, with_grad));
    }
    let rx = [-x[0], x[1], x[2]];
    let (g, dg) = gamma_positive(rx, -lambda, with_grad);
    let sign = |i: usize| if i == 0 { -1.0 } else { 1.0 };
    let mut g2 = [[0.0; 3]; 3];
    let mut dg2 = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g2[i][j] = sign(i) * sign(j) * g[i][j];
            for h in 0..3 {
                dg2[h][i][j] = sign(h) * sign(i) * sign(j) * dg[h][i][j];
            }
        }
    }
    Ok((g2, dg2))
}

/// Γ^λ at `x` (deriv = 0) or the three tensors ∂_hΓ^λ, h = 1, 2, 3 (deriv = 1).
pub fn oseen_gamma(x: [f64; 3], lambda: f64, deriv: u8) -> Result<Vec<KernelTensor>, KernelError> {
    match deriv {
        0 => {
            let g = oseen_gamma_values(x, lambda)?;
            Ok(vec![KernelTensor::from_real(g, x, Mode::Steady, None)])
        }
        1 => {
            let (_, dg) = oseen_gamma_jet(x, lambda, true)?;
            Ok((0..3)
                .map(|h| KernelTensor::from_real(dg[h], x, Mode::Steady, Some(h)))
                .collect())
        }
        d => Err(KernelError::DerivOrder(d)),
    }
}

/// Frobenius norm of a real 3×3 array.
pub fn frobenius(g: &[[f64; 3]; 3]) -> f64 {
    g.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn to_complex(g: [[f64; 3]; 3]) -> [[Complex64; 3]; 3] {
    let mut out = [[Complex64::default(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = Complex64::new(g[i][j], 0.0);
        }
    }
    out
}
