//! Closed-form zero-drift oscillatory Stokes kernel: the inverse transform of
//! (I - ξ⊗ξ/|ξ|²)/(|ξ|² + κ²) with κ² = i(2π/T)k, and its gradient.
//!
//! It carries the same 1/|x| singularity and the same far-field tail as the drifted
//! per-mode velocity kernel, so subtracting it leaves a remainder whose Fourier
//! symbol decays fast enough for accurate lattice inversion.

use num_complex::Complex64;
use std::f64::consts::PI;

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// Radial profile H(r) = (1 - e^{-κr})/(4πκ²r) and its first three derivatives.
fn h_derivs(kappa: Complex64, r: f64) -> [Complex64; 4] {
    let e = (-kappa * r).exp();
    let one_m_e = Complex64::new(1.0, 0.0) - e;
    let c = 1.0 / (4.0 * PI * kappa * kappa);
    let kr = kappa * r;
    let r2 = r * r;
    let r3 = r2 * r;
    let r4 = r2 * r2;
    let g0 = one_m_e / r;
    let g1 = (kr * e - one_m_e) / r2;
    let g2 = (2.0 * one_m_e - 2.0 * kr * e - kr * kr * e) / r3;
    let g3 = kappa * kappa * kappa * e / r + 3.0 * kappa * kappa * e / r2 + 6.0 * kappa * e / r3
        - 6.0 * one_m_e / r4;
    [c * g0, c * g1, c * g2, c * g3]
}

/// Kernel value and gradient (indexed [h][j][l]) at x ≠ 0.
pub fn brinkman_jet(
    kappa: Complex64,
    x: [f64; 3],
    with_grad: bool,
) -> ([[Complex64; 3]; 3], [[[Complex64; 3]; 3]; 3]) {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let u = [x[0] / r, x[1] / r, x[2] / r];
    let [_, h1, h2, h3] = h_derivs(kappa, r);
    let y = (-kappa * r).exp() / (4.0 * PI * r);
    let a = h2 - h1 / r;
    let b = h1 / r;
    let mut g = [[Complex64::default(); 3]; 3];
    for j in 0..3 {
        for l in 0..3 {
            g[j][l] = delta(j, l) * (y + b) + a * (u[j] * u[l]);
        }
    }
    let mut dg = [[[Complex64::default(); 3]; 3]; 3];
    if with_grad {
        let dy = -y * (kappa + 1.0 / r);
        let db = h2 / r - h1 / (r * r);
        let da = h3 - h2 / r + h1 / (r * r);
        for h in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    let geo = ((delta(h, j) - u[h] * u[j]) * u[l] + u[j] * (delta(h, l) - u[h] * u[l])) / r;
                    dg[h][j][l] = delta(j, l) * (dy + db) * u[h] + da * (u[h] * u[j] * u[l]) + a * geo;
                }
            }
        }
    }
    (g, dg)
}
