//! Quadrature of the forcing bump over its support ball, and the potentials of the
//! bump needed by the far-field representation.

use num_complex::Complex64;
use std::f64::consts::PI;

use tpns_kernels::mode::{scalar_jet, ModeRates};
use tpns_kernels::oseen_gamma_values;
use tpns_kernels::quad::{gauss_interval, sphere_rule};
use tpns_solver::bump;

use crate::error::AsymptoticsError;

/// Orders of the product rule on the support ball: Gauss–Legendre in the radius,
/// Gauss–Legendre in cos θ, trapezoid in φ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallRule {
    pub n_radial: usize,
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for BallRule {
    fn default() -> Self {
        BallRule {
            n_radial: 16,
            n_theta: 12,
            n_phi: 24,
        }
    }
}

impl BallRule {
    /// All orders doubled.
    pub fn refined(&self) -> BallRule {
        BallRule {
            n_radial: 2 * self.n_radial,
            n_theta: 2 * self.n_theta,
            n_phi: 2 * self.n_phi,
        }
    }
}

/// Weighted nodes y_i, w_i·ψ(y_i) discretizing the bump ψ as a sum of point masses.
#[derive(Clone, Debug, PartialEq)]
pub struct BumpQuadrature {
    pub center: [f64; 3],
    pub radius: f64,
    pub nodes: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    /// ∫ψ, obtained from the radial rule (exact angular factor 4π).
    pub integral: f64,
}

impl BumpQuadrature {
    pub fn new(center: [f64; 3], radius: f64, rule: BallRule) -> BumpQuadrature {
        let (rs, wr) = gauss_interval(rule.n_radial, 0.0, radius);
        let (dirs, wd) = sphere_rule(rule.n_theta, rule.n_phi, [0.0, 0.0, 1.0]);
        let mut nodes = Vec::with_capacity(rs.len() * dirs.len());
        let mut weights = Vec::with_capacity(rs.len() * dirs.len());
        let mut integral = 0.0;
        for (&r, &w) in rs.iter().zip(&wr) {
            let y = [center[0] + r, center[1], center[2]];
            let radial = w * r * r * bump(y, center, radius);
            integral += 4.0 * PI * radial;
            for (d, &wa) in dirs.iter().zip(&wd) {
                nodes.push([center[0] + r * d[0], center[1] + r * d[1], center[2] + r * d[2]]);
                weights.push(radial * wa);
            }
        }
        BumpQuadrature {
            center,
            radius,
            nodes,
            weights,
            integral,
        }
    }

    /// Smallest |x| admitted by far-field evaluations: 2·radius + |center|.
    pub fn margin(&self) -> f64 {
        2.0 * self.radius + norm(self.center)
    }

    pub fn check_outside(&self, x: [f64; 3]) -> Result<(), AsymptoticsError> {
        let m = self.margin();
        let r = norm(x);
        if r < m {
            return Err(AsymptoticsError::InsideMargin { got: r, min: m });
        }
        Ok(())
    }

    /// Hessian of the Newton potential Φ_L ∗ ψ at z outside the support:
    /// (∫ψ)·∂_j∂_l 1/(4π|z - c|).
    pub fn newton_hessian(&self, z: [f64; 3]) -> [[f64; 3]; 3] {
        point_newton_hessian(sub(z, self.center), self.integral)
    }

    /// Value and Hessian of Γ_{R,k} ∗ ψ at z outside the support.
    pub fn yukawa_jet(&self, rates: &ModeRates, z: [f64; 3]) -> (Complex64, [[Complex64; 3]; 3]) {
        let mut v = Complex64::default();
        let mut h = [[Complex64::default(); 3]; 3];
        for (y, &w) in self.nodes.iter().zip(&self.weights) {
            let jet = scalar_jet(rates, sub(z, *y));
            v += jet.value * w;
            for j in 0..3 {
                for l in 0..3 {
                    h[j][l] += jet.hess[j][l] * w;
                }
            }
        }
        (v, h)
    }

    /// Γ^λ ∗ ψ at x outside the support.
    pub fn oseen_apply(&self, x: [f64; 3], lambda: f64) -> Result<[[f64; 3]; 3], AsymptoticsError> {
        let mut g = [[0.0; 3]; 3];
        for (y, &w) in self.nodes.iter().zip(&self.weights) {
            let v = oseen_gamma_values(sub(x, *y), lambda)?;
            for j in 0..3 {
                for l in 0..3 {
                    g[j][l] += w * v[j][l];
                }
            }
        }
        Ok(g)
    }
}

/// mass·∂_j∂_l 1/(4π|z|) = mass·(3 z_j z_l/|z|² - δ_jl)/(4π|z|³).
pub fn point_newton_hessian(z: [f64; 3], mass: f64) -> [[f64; 3]; 3] {
    let r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
    let r = r2.sqrt();
    let c = mass / (4.0 * PI * r2 * r);
    let mut h = [[0.0; 3]; 3];
    for j in 0..3 {
        for l in 0..3 {
            let d = if j == l { 1.0 } else { 0.0 };
            h[j][l] = c * (3.0 * z[j] * z[l] / r2 - d);
        }
    }
    h
}

pub fn norm(x: [f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

pub fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
