//! The per-mode scalar kernel
//! Γ_{R,k}(x) = exp(-a|x| - b x₁)/(4π|x|), a = sqrt_nnr(i(2π/T)k + b²), b = λ/2,
//! the fundamental solution of -Δ + i(2π/T)k - λ∂₁ on ℝ³.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::KernelError;
use crate::special::sqrt_nnr;

/// Decay parameters (a, b) of the per-mode scalar kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeRates {
    pub a: Complex64,
    pub b: f64,
}

impl ModeRates {
    pub fn new(k: i64, lambda: f64, period: f64) -> ModeRates {
        let omega = 2.0 * PI / period;
        let b = lambda / 2.0;
        ModeRates {
            a: sqrt_nnr(Complex64::new(b * b, omega * k as f64)),
            b,
        }
    }

    /// Slowest exponential decay rate over all directions: Re a - |b|.
    pub fn min_rate(&self) -> f64 {
        self.a.re - self.b.abs()
    }
}

/// Value, gradient and Hessian of the scalar kernel at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarJet {
    pub value: Complex64,
    pub grad: [Complex64; 3],
    pub hess: [[Complex64; 3]; 3],
}

/// Requested derivative of the scalar kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarKernelValue {
    Value(Complex64),
    Gradient([Complex64; 3]),
    Hessian([[Complex64; 3]; 3]),
}

/// Evaluates value, gradient and Hessian from precomputed rates. `x` must be nonzero.
pub fn scalar_jet(rates: &ModeRates, x: [f64; 3]) -> ScalarJet {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let a = rates.a;
    let b = rates.b;
    let g = (-a * r - b * x[0]).exp() / (4.0 * PI * r);
    // ∂_l g = g·q_l with q_l = -(a + 1/r) x_l/r - b δ_l1
    let ar = a + 1.0 / r;
    let mut q = [Complex64::default(); 3];
    for l in 0..3 {
        q[l] = -ar * (x[l] / r);
    }
    q[0] -= b;
    let mut grad = [Complex64::default(); 3];
    let mut hess = [[Complex64::default(); 3]; 3];
    let r2 = r * r;
    let r3 = r2 * r;
    let r4 = r2 * r2;
    for l in 0..3 {
        grad[l] = g * q[l];
        for m in 0..3 {
            let d = if l == m { 1.0 } else { 0.0 };
            let xx = x[l] * x[m];
            // ∂_m q_l = -a(δ/r - x_l x_m/r³) - (δ/r² - 2 x_l x_m/r⁴)
            let dq = -a * (d / r - xx / r3) - (d / r2 - 2.0 * xx / r4);
            hess[l][m] = g * (q[l] * q[m] + dq);
        }
    }
    ScalarJet {
        value: g,
        grad,
        hess,
    }
}

/// Γ_{R,k}(x) (deriv = 0), its gradient (deriv = 1) or its Hessian (deriv = 2).
pub fn mode_scalar_kernel(
    k: i64,
    x: [f64; 3],
    lambda: f64,
    period: f64,
    deriv: u8,
) -> Result<ScalarKernelValue, KernelError> {
    if k == 0 {
        return Err(KernelError::SteadyMode);
    }
    if x == [0.0; 3] {
        return Err(KernelError::AtOrigin);
    }
    let jet = scalar_jet(&ModeRates::new(k, lambda, period), x);
    match deriv {
        0 => Ok(ScalarKernelValue::Value(jet.value)),
        1 => Ok(ScalarKernelValue::Gradient(jet.grad)),
        2 => Ok(ScalarKernelValue::Hessian(jet.hess)),
        d => Err(KernelError::DerivOrder(d)),
    }
}

/// Convenience wrapper returning only the value.
pub fn mode_scalar_value(k: i64, x: [f64; 3], lambda: f64, period: f64) -> Result<Complex64, KernelError> {
    match mode_scalar_kernel(k, x, lambda, period, 0)? {
        ScalarKernelValue::Value(v) => Ok(v),
        _ => unreachable!("deriv 0 returns a value"),
    }
}
