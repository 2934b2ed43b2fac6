//! Ray-integral evaluation of the per-mode oscillatory velocity far field.
//!
//! For k ≠ 0 the slice kernel is δ_jl Γ_{R,k} + ∂_j∂_l Ψ_k with Ψ_k = Φ_L ∗ Γ_{R,k}
//! (Φ_L = 1/(4π|x|) the Laplace kernel). Since the symbols satisfy
//! 1/|ξ|² - 1/D_k = i((2π/T)k - λξ₁)/(|ξ|² D_k), the potential obeys the first-order
//! transport equation (iω_k - λ∂₁) Ψ_k = Φ_L - Γ_{R,k}. Writing μ = iω_k/λ, its
//! decaying solution along either half-line parallel to e₁ is
//!
//!   Ψ_k(x) = (σ/λ) ∫₀^∞ e^{-σμs} (Φ_L - Γ_{R,k})(x + σ s e₁) ds,  σ = ±1,
//!
//! and the same holds for the Hessian and for convolutions with a source density.
//! The half-line is chosen to run away from the source so that the integrand stays
//! smooth. The Laplace part is a multipole of the source (exact outside its support
//! for a radial bump); the Γ_{R,k} part decays exponentially and is truncated.

use num_complex::Complex64;
use std::f64::consts::PI;

use tpns_core::Params;
use tpns_kernels::mode::{scalar_jet, ModeRates};
use tpns_kernels::quad::gauss_interval;

use crate::source::{point_newton_hessian, BumpQuadrature};

type CMat = [[Complex64; 3]; 3];

/// Truncation and panel controls of the ray integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayRule {
    /// Gauss–Legendre order per panel of the exponentially decaying part.
    pub order_near: usize,
    /// Largest panel length of the exponentially decaying part.
    pub panel_near: f64,
    /// Number of e-folds of the exponentially decaying part to integrate over.
    pub efolds: f64,
    /// Gauss–Legendre order per panel of the algebraic part.
    pub order_far: usize,
    /// Length of the explicitly integrated algebraic part; the remaining tail is
    /// added by one integration by parts.
    pub far_length: f64,
}

impl Default for RayRule {
    fn default() -> Self {
        RayRule {
            order_near: 16,
            panel_near: 2.0,
            efolds: 36.0,
            order_far: 8,
            far_length: 4000.0,
        }
    }
}

impl RayRule {
    /// Doubled orders and longer integration ranges.
    pub fn refined(&self) -> RayRule {
        RayRule {
            order_near: 2 * self.order_near,
            panel_near: self.panel_near,
            efolds: self.efolds + 8.0,
            order_far: 2 * self.order_far,
            far_length: 2.0 * self.far_length,
        }
    }
}

/// Per-mode data of the transport equation.
#[derive(Clone, Copy, Debug)]
pub struct RayMode {
    pub rates: ModeRates,
    pub lambda: f64,
    /// μ = iω_k/λ (purely imaginary).
    pub mu: Complex64,
}

impl RayMode {
    pub fn new(k: i64, params: &Params) -> RayMode {
        let lambda = params.lambda;
        RayMode {
            rates: ModeRates::new(k, lambda, params.period),
            lambda,
            mu: Complex64::new(0.0, params.omega() * k as f64 / lambda),
        }
    }
}

/// Splits [0, length] into equal panels no longer than `max_panel` and returns the
/// composite Gauss–Legendre nodes and weights.
fn composite(length: f64, max_panel: f64, order: usize) -> (Vec<f64>, Vec<f64>) {
    let panels = (length / max_panel).ceil().max(1.0) as usize;
    let h = length / panels as f64;
    let (xs, ws) = gauss_interval(order, 0.0, h);
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let s0 = p as f64 * h;
        for (x, w) in xs.iter().zip(&ws) {
            nodes.push(s0 + x);
            weights.push(*w);
        }
    }
    (nodes, weights)
}

fn add_scaled(acc: &mut CMat, w: Complex64, h: &[[f64; 3]; 3]) {
    for j in 0..3 {
        for l in 0..3 {
            acc[j][l] += w * h[j][l];
        }
    }
}

fn add_scaled_c(acc: &mut CMat, w: Complex64, h: &CMat) {
    for j in 0..3 {
        for l in 0..3 {
            acc[j][l] += w * h[j][l];
        }
    }
}

/// Side of the source the half-line leaves towards.
fn ray_sign(x1: f64, c1: f64) -> f64 {
    if x1 >= c1 {
        1.0
    } else {
        -1.0
    }
}

/// ∫₀^∞ e^{-σμs} H(x + σ s e₁) ds for an algebraically decaying matrix function H,
/// integrated explicitly up to `far_length` with a one-term asymptotic tail.
fn algebraic_ray(mode: &RayMode, rule: &RayRule, sigma: f64, x: [f64; 3], h: impl Fn([f64; 3]) -> [[f64; 3]; 3]) -> CMat {
    let smu = sigma * mode.mu;
    let panel = (PI / smu.norm()).min(2.0);
    let (ss, ws) = composite(rule.far_length, panel, rule.order_far);
    let mut acc = [[Complex64::default(); 3]; 3];
    for (s, w) in ss.iter().zip(&ws) {
        let z = [x[0] + sigma * s, x[1], x[2]];
        add_scaled(&mut acc, (-smu * s).exp() * w, &h(z));
    }
    let zf = [x[0] + sigma * rule.far_length, x[1], x[2]];
    add_scaled(&mut acc, (-smu * rule.far_length).exp() / smu, &h(zf));
    acc
}

/// Integration length of the exponentially decaying part along the half-line: the
/// exponent -Re(a)|z| - b z₁ falls at least at rate |b| when the half-line runs with
/// the drift term and at least at rate Re(a) - |b| otherwise.
fn near_length(mode: &RayMode, rule: &RayRule, sigma: f64, start_distance: f64) -> f64 {
    let floor = mode.rates.min_rate().max(1e-3);
    let rate = if sigma * mode.rates.b >= 0.0 {
        mode.rates.b.abs().max(floor)
    } else {
        floor
    };
    start_distance + rule.efolds / rate
}

/// ∫₀^S e^{-σμs} H(x + σ s e₁) ds for an exponentially decaying complex H.
fn decaying_ray(mode: &RayMode, rule: &RayRule, sigma: f64, x: [f64; 3], length: f64, h: impl Fn([f64; 3]) -> CMat) -> CMat {
    let smu = sigma * mode.mu;
    let panel = rule.panel_near.min(PI / smu.norm());
    let (ss, ws) = composite(length, panel, rule.order_near);
    let mut acc = [[Complex64::default(); 3]; 3];
    for (s, w) in ss.iter().zip(&ws) {
        let z = [x[0] + sigma * s, x[1], x[2]];
        add_scaled_c(&mut acc, (-smu * s).exp() * w, &h(z));
    }
    acc
}

/// Hessian of Ψ_k = Φ_L ∗ Γ_{R,k} (unit point source at the origin) at x ≠ 0, taking
/// the half-line in direction `sigma`·e₁.
pub fn point_potential_hessian(mode: &RayMode, rule: &RayRule, sigma: f64, x: [f64; 3]) -> CMat {
    let n = algebraic_ray(mode, rule, sigma, x, |z| point_newton_hessian(z, 1.0));
    let dist = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let len = near_length(mode, rule, sigma, dist);
    let y = decaying_ray(mode, rule, sigma, x, len, |z| scalar_jet(&mode.rates, z).hess);
    combine(mode, sigma, &n, &y)
}

fn combine(mode: &RayMode, sigma: f64, n: &CMat, y: &CMat) -> CMat {
    let f = sigma / mode.lambda;
    let mut out = [[Complex64::default(); 3]; 3];
    for j in 0..3 {
        for l in 0..3 {
            out[j][l] = (n[j][l] - y[j][l]) * f;
        }
    }
    out
}

/// Slice tensor δ_jl Γ_{R,k}(x) + ∂_j∂_l Ψ_k(x) of a unit point source, with the
/// half-line leaving the origin. Used to cross-check the ray representation against
/// the direct kernel routes.
pub fn ray_slice(k: i64, x: [f64; 3], params: &Params, rule: &RayRule) -> CMat {
    ray_slice_directed(k, x, params, rule, ray_sign(x[0], 0.0))
}

/// As [`ray_slice`] with an explicit half-line direction σ = ±1 (both are exact).
pub fn ray_slice_directed(k: i64, x: [f64; 3], params: &Params, rule: &RayRule, sigma: f64) -> CMat {
    let mode = RayMode::new(k, params);
    let mut m = point_potential_hessian(&mode, rule, sigma, x);
    let g = scalar_jet(&mode.rates, x).value;
    for (j, row) in m.iter_mut().enumerate() {
        row[j] += g;
    }
    m
}

/// Per-mode velocity response to the unit-amplitude source density ψ: the matrix
/// W_{jl} = δ_jl (Γ_{R,k} ∗ ψ)(x) + ∂_j∂_l (Ψ_k ∗ ψ)(x), for x outside the support.
pub fn bump_mode_response(mode: &RayMode, rule: &RayRule, src: &BumpQuadrature, x: [f64; 3]) -> CMat {
    let sigma = ray_sign(x[0], src.center[0]);
    let n = algebraic_ray(mode, rule, sigma, x, |z| src.newton_hessian(z));
    let d = crate::source::norm(crate::source::sub(x, src.center)) + src.radius;
    let len = near_length(mode, rule, sigma, d);
    let y = decaying_ray(mode, rule, sigma, x, len, |z| src.yukawa_jet(&mode.rates, z).1);
    let mut m = combine(mode, sigma, &n, &y);
    let (g, _) = src.yukawa_jet(&mode.rates, x);
    for (j, row) in m.iter_mut().enumerate() {
        row[j] += g;
    }
    m
}
