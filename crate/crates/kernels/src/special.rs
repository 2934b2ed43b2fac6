//! Special functions: the non-negative-real-part square root, the Oseen integral
//! E(s) = ∫₀^s (1 - e^{-τ})/τ dτ with its derivatives, and the exponential integral E₁.

use num_complex::Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Square root with non-negative real part (the principal branch; on the branch cut
/// the imaginary part keeps the sign of the input's signed zero).
pub fn sqrt_nnr(z: Complex64) -> Complex64 {
    let w = z.sqrt();
    if w.re < 0.0 {
        -w
    } else {
        w
    }
}

/// E(s) = ∫₀^s (1 - e^{-τ})/τ dτ for real s.
///
/// Power series for s <= 1 (alternating only for s > 0, where |s| <= 1 keeps it
/// cancellation-free; for s < 0 all terms share a sign), and γ + ln s + E₁(s) for s > 1.
pub fn oseen_e(s: f64) -> f64 {
    if s <= 1.0 {
        // Σ_{n>=1} (-1)^{n+1} s^n / (n·n!)
        let mut term = 1.0; // s^n / n!
        let mut sum = 0.0;
        let mut n = 1.0;
        loop {
            term *= s / n;
            let c = if (n as i64) % 2 == 1 { term / n } else { -term / n };
            sum += c;
            if c.abs() <= 1e-17 * sum.abs().max(1e-300) && n > 2.0 || n > 500.0 {
                break;
            }
            n += 1.0;
        }
        sum
    } else {
        EULER_GAMMA + s.ln() + exp_integral_e1(s)
    }
}

/// Exponential integral E₁(x) = ∫_x^∞ e^{-t}/t dt for x > 0.
///
/// Series for x <= 1, modified Lentz continued fraction otherwise.
pub fn exp_integral_e1(x: f64) -> f64 {
    assert!(x > 0.0, "E1 requires a positive argument");
    if x <= 1.0 {
        let mut term = 1.0;
        let mut sum = 0.0;
        let mut n = 1.0;
        loop {
            term *= -x / n;
            let c = term / n;
            sum += c;
            if c.abs() < 1e-17 * sum.abs() {
                break;
            }
            n += 1.0;
        }
        -EULER_GAMMA - x.ln() - sum
    } else {
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// J_m(s) = ∫₀¹ t^m e^{-st} dt for m ∈ {0, 1, 2}.
fn moment(m: usize, s: f64) -> f64 {
    if s.abs() < 2.0 {
        // Σ_n (-s)^n / (n!·(m + n + 1))
        let mut term = 1.0;
        let mut sum = 1.0 / (m as f64 + 1.0);
        let mut n = 1.0;
        while n < 80.0 {
            term *= -s / n;
            let c = term / (m as f64 + n + 1.0);
            sum += c;
            if c.abs() < 1e-18 {
                break;
            }
            n += 1.0;
        }
        sum
    } else {
        let e = (-s).exp();
        match m {
            0 => -(-s).exp_m1() / s,
            1 => (1.0 - e * (1.0 + s)) / (s * s),
            2 => (2.0 - e * (s * s + 2.0 * s + 2.0)) / (s * s * s),
            _ => unreachable!("moment order"),
        }
    }
}

/// Derivatives of E: returns (E'(s), E''(s), E'''(s)), using
/// E^{(m+1)}(s) = (-1)^m ∫₀¹ t^m e^{-st} dt.
pub fn oseen_e_derivs(s: f64) -> (f64, f64, f64) {
    (moment(0, s), -moment(1, s), moment(2, s))
}
