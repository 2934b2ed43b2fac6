//! C^∞ partition-of-unity profile used for tapers and quadrature splitting.

fn bump_tail(z: f64) -> f64 {
    if z > 0.0 {
        (-1.0 / z).exp()
    } else {
        0.0
    }
}

fn bump_tail_deriv(z: f64) -> f64 {
    if z > 0.0 {
        (-1.0 / z).exp() / (z * z)
    } else {
        0.0
    }
}

/// χ(t) = 1 for t <= 1/2, 0 for t >= 1, smooth and monotone in between.
pub fn chi(t: f64) -> f64 {
    let u = (2.0 * t - 1.0).clamp(0.0, 1.0);
    let a = bump_tail(1.0 - u);
    let b = bump_tail(u);
    a / (a + b)
}

/// dχ/dt.
pub fn chi_deriv(t: f64) -> f64 {
    let u = 2.0 * t - 1.0;
    if u <= 0.0 || u >= 1.0 {
        return 0.0;
    }
    let a = bump_tail(1.0 - u);
    let b = bump_tail(u);
    let da = -bump_tail_deriv(1.0 - u);
    let db = bump_tail_deriv(u);
    2.0 * (da * b - a * db) / ((a + b) * (a + b))
}
