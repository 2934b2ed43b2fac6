//! Gauss–Legendre nodes and product rules on the sphere.

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j as f64 + 1.0) * z * p1 - j as f64 * p2) / (j as f64 + 1.0);
            }
            dp = nf * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Gauss–Legendre rule mapped to [a, b].
pub fn gauss_interval(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|t| a + half * (t + 1.0)).collect(),
        w.iter().map(|v| v * half).collect(),
    )
}

/// Product rule on the unit sphere around `pole`: Gauss–Legendre in cos θ and the
/// trapezoidal rule in φ. Returns (directions, weights); weights sum to 4π.
pub fn sphere_rule(n_theta: usize, n_phi: usize, pole: [f64; 3]) -> (Vec<[f64; 3]>, Vec<f64>) {
    let (e1, e2, e3) = frame(pole);
    let (ct, wt) = gauss_legendre(n_theta);
    let wphi = 2.0 * PI / n_phi as f64;
    let mut dirs = Vec::with_capacity(n_theta * n_phi);
    let mut wts = Vec::with_capacity(n_theta * n_phi);
    for (c, w) in ct.iter().zip(&wt) {
        let s = (1.0 - c * c).sqrt();
        for j in 0..n_phi {
            let phi = wphi * j as f64;
            let (sp, cp) = phi.sin_cos();
            let mut d = [0.0; 3];
            for a in 0..3 {
                d[a] = c * e3[a] + s * (cp * e1[a] + sp * e2[a]);
            }
            dirs.push(d);
            wts.push(w * wphi);
        }
    }
    (dirs, wts)
}

/// Orthonormal frame (e1, e2, e3) with e3 along `pole`.
pub fn frame(pole: [f64; 3]) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let r = (pole[0] * pole[0] + pole[1] * pole[1] + pole[2] * pole[2]).sqrt();
    let e3 = [pole[0] / r, pole[1] / r, pole[2] / r];
    let t = if e3[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    let mut e1 = cross(e3, t);
    let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    for v in e1.iter_mut() {
        *v /= n1;
    }
    let e2 = cross(e3, e1);
    (e1, e2, e3)
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}
