use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use tpns_core::Params;
use tpns_kernels::convolution::{conv_slice, ConvRule};
use tpns_kernels::spectral::{spectral_slice_grid, velocity_symbol, SpectralLattice};
use tpns_kernels::velocity::{l2t_from_modes, positive_modes, synthesize};
use tpns_kernels::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Independent oracle for E(s): composite Gauss–Legendre (10 nodes, 400 panels) on
/// the integrand (1 - e^{-τ})/τ written with expm1.
fn e_quadrature(s: f64) -> f64 {
    let nodes = [
        (-0.973_906_528_517_171_7, 0.066_671_344_308_688_14),
        (-0.865_063_366_688_984_5, 0.149_451_349_150_580_6),
        (-0.679_409_568_299_024_4, 0.219_086_362_515_982_04),
        (-0.433_395_394_129_247_2, 0.269_266_719_309_996_35),
        (-0.148_874_338_981_631_2, 0.295_524_224_714_752_87),
        (0.148_874_338_981_631_2, 0.295_524_224_714_752_87),
        (0.433_395_394_129_247_2, 0.269_266_719_309_996_35),
        (0.679_409_568_299_024_4, 0.219_086_362_515_982_04),
        (0.865_063_366_688_984_5, 0.149_451_349_150_580_6),
        (0.973_906_528_517_171_7, 0.066_671_344_308_688_14),
    ];
    let panels = 400;
    let h = s / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (t, w) in nodes {
            let tau = mid + 0.5 * h * t;
            acc += w * 0.5 * h * (-(-tau).exp_m1() / tau);
        }
    }
    acc
}

#[test]
fn sqrt_nnr_examples() {
    let a = sqrt_nnr(c(-4.0, 0.0));
    assert!((a - c(0.0, 2.0)).norm() < 1e-15);
    let b = sqrt_nnr(c(3.0, 4.0));
    assert!((b - c(2.0, 1.0)).norm() < 1e-15);
    // Closed real-part formula Re sqrt(z) = sqrt((|z| + Re z)/2).
    let z = c(1.0, 1.0);
    let want = ((z.norm() + z.re) / 2.0).sqrt();
    let got = sqrt_nnr(z);
    assert!((got.re - want).abs() < 1e-15);
    assert!((got.re - 1.0987).abs() < 1e-4);
}

#[test]
fn oseen_e_examples() {
    assert_eq!(oseen_e(0.0), 0.0);
    // Alternating series oracle Σ (-1)^{n+1} sⁿ/(n·n!).
    let s: f64 = 0.1;
    let mut series = 0.0;
    let mut fact = 1.0;
    for n in 1..=12 {
        fact *= n as f64;
        series -= (-s).powi(n) / (n as f64 * fact);
    }
    assert!((oseen_e(0.1) - series).abs() < 1e-14);
    assert!((oseen_e(0.1) - 0.0975546).abs() < 1e-7);
    assert!((oseen_e(1.0) - e_quadrature(1.0)).abs() < 1e-13);
    assert!((oseen_e(1.0) - 0.7965996).abs() < 1e-7);
}

#[test]
fn oseen_e_matches_quadrature_across_branches() {
    for &s in &[-50.0, -20.0, -3.0, -1.0, -0.5, 0.3, 0.999, 1.0, 1.001, 2.5, 7.0, 20.0, 50.0] {
        let q = e_quadrature(s);
        let v = oseen_e(s);
        let tol = 1e-12 * q.abs().max(1.0);
        assert!((v - q).abs() <= tol, "s={s}: {v} vs {q}");
    }
}

#[test]
fn e1_reference_values() {
    for (x, want) in [
        (0.5, 0.559_773_594_776_160_8),
        (1.0, 0.219_383_934_395_520_3),
        (2.0, 0.048_900_510_708_061_19),
        (10.0, 4.156_968_929_685_324e-6),
    ] {
        let got = exp_integral_e1(x);
        assert!((got - want).abs() < 1e-14 * want.max(1e-3) * 1e3, "{x}: {got} vs {want}");
    }
}

#[test]
fn e_derivatives_match_finite_differences() {
    for &s in &[0.0, 0.05, 0.7, 1.9, 2.0, 2.1, 5.0, 30.0] {
        let (d1, d2, d3) = oseen_e_derivs(s);
        let h = 1e-4;
        let fd1 = (oseen_e(s + h) - oseen_e(s - h)) / (2.0 * h);
        assert!((d1 - fd1).abs() < 1e-8, "E' at {s}");
        let (p1, p2, _) = oseen_e_derivs(s + h);
        let (m1, m2, _) = oseen_e_derivs(s - h);
        assert!((d2 - (p1 - m1) / (2.0 * h)).abs() < 1e-8, "E'' at {s}");
        assert!((d3 - (p2 - m2) / (2.0 * h)).abs() < 1e-8, "E''' at {s}");
    }
}

#[test]
fn oseen_phi_examples() {
    assert_eq!(oseen_phi([-2.5, 0.0, 0.0], 1.0).unwrap(), 0.0);
    let v = oseen_phi([1.0, 0.0, 0.0], 1.0).unwrap();
    assert!((v - e_quadrature(1.0) / (4.0 * PI)).abs() < 1e-14);
    assert!((v - 0.063391).abs() < 1e-6);
    // Rotation about the x₁ axis.
    let x = [0.7, 1.2, -0.4];
    let base = oseen_phi(x, 1.3).unwrap();
    for ang in [0.3, 1.1, 2.9] {
        let (s, co) = f64::sin_cos(ang);
        let y = [x[0], co * x[1] - s * x[2], s * x[1] + co * x[2]];
        assert!((oseen_phi(y, 1.3).unwrap() - base).abs() < 1e-15);
    }
    assert!(oseen_phi([0.0; 3], 1.0).is_err());
}

/// Central-difference Γ^λ from Φ^λ: δ_ij ΔΦ - ∂_i∂_jΦ.
fn gamma_fd(x: [f64; 3], lam: f64) -> [[f64; 3]; 3] {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let h = 1e-3 * r;
    let phi = |dx: [f64; 3]| oseen_phi([x[0] + dx[0], x[1] + dx[1], x[2] + dx[2]], lam).unwrap();
    let mut hess = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut ei = [0.0; 3];
            let mut ej = [0.0; 3];
            ei[i] = h;
            ej[j] = h;
            let pp = phi([ei[0] + ej[0], ei[1] + ej[1], ei[2] + ej[2]]);
            let pm = phi([ei[0] - ej[0], ei[1] - ej[1], ei[2] - ej[2]]);
            let mp = phi([-ei[0] + ej[0], -ei[1] + ej[1], -ei[2] + ej[2]]);
            let mm = phi([-ei[0] - ej[0], -ei[1] - ej[1], -ei[2] - ej[2]]);
            hess[i][j] = (pp - pm - mp + mm) / (4.0 * h * h);
        }
    }
    let lap = hess[0][0] + hess[1][1] + hess[2][2];
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = if i == j { lap } else { 0.0 } - hess[i][j];
        }
    }
    g
}

fn rel_diff(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> f64 {
    let mut d: f64 = 0.0;
    let mut s: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            d = d.max((a[i][j] - b[i][j]).abs());
            s = s.max(b[i][j].abs());
        }
    }
    d / s
}

#[test]
fn oseen_gamma_is_symmetric_and_matches_differences() {
    let x = [2.0, 1.0, 0.0];
    let g = oseen_gamma_values(x, 1.0).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(g[i][j], g[j][i]);
        }
    }
    assert!(rel_diff(&g, &gamma_fd(x, 1.0)) < 1e-6);
    let t = oseen_gamma(x, 1.0, 0).unwrap();
    assert_eq!(t.len(), 1);
    assert!(t[0].entries.iter().flatten().all(|v| v.im == 0.0));
}

#[test]
fn oseen_gamma_gradient_matches_differences() {
    for x in [[2.0, 1.0, 0.0], [-3.0, 0.5, 1.0], [0.6, -0.2, 0.3], [15.0, -4.0, 6.0]] {
        let (_, dg) = oseen_gamma_jet(x, 1.0, true).unwrap();
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let h = 1e-4 * r;
        for hdir in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[hdir] += h;
            xm[hdir] -= h;
            let gp = oseen_gamma_values(xp, 1.0).unwrap();
            let gm = oseen_gamma_values(xm, 1.0).unwrap();
            let mut fd = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    fd[i][j] = (gp[i][j] - gm[i][j]) / (2.0 * h);
                }
            }
            assert!(rel_diff(&dg[hdir], &fd) < 1e-6, "x={x:?} h={hdir}");
        }
    }
}

#[test]
fn negative_drift_mirrors_the_kernel() {
    let x = [1.5, -0.7, 2.0];
    let g = oseen_gamma_values(x, -0.8).unwrap();
    let m = oseen_gamma_values([-x[0], x[1], x[2]], 0.8).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let s = if (i == 0) ^ (j == 0) { -1.0 } else { 1.0 };
            assert!((g[i][j] - s * m[i][j]).abs() < 1e-15);
        }
    }
    // Away from the wake the mirrored kernel still matches differences of the
    // mirrored potential.
    let fd = gamma_fd([-x[0], x[1], x[2]], 0.8);
    assert!(rel_diff(&m, &fd) < 1e-6);
}

fn fit_slope(r: &[f64], v: &[f64]) -> f64 {
    let n = r.len() as f64;
    let lx: Vec<f64> = r.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = v.iter().map(|x| x.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

#[test]
fn wake_axis_decays_like_inverse_distance() {
    let radii: Vec<f64> = (0..8).map(|i| 5.0 * 2f64.powf(i as f64 * 4.0 / 7.0)).collect();
    let along = |d: [f64; 3]| -> Vec<f64> {
        radii
            .iter()
            .map(|&r| frobenius(&oseen_gamma_values([r * d[0], r * d[1], r * d[2]], 1.0).unwrap()))
            .collect()
    };
    let wake = fit_slope(&radii, &along([-1.0, 0.0, 0.0]));
    assert!((wake + 1.0).abs() < 0.02, "wake slope {wake}");
    let upstream = fit_slope(&radii, &along([1.0, 0.0, 0.0]));
    assert!(upstream < -1.9, "upstream slope {upstream}");
}

#[test]
fn scalar_kernel_examples() {
    // λ = 0 specialization.
    let x: [f64; 3] = [0.3, -1.1, 0.8];
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let v = mode_scalar_value(2, x, 0.0, 2.0 * PI).unwrap();
    let a = sqrt_nnr(c(0.0, 2.0));
    let want = (-a * r).exp() / (4.0 * PI * r);
    assert!((v - want).norm() < 1e-15);
    assert!(mode_scalar_value(0, x, 1.0, 2.0 * PI).is_err());
    assert!(mode_scalar_value(1, [0.0; 3], 1.0, 2.0 * PI).is_err());
}

#[test]
fn scalar_kernel_log_magnitude_is_linear_in_sqrt_k_times_r() {
    // log(4π|x||Γ_R|) against √k·|x| along e₂ (no drift factor): negative slope.
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 1..=8 {
        for i in 0..6 {
            let r = 1.0 + i as f64;
            let v = mode_scalar_value(k, [0.0, r, 0.0], 1.0, 2.0 * PI).unwrap();
            xs.push((k as f64).sqrt() * r);
            ys.push((4.0 * PI * r * v.norm()).ln());
        }
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let slope = xs.iter().zip(&ys).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>()
        / xs.iter().map(|a| (a - mx) * (a - mx)).sum::<f64>();
    assert!(slope < -0.5, "slope {slope}");
}

#[test]
fn scalar_kernel_derivatives_match_differences() {
    let rates = ModeRates::new(3, 1.0, 2.0 * PI);
    for x in [[0.5, 0.1, -0.2], [2.0, -1.0, 0.5], [-6.0, 3.0, 2.0], [12.0, 5.0, -9.0]] {
        let jet = scalar_jet(&rates, x);
        let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        let h = 1e-5 * r;
        let scale_g = jet.grad.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let scale_h = jet.hess.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        for d in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[d] += h;
            xm[d] -= h;
            let jp = scalar_jet(&rates, xp);
            let jm = scalar_jet(&rates, xm);
            let fd = (jp.value - jm.value) / (2.0 * h);
            assert!((fd - jet.grad[d]).norm() < 1e-6 * scale_g);
            for l in 0..3 {
                let fdh = (jp.grad[l] - jm.grad[l]) / (2.0 * h);
                assert!((fdh - jet.hess[l][d]).norm() < 1e-6 * scale_h);
            }
        }
    }
}

#[test]
fn symbol_is_annihilated_by_xi() {
    let p = Params {
        n_spatial: 8,
        n_temporal: 2,
        box_half_length: 3.0,
        ..Params::default()
    };
    let lat = tpns_core::build_lattice(&p).unwrap();
    for k in [-2i64, -1, 1, 2] {
        for q in 0..lat.n_space() {
            let xi = lat.xi(q);
            if xi == [0.0; 3] {
                continue;
            }
            let s = velocity_symbol(k, xi, &p);
            for l in 0..3 {
                let v: Complex64 = (0..3).map(|j| s[j][l] * xi[j]).sum();
                assert!(v.norm() < 1e-14);
            }
        }
    }
}

#[test]
fn velocity_kernel_trace_and_dual_route() {
    let p = Params::default();
    let x = [3.0, 0.0, 0.0];
    let conv = mode_velocity_kernel(1, x, &p, Route::Convolution).unwrap();
    let spec = mode_velocity_kernel(1, x, &p, Route::Spectral).unwrap();
    // Slice trace equals twice the trace of Γ_k, which is the scalar kernel Γ_R.
    let gr = mode_scalar_value(1, x, 1.0, 2.0 * PI).unwrap();
    assert!((conv.trace() - 2.0 * gr).norm() < 1e-4 * (2.0 * gr).norm());
    assert!((spec.trace() - 2.0 * gr).norm() < 1e-3 * (2.0 * gr).norm());
    assert!(conv.max_diff(&spec) <= 1e-3 * conv.max_abs());
    assert!(mode_velocity_kernel(0, x, &p, Route::Convolution).is_err());
    assert!(mode_velocity_kernel(1, [0.1, 0.0, 0.0], &p, Route::Convolution).is_err());
}

#[test]
fn dual_route_at_high_mode_and_off_axis() {
    let p = Params::default();
    for (k, x) in [(8i64, [2.0, 0.0, 0.0]), (4, [-2.0, 3.0, 1.0]), (2, [1.0, -5.0, 4.0])] {
        let conv = mode_velocity_kernel(k, x, &p, Route::Convolution).unwrap();
        let spec = mode_velocity_kernel(k, x, &p, Route::Spectral).unwrap();
        let rel = conv.max_diff(&spec) / conv.max_abs();
        assert!(rel <= 1e-3, "k={k} x={x:?} rel={rel}");
    }
}

#[test]
fn convolution_route_is_converged() {
    let p = Params::default();
    let x = [-2.0, 1.0, 0.5];
    let rule = ConvRule::default();
    let (a, _) = conv_slice(2, x, &p, &rule, false).unwrap();
    let (b, _) = conv_slice(2, x, &p, &rule.refined(), false).unwrap();
    let mut d: f64 = 0.0;
    let mut s: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            d = d.max((a[i][j] - b[i][j]).norm());
            s = s.max(b[i][j].norm());
        }
    }
    assert!(d < 1e-4 * s, "refinement change {}", d / s);
}

#[test]
fn convolution_gradient_matches_differences() {
    let p = Params::default();
    let x = [2.5, -1.0, 0.5];
    let rule = ConvRule::default();
    let (_, g) = conv_slice(1, x, &p, &rule, true).unwrap();
    let g = g.unwrap();
    let h = 1e-3;
    let scale = g.iter().flatten().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    for d in [0usize, 1] {
        let mut xp = x;
        let mut xm = x;
        xp[d] += h;
        xm[d] -= h;
        let (a, _) = conv_slice(1, xp, &p, &rule, false).unwrap();
        let (b, _) = conv_slice(1, xm, &p, &rule, false).unwrap();
        for j in 0..3 {
            for l in 0..3 {
                let fd = (a[j][l] - b[j][l]) / (2.0 * h);
                assert!((fd - g[d][j][l]).norm() < 1e-4 * scale, "d={d} j={j} l={l}");
            }
        }
    }
}

#[test]
fn grid_route_matches_point_route() {
    let p = Params {
        n_spatial: 32,
        n_temporal: 2,
        box_half_length: 8.0,
        ..Params::default()
    };
    let grid = spectral_slice_grid(1, &p, None);
    let lat = tpns_core::build_lattice(&p).unwrap();
    let q = lat.flat(16 + 6, 16 + 2, 16);
    let x = lat.point(q);
    assert_eq!(x, [3.0, 1.0, 0.0]);
    let conv = mode_velocity_kernel(1, x, &p, Route::Convolution).unwrap();
    let mut d: f64 = 0.0;
    for (e, &(j, l)) in tpns_kernels::spectral::SYM.iter().enumerate() {
        d = d.max((grid[q][e] - conv.entries[j][l]).norm());
    }
    assert!(d < 3e-2 * conv.max_abs(), "grid route rel {}", d / conv.max_abs());
    let _ = SpectralLattice::for_grid(&p);
}

#[test]
fn timeslice_properties_and_plancherel() {
    let p = Params {
        n_temporal: 2,
        ..Params::default()
    };
    let x = [2.0, -1.0, 1.0];
    let direct = tp_kernel_timeslice(0.7, x, &p, 2).unwrap();
    assert!(direct.imag_residue <= 1e-10);
    let mut modes = Vec::new();
    for k in 1..=2i64 {
        for kk in [k, -k] {
            let t = mode_velocity_kernel(kk, x, &p, Route::Convolution).unwrap();
            modes.push((kk, t.entries));
        }
    }
    let again = synthesize(0.7, &p, &modes);
    assert_eq!(again.value, direct.value);
    let later = synthesize(0.7 + p.period, &p, &modes);
    assert!(rel_diff(&later.value, &again.value) < 1e-12);
    // Time average and mean square over equispaced samples.
    let m = 9;
    let mut avg = [[0.0; 3]; 3];
    let mut ms = 0.0;
    for i in 0..m {
        let t = p.period * i as f64 / m as f64;
        let s = synthesize(t, &p, &modes);
        for a in 0..3 {
            for b in 0..3 {
                avg[a][b] += s.value[a][b] / m as f64;
                ms += s.value[a][b] * s.value[a][b] / m as f64;
            }
        }
    }
    let scale = direct.value.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max);
    assert!(avg.iter().flatten().all(|v| v.abs() < 1e-12 * scale));
    let pos = positive_modes(x, &p, 2, 0).unwrap();
    let l2t = l2t_from_modes(&pos, 0);
    assert!((ms.sqrt() - l2t).abs() < 1e-8 * l2t);
    assert!(tp_kernel_timeslice(0.0, [0.0; 3], &p, 2).is_err());
    assert!(tp_kernel_timeslice(0.0, x, &p, 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sqrt_nnr_squares_back(re in -1e3f64..1e3, im in -1e3f64..1e3) {
        let z = c(re, im);
        let w = sqrt_nnr(z);
        prop_assert!(w.re >= 0.0);
        prop_assert!((w * w - z).norm() <= 1e-14 * z.norm().max(1e-300) * 4.0);
    }

    #[test]
    fn scalar_kernel_bound(k in 1i64..9, r in 0.5f64..20.0, th in 0.0f64..PI, ph in 0.0f64..6.28, lam in -3.0f64..3.0) {
        let x = [r * th.cos(), r * th.sin() * ph.cos(), r * th.sin() * ph.sin()];
        let v = mode_scalar_value(k, x, lam, 2.0 * PI).unwrap();
        prop_assert!(v.norm() <= 1.0 / (4.0 * PI * r));
    }

    #[test]
    fn gamma_matches_differences(r in 0.5f64..20.0, th in 0.1f64..3.0, ph in 0.0f64..6.28) {
        let x = [r * th.cos(), r * th.sin() * ph.cos(), r * th.sin() * ph.sin()];
        let g = oseen_gamma_values(x, 1.0).unwrap();
        prop_assert!(rel_diff(&g, &gamma_fd(x, 1.0)) < 1e-5);
    }
}
