use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use tpns_core::{build_lattice, transform, Direction, Params, Representation, TPField};
use tpns_multipliers::{Multipliers, Projection};
use tpns_solver::*;

fn unit_box(n: usize, nt: usize) -> Params {
    Params {
        n_spatial: n,
        n_temporal: nt,
        box_half_length: PI,
        ..Params::default()
    }
}

fn solver_box() -> Params {
    Params {
        n_spatial: 16,
        n_temporal: 2,
        box_half_length: 8.0,
        ..Params::default()
    }
}

fn forcing(amp: f64) -> ForcingSpec {
    ForcingSpec {
        center: [0.0; 3],
        radius: 2.5,
        amplitude: [amp, 0.3 * amp, 0.0],
        time_profile: TimeProfile::Mixed {
            weights: vec![1.0, 0.8],
        },
    }
}

fn max_diff(a: &TPField, b: &TPField) -> f64 {
    a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn forcing_is_linear_in_amplitude_and_compactly_supported() {
    let p = solver_box();
    let a = sample_forcing(&forcing(0.5), &p).unwrap();
    let b = sample_forcing(&forcing(1.0), &p).unwrap();
    for (x, y) in a.data.iter().zip(&b.data) {
        assert_eq!(*x * 2.0, *y);
    }
    let lat = build_lattice(&p).unwrap();
    let ns = lat.n_space();
    for (i, v) in b.data.iter().enumerate() {
        let x = lat.point((i / 3) % ns);
        if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt() >= 2.5 {
            assert_eq!(*v, Complex64::default());
        }
    }
    assert!(b.max_abs() > 0.0);
}

#[test]
fn cosine_forcing_has_no_steady_part() {
    let p = solver_box();
    let spec = ForcingSpec {
        time_profile: TimeProfile::Cosine { k0: 1 },
        ..forcing(1.0)
    };
    let f = transform(&sample_forcing(&spec, &p).unwrap(), Direction::ToSpectral).unwrap();
    let s = Multipliers::new(&p).unwrap().project(&f, Projection::Steady).unwrap();
    assert!(s.max_abs() <= 1e-15 * f.max_abs());
}

#[test]
fn forcing_validation() {
    let p = solver_box();
    let wide = ForcingSpec {
        radius: 3.5,
        center: [1.0, 0.0, 0.0],
        ..forcing(1.0)
    };
    assert!(matches!(sample_forcing(&wide, &p), Err(SolverError::SupportTooLarge { .. })));
    let high = ForcingSpec {
        time_profile: TimeProfile::Cosine { k0: 3 },
        ..forcing(1.0)
    };
    assert!(sample_forcing(&high, &p).is_err());
    let neg = ForcingSpec {
        radius: -1.0,
        ..forcing(1.0)
    };
    assert!(sample_forcing(&neg, &p).is_err());
}

#[test]
fn forcing_json_shape() {
    let s: ForcingSpec = serde_json::from_str(
        r#"{"center":[0,0,0],"radius":2,"amplitude":[1,0,0],"time_profile":{"kind":"cosine","k0":1}}"#,
    )
    .unwrap();
    assert_eq!(s.time_profile, TimeProfile::Cosine { k0: 1 });
    let m: TimeProfile = serde_json::from_str(r#"{"kind":"mixed","weights":[1.0,0.5]}"#).unwrap();
    assert_eq!(m.mean(), 1.0);
    let c: TimeProfile = serde_json::from_str(r#"{"kind":"constant"}"#).unwrap();
    assert_eq!(c.value(1.234, 1.0), 1.0);
    assert!(serde_json::from_str::<ForcingSpec>(r#"{"center":[0,0,0],"radius":2}"#).is_err());
}

#[test]
fn advect_of_zero_is_zero() {
    let p = unit_box(8, 1);
    let u = TPField::zeros(&p, 3, Representation::Spectral).unwrap();
    assert_eq!(advect(&u).unwrap().max_abs(), 0.0);
}

#[test]
fn advect_matches_hand_product() {
    // u = (a cos y, b cos x, 0): u·∇u = (-ab cos x sin y, -ab sin x cos y, 0).
    let p = unit_box(8, 1);
    let (a, b) = (0.7, -1.3);
    let u = TPField::from_fn(&p, 3, |_, x, out| {
        out[0] = Complex64::new(a * x[1].cos(), 0.0);
        out[1] = Complex64::new(b * x[0].cos(), 0.0);
        out[2] = Complex64::default();
    })
    .unwrap();
    let uh = transform(&u, Direction::ToSpectral).unwrap();
    for form in [advect(&uh).unwrap(), advect_convective(&uh).unwrap()] {
        let phys = transform(&form, Direction::ToPhysical).unwrap();
        let lat = build_lattice(&p).unwrap();
        let ns = lat.n_space();
        for (i, v) in phys.data.chunks(3).enumerate() {
            let x = lat.point(i % ns);
            let want = [-a * b * x[0].cos() * x[1].sin(), -a * b * x[0].sin() * x[1].cos(), 0.0];
            for c in 0..3 {
                assert!((v[c] - Complex64::new(want[c], 0.0)).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn advect_rejects_non_solenoidal_input() {
    let p = unit_box(8, 1);
    let u = TPField::from_fn(&p, 3, |_, x, out| {
        out[0] = Complex64::new(x[0].sin(), 0.0);
        out[1] = Complex64::default();
        out[2] = Complex64::default();
    })
    .unwrap();
    let uh = transform(&u, Direction::ToSpectral).unwrap();
    assert!(matches!(advect(&uh), Err(SolverError::NotSolenoidal { .. })));
}

/// Copies every coefficient of `small` into the matching (k, m) slot of a larger lattice.
fn embed(small: &TPField, big_params: &Params) -> TPField {
    let ls = small.lattice();
    let lb = build_lattice(big_params).unwrap();
    let mut out = TPField::zeros(big_params, small.components, Representation::Spectral).unwrap();
    for it in 0..ls.n_time() {
        for p in 0..ls.n_space() {
            let [a, b, c] = ls.unflat(p);
            if [a, b, c].iter().any(|&i| ls.is_nyquist(i)) {
                continue;
            }
            let q = lb.flat(
                lb.spatial_index(ls.spatial_mode(a)),
                lb.spatial_index(ls.spatial_mode(b)),
                lb.spatial_index(ls.spatial_mode(c)),
            );
            let jt = lb.temporal_index(ls.temporal_mode(it));
            for comp in 0..small.components {
                let v = small.data[small.index(it, p, comp)];
                let j = out.index(jt, q, comp);
                out.data[j] = v;
            }
        }
    }
    out
}

#[test]
fn dealiased_product_matches_double_resolution_reference() {
    let p = unit_box(8, 2);
    let u = manufactured_field(&p, 5, 2, 3).unwrap();
    let mult = Multipliers::new(&p).unwrap();
    let steady = mult
        .helmholtz(&mult.project(&manufactured_field(&p, 6, 1, 3).unwrap(), Projection::Oscillatory).unwrap())
        .unwrap();
    let mut u = u;
    u.data.iter_mut().zip(&steady.data).for_each(|(a, b)| *a += b);
    let n = advect(&u).unwrap();

    let mut truncated = u.clone();
    Dealias::new(&u.lattice()).truncate(&mut truncated);
    let big = Params {
        n_spatial: 16,
        n_temporal: 4,
        dealias: false,
        ..p.clone()
    };
    let reference = advect(&embed(&truncated, &big)).unwrap();
    let lat = p.clone();
    let ls = build_lattice(&lat).unwrap();
    let lb = build_lattice(&big).unwrap();
    let keep = Dealias::new(&ls);
    let scale = n.max_abs();
    assert!(scale > 0.0);
    for it in 0..ls.n_time() {
        for q in 0..ls.n_space() {
            let [a, b, c] = ls.unflat(q);
            for comp in 0..3 {
                let got = n.data[n.index(it, q, comp)];
                if !keep.keeps(&ls, it, q) {
                    assert_eq!(got, Complex64::default());
                    continue;
                }
                let qb = lb.flat(
                    lb.spatial_index(ls.spatial_mode(a)),
                    lb.spatial_index(ls.spatial_mode(b)),
                    lb.spatial_index(ls.spatial_mode(c)),
                );
                let jt = lb.temporal_index(ls.temporal_mode(it));
                let want = reference.data[reference.index(jt, qb, comp)];
                assert!((got - want).norm() <= 1e-10 * scale);
            }
        }
    }
}

#[test]
fn manufactured_roundtrips() {
    let p = unit_box(8, 2);
    // Single oscillatory solenoidal mode.
    let lat = build_lattice(&p).unwrap();
    let mut w = TPField::zeros(&p, 3, Representation::Spectral).unwrap();
    let q = lat.flat(lat.spatial_index(1), 0, 0);
    let qc = lat.conjugate_spatial(q);
    let (i1, im1) = (lat.temporal_index(1), lat.temporal_index(-1));
    let v = Complex64::new(0.3, -0.4);
    let idx = w.index(i1, q, 1);
    w.data[idx] = v;
    let idx = w.index(im1, qc, 1);
    w.data[idx] = v.conj();
    assert!(manufactured_roundtrip(&w, &p).unwrap() <= 1e-12);
    let r = manufactured_field(&p, 42, 2, 3).unwrap();
    assert!(r.hermitian_defect() < 1e-15);
    assert!(manufactured_roundtrip(&r, &p).unwrap() <= 1e-9);
    let mut s = r.clone();
    let idx = s.index(lat.temporal_index(0), q, 1);
    s.data[idx] = Complex64::new(1.0, 0.0);
    assert!(matches!(manufactured_roundtrip(&s, &p), Err(SolverError::SteadyContent(_))));
}

#[test]
fn picard_with_zero_forcing() {
    let p = solver_box();
    let f = TPField::zeros(&p, 3, Representation::Physical).unwrap();
    let s = picard_solve(&f, &p).unwrap();
    assert_eq!(s.iterations, 1);
    assert!(s.converged);
    assert_eq!(s.u.max_abs(), 0.0);
    assert_eq!(s.p.max_abs(), 0.0);
}

#[test]
fn picard_converges_and_first_iterate_is_the_linear_solve() {
    let p = solver_box();
    let f = sample_forcing(&forcing(1.0), &p).unwrap();
    let f_hat = spectral_forcing(&f, &p).unwrap();
    let oracle = linear_oracle(&f_hat).unwrap();
    let mut first = None;
    let s = picard_solve_observed(&f, &p, |m, u| {
        if m == 1 {
            first = Some(u.clone());
        }
    })
    .unwrap();
    assert!(s.converged, "history {:?}", s.residual_history);
    assert!(s.iterations <= p.max_iter);
    assert!(s.final_residual() <= 1e-8);
    assert!(s.residual_history.windows(2).all(|w| w[1] < w[0]));
    assert!(s.relative_divergence().unwrap() <= 1e-10);
    let first = first.unwrap();
    assert!(max_diff(&first, &oracle) <= 1e-12 * oracle.max_abs());

    // Term-by-term residual with the convective form of the nonlinearity.
    let mult = Multipliers::new(&p).unwrap();
    let conv = advect_convective(&s.u).unwrap();
    let res = spectral_residual(&mult, &s.u, &s.p, &conv, &f_hat).unwrap();
    assert!(res <= 1e-8 * f_hat.max_abs());

    // Steady and oscillatory parts each solve their own equation.
    let n = advect(&s.u).unwrap();
    let g = {
        let mut g = f_hat.clone();
        g.data.iter_mut().zip(&n.data).for_each(|(a, b)| *a -= b);
        g
    };
    for which in [Projection::Steady, Projection::Oscillatory] {
        let part = mult.project(&s.u, which).unwrap();
        let rhs = mult.project(&g, which).unwrap();
        let direct = linear_solve(&mult, &rhs).unwrap();
        assert!(max_diff(&part, &direct) <= 1e-8 * s.u.max_abs());
    }
}

#[test]
fn nonlinear_correction_scales_quadratically() {
    let p = solver_box();
    let mut corr = Vec::new();
    for amp in [1.0, 0.5] {
        let f = sample_forcing(&forcing(amp), &p).unwrap();
        let lin = linear_oracle(&spectral_forcing(&f, &p).unwrap()).unwrap();
        let s = picard_solve(&f, &p).unwrap();
        assert!(s.converged);
        corr.push(max_diff(&s.u, &lin));
    }
    let ratio = corr[0] / corr[1];
    assert!((2.0..=8.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn picard_rejects_mismatched_params() {
    let p = solver_box();
    let f = sample_forcing(&forcing(1.0), &p).unwrap();
    let q = Params { lambda: 2.0, ..p };
    assert!(picard_solve(&f, &q).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn convective_and_divergence_forms_agree(seed in any::<u64>()) {
        let p = unit_box(8, 2);
        let u = manufactured_field(&p, seed, 2, 3).unwrap();
        let a = advect(&u).unwrap();
        let b = advect_convective(&u).unwrap();
        prop_assert!(max_diff(&a, &b) <= 1e-8 * a.max_abs().max(1e-300));
    }

    #[test]
    fn roundtrip_holds_for_random_fields(seed in any::<u64>()) {
        let p = unit_box(8, 2);
        let w = manufactured_field(&p, seed, 2, 3).unwrap();
        prop_assert!(manufactured_roundtrip(&w, &p).unwrap() <= 1e-9);
    }
}
