use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use tpns_core::{build_lattice, divergence_max, transform, Direction, Params, Representation, TPField};
use tpns_multipliers::*;

fn small() -> Params {
    Params {
        n_spatial: 8,
        n_temporal: 2,
        box_half_length: PI,
        lambda: 1.3,
        ..Params::default()
    }
}

fn random_spectral(params: &Params, comps: usize, seed: u64) -> TPField {
    let mut f = TPField::zeros(params, comps, Representation::Spectral).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in f.data.iter_mut() {
        *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    f
}

fn max_diff(a: &TPField, b: &TPField) -> f64 {
    a.data.iter().zip(&b.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn single_mode(params: &Params, k: i64, m: [i64; 3], v: [Complex64; 3]) -> (TPField, usize, usize) {
    let lat = build_lattice(params).unwrap();
    let mut f = TPField::zeros(params, 3, Representation::Spectral).unwrap();
    let p = lat.flat(lat.spatial_index(m[0]), lat.spatial_index(m[1]), lat.spatial_index(m[2]));
    let it = lat.temporal_index(k);
    for c in 0..3 {
        let i = f.index(it, p, c);
        f.data[i] = v[c];
    }
    (f, it, p)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn projections_are_complementary_and_idempotent() {
    let p = small();
    let f = random_spectral(&p, 3, 1);
    let s = project(&f, Projection::Steady).unwrap();
    let o = project(&f, Projection::Oscillatory).unwrap();
    for i in 0..f.data.len() {
        assert_eq!(s.data[i] + o.data[i], f.data[i]);
    }
    assert_eq!(project(&s, Projection::Steady).unwrap(), s);
    assert_eq!(project(&o, Projection::Oscillatory).unwrap(), o);
}

#[test]
fn steady_projection_of_cosine_vanishes() {
    let p = small();
    let w = p.omega();
    let phys = TPField::from_fn(&p, 1, |t, x, out| {
        out[0] = c((w * t).cos() * (-(x[0] * x[0] + x[1] * x[1])).exp(), 0.0);
    })
    .unwrap();
    let spec = transform(&phys, Direction::ToSpectral).unwrap();
    let s = project(&spec, Projection::Steady).unwrap();
    assert!(s.max_abs() < 1e-16 * spec.max_abs() * 10.0);
}

#[test]
fn helmholtz_symbol_examples() {
    let m = helmholtz_symbol([1.0, 0.0, 0.0]);
    let apply = |m: [[f64; 3]; 3], v: [f64; 3]| -> [f64; 3] {
        [0, 1, 2].map(|j| m[j][0] * v[0] + m[j][1] * v[1] + m[j][2] * v[2])
    };
    assert_eq!(apply(m, [1.0, 0.0, 0.0]), [0.0; 3]);
    assert_eq!(apply(m, [0.0, 1.0, 0.0]), [0.0, 1.0, 0.0]);
    let s = 0.5f64.sqrt();
    let r = apply(helmholtz_symbol([s, s, 0.0]), [1.0, 0.0, 0.0]);
    assert!((r[0] - 0.5).abs() < 1e-15 && (r[1] + 0.5).abs() < 1e-15 && r[2] == 0.0);
    assert_eq!(helmholtz_symbol([0.0; 3]), [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
}

#[test]
fn helmholtz_symbol_is_an_orthogonal_projector_on_the_lattice() {
    let p = small();
    let lat = build_lattice(&p).unwrap();
    for q in 1..lat.n_space() {
        let m = helmholtz_symbol(lat.deriv_xi(q));
        for j in 0..3 {
            for l in 0..3 {
                assert_eq!(m[j][l], m[l][j]);
                let sq: f64 = (0..3).map(|h| m[j][h] * m[h][l]).sum();
                assert!((sq - m[j][l]).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn helmholtz_output_is_solenoidal_and_keeps_the_mean() {
    let p = small();
    let f = random_spectral(&p, 3, 7);
    let h = helmholtz(&f).unwrap();
    assert!(divergence_max(&h).unwrap() <= 1e-12 * h.max_abs());
    let hh = helmholtz(&h).unwrap();
    assert!(max_diff(&hh, &h) <= 1e-13 * h.max_abs());
    let lat = build_lattice(&p).unwrap();
    for it in 0..lat.n_time() {
        for comp in 0..3 {
            let i = f.index(it, 0, comp);
            assert_eq!(h.data[i], f.data[i]);
        }
    }
}

#[test]
fn osc_inverse_single_mode_and_steady_annihilation() {
    let p = small();
    let (f, it, q) = single_mode(&p, 1, [1, -2, 0], [c(1.0, 0.5), c(0.0, 0.0), c(-2.0, 0.0)]);
    let w = apply_osc_inverse(&f).unwrap();
    // ξ₀ = (1, -2, 0) on the unit-spacing spectral lattice.
    let d = c(5.0, 2.0 * PI / p.period - p.lambda * 1.0);
    for comp in 0..3 {
        let i = f.index(it, q, comp);
        assert!((w.data[i] - f.data[i] / d).norm() < 1e-16);
    }
    let (g, _, _) = single_mode(&p, 0, [1, 1, 1], [c(1.0, 0.0); 3]);
    assert_eq!(apply_osc_inverse(&g).unwrap().max_abs(), 0.0);
    let r = random_spectral(&p, 3, 3);
    let s = project(&r, Projection::Steady).unwrap();
    assert_eq!(apply_osc_inverse(&s).unwrap().max_abs(), 0.0);
}

#[test]
fn osc_inverse_satisfies_the_symbol_identity() {
    let p = small();
    let m = Multipliers::new(&p).unwrap();
    let f = random_spectral(&p, 3, 11);
    let w = m.apply_osc_inverse(&f).unwrap();
    let back = m.oseen_operator(&w).unwrap();
    let osc = m.project(&f, Projection::Oscillatory).unwrap();
    assert!(max_diff(&back, &osc) <= 1e-15 * osc.max_abs() * 4.0);
}

#[test]
fn denominator_minimum_is_positive_and_exact_at_zero_frequency() {
    let p = small();
    let g = SymbolGrid::new(SymbolKind::OscInverse, &p).unwrap();
    let min = g.min_denominator().unwrap();
    assert!(min > 0.0);
    for k in [-2i64, -1, 1, 2] {
        let d = g.modal_value(k, 0).unwrap();
        assert_eq!(d.norm(), 2.0 * PI * k.unsigned_abs() as f64 / p.period);
    }
    assert!(min <= 2.0 * PI / p.period);
}

#[test]
fn steady_inverse_single_mode_and_zero_frequency() {
    let p = small();
    // ξ₀ = (0, 1, 0), solenoidal amplitude along e₁.
    let (g, it, q) = single_mode(&p, 0, [0, 1, 0], [c(2.0, -1.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let v = apply_steady_oseen_inverse(&g).unwrap();
    let i = g.index(it, q, 0);
    assert!((v.data[i] - g.data[i] / c(1.0, 0.0)).norm() < 1e-16);
    let (g1, it1, q1) = single_mode(&p, 0, [2, 0, 1], [c(0.0, 0.0), c(1.0, 1.0), c(0.0, 0.0)]);
    let v1 = apply_steady_oseen_inverse(&g1).unwrap();
    let i1 = g1.index(it1, q1, 1);
    let want = g1.data[i1] / c(5.0, -p.lambda * 2.0);
    assert!((v1.data[i1] - want).norm() < 1e-16);
    let (z, _, _) = single_mode(&p, 0, [0, 0, 0], [c(1.0, 0.0); 3]);
    assert_eq!(apply_steady_oseen_inverse(&z).unwrap().max_abs(), 0.0);
}

#[test]
fn steady_inverse_with_pressure_reproduces_the_forcing() {
    let p = small();
    let m = Multipliers::new(&p).unwrap();
    let g = m.project(&random_spectral(&p, 3, 5), Projection::Steady).unwrap();
    let v = m.apply_steady_oseen_inverse(&g).unwrap();
    let pr = m.recover_pressure(&g).unwrap();
    let grad = m.gradient(&pr).unwrap();
    let lhs = m.oseen_operator(&v).unwrap();
    let hg = m.helmholtz(&g).unwrap();
    let lat = build_lattice(&p).unwrap();
    let it0 = lat.temporal_index(0);
    let scale = g.max_abs();
    for q in 1..lat.n_space() {
        for comp in 0..3 {
            let i = g.index(it0, q, comp);
            assert!((lhs.data[i] - hg.data[i]).norm() <= 1e-12 * scale);
            let xd = lat.deriv_xi(q);
            if xd != [0.0; 3] {
                assert!((lhs.data[i] + grad.data[i] - g.data[i]).norm() <= 1e-12 * scale);
            }
        }
    }
}

#[test]
fn pressure_examples() {
    let p = small();
    let (g, it, q) = single_mode(&p, 0, [1, 0, 0], [c(0.7, 0.2), c(-1.0, 0.0), c(0.0, 0.0)]);
    let pr = recover_pressure(&g).unwrap();
    assert!((pr.data[it * 512 + q] - c(0.0, -1.0) * c(0.7, 0.2)).norm() < 1e-16);
    // Solenoidal input gives zero pressure.
    let sol = helmholtz(&random_spectral(&p, 3, 9)).unwrap();
    assert!(recover_pressure(&sol).unwrap().max_abs() <= 1e-15 * sol.max_abs() * 10.0);
}

#[test]
fn pressure_of_a_gradient_recovers_the_potential() {
    let p = small();
    let m = Multipliers::new(&p).unwrap();
    let mut phi = random_spectral(&p, 1, 13);
    let lat = build_lattice(&p).unwrap();
    let ns = lat.n_space();
    for (i, v) in phi.data.iter_mut().enumerate() {
        if lat.deriv_xi(i % ns) == [0.0; 3] {
            *v = Complex64::default();
        }
    }
    let g = m.gradient(&phi).unwrap();
    let pr = m.recover_pressure(&g).unwrap();
    assert!(max_diff(&pr, &phi) <= 1e-14 * phi.max_abs());
    let back = m.gradient(&pr).unwrap();
    assert!(max_diff(&back, &g) <= 1e-12 * g.max_abs());
}

#[test]
fn pressure_gradient_is_the_complement_of_helmholtz() {
    let p = small();
    let m = Multipliers::new(&p).unwrap();
    let g = random_spectral(&p, 3, 21);
    let grad = m.gradient(&m.recover_pressure(&g).unwrap()).unwrap();
    let h = m.helmholtz(&g).unwrap();
    let lat = build_lattice(&p).unwrap();
    let ns = lat.n_space();
    for i in 0..g.data.len() / 3 {
        if lat.deriv_xi(i % ns) == [0.0; 3] {
            continue;
        }
        for comp in 0..3 {
            let j = 3 * i + comp;
            assert!((grad.data[j] - (g.data[j] - h.data[j])).norm() <= 1e-12 * g.max_abs());
        }
    }
}

#[test]
fn wrong_representation_is_rejected() {
    let p = small();
    let f = TPField::zeros(&p, 3, Representation::Physical).unwrap();
    assert!(helmholtz(&f).is_err());
    assert!(apply_osc_inverse(&f).is_err());
    let s = TPField::zeros(&p, 1, Representation::Spectral).unwrap();
    assert!(recover_pressure(&s).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn symbols_commute_with_projections(seed in any::<u64>(), steady in any::<bool>()) {
        let p = small();
        let m = Multipliers::new(&p).unwrap();
        let f = random_spectral(&p, 3, seed);
        let which = if steady { Projection::Steady } else { Projection::Oscillatory };
        let a = m.helmholtz(&m.project(&f, which).unwrap()).unwrap();
        let b = m.project(&m.helmholtz(&f).unwrap(), which).unwrap();
        prop_assert!(max_diff(&a, &b) <= 1e-13 * f.max_abs());
        let a = m.apply_osc_inverse(&m.project(&f, which).unwrap()).unwrap();
        let b = m.project(&m.apply_osc_inverse(&f).unwrap(), which).unwrap();
        prop_assert!(max_diff(&a, &b) <= 1e-13 * f.max_abs());
    }

    #[test]
    fn helmholtz_is_idempotent(seed in any::<u64>()) {
        let p = small();
        let m = Multipliers::new(&p).unwrap();
        let h = m.helmholtz(&random_spectral(&p, 3, seed)).unwrap();
        let hh = m.helmholtz(&h).unwrap();
        prop_assert!(max_diff(&hh, &h) <= 1e-13 * h.max_abs());
        prop_assert!(divergence_max(&h).unwrap() <= 1e-12 * h.max_abs());
    }
}
