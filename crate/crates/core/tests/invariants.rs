use num_complex::Complex64;
use proptest::prelude::*;
use smith_pml::io::{read_snapshot, write_snapshot, Snapshot};
use smith_pml::modes::{lambdas, lambdas_pml, reflection_model2};
use smith_pml::params::{sigma_profile, validate_flow, FlowUse, PmlConfig, SideSet};
use smith_pml::polymat::poly::{gcd, Poly};
use smith_pml::polymat::symbols::{g_hat, l_hat};
use smith_pml::solver::Field2;
use smith_pml::{FlowParams, FourierPoint};

fn flow() -> impl Strategy<Value = FlowParams> {
    (200.0..400.0f64, 0.05..0.85f64, -1.4..1.4f64, 0.5..2.0f64).prop_map(|(c, m, h, rho)| {
        FlowParams::new(m * c * h.cos(), m * c * h.sin(), rho, c).unwrap()
    })
}

/// Fourier points away from `k = 0`, `ω + kv̄ = 0` and the branch boundary.
fn point(f: FlowParams) -> impl Strategy<Value = FourierPoint> {
    (-200.0..200.0f64, 0.05..2.0f64, any::<bool>())
        .prop_map(|(w, k, neg)| FourierPoint::new(w, if neg { -k } else { k }))
        .prop_filter("near a degenerate point", move |pt| {
            let s = pt.shifted(&f).abs();
            s >= 1.0 && (s / (pt.k.abs() * f.beta_x().sqrt()) - 1.0).abs() > 0.05
        })
}

fn flow_and_point() -> impl Strategy<Value = (FlowParams, FourierPoint)> {
    flow().prop_flat_map(|f| (Just(f), point(f)))
}

/// Distance from `z` to the nearest entry of `set`.
fn nearest(z: Complex64, set: &[Complex64]) -> f64 {
    set.iter().map(|y| (z - y).norm()).fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exponents_are_roots((f, pt) in flow_and_point()) {
        let gl = &g_hat(&f, &pt) * &l_hat(&f, &pt);
        let ex = lambdas(&f, &pt).unwrap();
        for l in ex.as_array() {
            let scale: f64 = gl.coeffs().iter().enumerate().map(|(j, c)| c.norm() * l.norm().powi(j as i32)).sum();
            prop_assert!(gl.eval(l).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn reversing_frequency_conjugates_exponents((f, pt) in flow_and_point()) {
        let a = lambdas(&f, &pt).unwrap().as_array().map(|z| z.conj());
        let b = lambdas(&f, &FourierPoint::new(-pt.omega, -pt.k)).unwrap().as_array();
        for x in a {
            prop_assert!(nearest(x, &b) <= 1e-12 * x.norm().max(1.0));
        }
    }

    #[test]
    fn layer_exponents_tend_to_euler((f, pt) in flow_and_point()) {
        let ex = lambdas(&f, &pt).unwrap().as_array();
        let pm = lambdas_pml(&f, &pt, 1e-9).unwrap().as_array();
        for (x, y) in pm.iter().zip(ex) {
            prop_assert!((x - y).norm() <= 1e-6 * y.norm().max(1.0));
        }
    }

    #[test]
    fn second_model_is_reflectionless((f, pt) in flow_and_point(), sigma in 0.0..160.0f64) {
        let one = Complex64::new(1.0, 0.0);
        let r = reflection_model2(&f, &pt, sigma, one, one).unwrap();
        prop_assert!(r.alpha3.norm() < 1e-10);
    }

    #[test]
    fn gcd_recovers_common_root(a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64) {
        prop_assume!((a - b).abs() > 0.1 && (a - c).abs() > 0.1 && (b - c).abs() > 0.1);
        let z = |x: f64| Complex64::new(x, 0.5 * x);
        let p = Poly::from_roots(&[z(a), z(b)]);
        let q = Poly::from_roots(&[z(a), z(c)]);
        let g = gcd(&p, &q, 1e-9);
        prop_assert_eq!(g.degree(), Some(1));
        prop_assert!(g.eval(z(a)).norm() < 1e-9);
    }

    #[test]
    fn validated_flow_is_fixed_point(f in flow()) {
        let once = validate_flow(f, FlowUse::ModeAnalysis).unwrap();
        prop_assert_eq!(validate_flow(once, FlowUse::ModeAnalysis).unwrap(), once);
    }

    #[test]
    fn sigma_profile_is_monotone_and_bounded(n in 1usize..60, sigma in 0.0..500.0f64, t in 0.0..1.0f64, u in 0.0..1.0f64) {
        let cfg = PmlConfig::new(SideSet::all(), n, sigma, 0.024).unwrap();
        let (lo, hi) = if t < u { (t, u) } else { (u, t) };
        let a = sigma_profile(&cfg, lo * cfg.delta).unwrap();
        let b = sigma_profile(&cfg, hi * cfg.delta).unwrap();
        prop_assert!(a <= b);
        prop_assert!(b <= sigma / cfg.delta * (1.0 + 1e-12));
    }

    #[test]
    fn snapshot_round_trip(nx in 1usize..12, ny in 1usize..12, step in 0usize..100000, seed in any::<u64>()) {
        let data = Field2::from_fn(nx, ny, |i, j| ((seed as f64) * 1e-3 + i as f64 * 0.7 - j as f64 * 1.3).sin());
        let snap = Snapshot { field: "p".into(), step, dx: 0.024, dy: 0.012, data };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.snap");
        write_snapshot(&mut std::fs::File::create(&path).unwrap(), &snap).unwrap();
        let back = read_snapshot(std::fs::File::open(&path).unwrap()).unwrap();
        prop_assert_eq!(back, snap);
    }
}
