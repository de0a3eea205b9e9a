use std::f64::consts::{PI, SQRT_2};

use proptest::prelude::*;
use spherepack_core::lpbound::{solve_bound, verify_function, GridSpec, RadialFunctionRep};

/// `J_n(x) = (1/2π) ∫_0^{2π} cos(nτ − x sin τ) dτ`; the trapezoid rule is
/// spectrally accurate for this periodic integrand.
fn bessel_j(n: usize, x: f64) -> f64 {
    let m = 512;
    let h = 2.0 * PI / m as f64;
    (0..m).map(|i| (n as f64 * i as f64 * h - x * (i as f64 * h).sin()).cos()).sum::<f64>() / m as f64
}

/// Radial transform in even dimension `d`:
/// `f̂(s) = 2π s^{1−d/2} ∫_0^∞ f(t) J_{d/2−1}(2πst) t^{d/2} dt`, by Simpson on `[0, T]`.
fn hankel(f: &RadialFunctionRep, s: f64) -> f64 {
    let d = f.d;
    let nu = d / 2 - 1;
    let t_max = 9.0 * f.scale;
    let n = 6000;
    let h = t_max / n as f64;
    let g = |t: f64| f.eval(t) * bessel_j(nu, 2.0 * PI * s * t) * t.powi(d as i32 / 2);
    let mut acc = g(0.0) + g(t_max);
    for i in 1..n {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
    }
    2.0 * PI * s.powf(1.0 - d as f64 / 2.0) * acc * h / 3.0
}

fn rep() -> impl Strategy<Value = RadialFunctionRep> {
    (prop::sample::select(vec![2usize, 8]), prop::collection::vec(-1.0f64..1.0, 1..=7), 0.7f64..1.4)
        .prop_map(|(d, c, l)| RadialFunctionRep::with_scale(d, c, l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn eigenrelation_matches_quadrature(f in rep(), s in 0.05f64..1.5) {
        let scale: f64 = f.coefficients.iter().map(|c| c.abs()).sum::<f64>() * f.scale.powi(f.d as i32) * 60.0;
        let direct = hankel(&f, s);
        let closed = f.eval_fourier(s);
        prop_assert!((direct - closed).abs() <= 1e-6 * scale.max(1.0), "{direct} vs {closed}");
    }
}

#[test]
fn eigenrelation_for_single_basis_functions() {
    for d in [2usize, 8] {
        for k in 0..6 {
            let mut c = vec![0.0; k + 1];
            c[k] = 1.0;
            let f = RadialFunctionRep::new(d, c).unwrap();
            for s in [0.2, 0.5, 0.9, 1.3] {
                let (a, b) = (hankel(&f, s), f.eval_fourier(s));
                assert!((a - b).abs() < 1e-6, "d={d} k={k} s={s}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn doubling_the_radius_divides_the_bound_by_two_to_the_d() {
    for d in [2usize, 8] {
        let a = solve_bound(d, 1.0, 20, &GridSpec::default()).unwrap();
        let b = solve_bound(d, 2.0, 20, &GridSpec::default()).unwrap();
        let ratio = a.bound / b.bound / 2f64.powi(d as i32);
        assert!((ratio - 1.0).abs() < 0.01, "d={d}: {ratio}");
    }
}

#[test]
fn bounds_never_increase_with_degree() {
    let mut last = f64::INFINITY;
    for k in [10, 20, 30, 40] {
        let r = solve_bound(8, SQRT_2, k, &GridSpec::default()).unwrap();
        assert!(r.bound <= last * (1.0 + 1e-9), "K={k}: {} after {last}", r.bound);
        assert!(r.bound >= 0.999, "K={k}: {}", r.bound);
        last = r.bound;
    }
}

#[test]
fn a_gaussian_is_not_admissible() {
    let g = RadialFunctionRep::new(3, vec![1.0]).unwrap();
    let v = verify_function(&g, 1.0, 0.01).unwrap();
    assert!(v.max_neg_violation > 0.0);
    assert_eq!(v.max_pos_violation, 0.0);
}

#[test]
fn coarse_grids_are_rejected() {
    let grid = GridSpec { spacing: 0.2, ..GridSpec::default() };
    assert!(solve_bound(8, SQRT_2, 10, &grid).is_err());
    assert!(solve_bound(8, SQRT_2, 3, &GridSpec::default()).is_err());
}
