mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use sinc_ivp::sinc_kernel::{indef_basis, sigma, sinc_basis, sine_integral};
use sinc_ivp::transform::step_size;
use sinc_ivp::{build_grid, Interval, RegularityParams, TransformKind};

fn interval() -> impl Strategy<Value = Interval> {
    (-5.0f64..5.0, 0.1f64..10.0).prop_map(|(a, w)| Interval::new(a, a + w).unwrap())
}

fn kind() -> impl Strategy<Value = TransformKind> {
    prop_oneof![Just(TransformKind::Se), Just(TransformKind::De)]
}

proptest! {
    #[test]
    fn si_is_odd_and_bounded(x in -500.0f64..500.0) {
        let s = sine_integral(x);
        prop_assert_eq!(sine_integral(-x), -s);
        prop_assert!(s.abs() <= 1.8519370519824662 + 1e-15);
    }

    #[test]
    fn si_matches_quadrature(x in 0.0f64..40.0) {
        let got = sine_integral(x);
        let want = common::si_quadrature(x);
        prop_assert!((got - want).abs() <= 1e-13, "Si({}) = {} vs {}", x, got, want);
    }

    #[test]
    fn sigma_symmetry(k in -5000i64..5000) {
        prop_assert!((sigma(k) + sigma(-k) - 1.0).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn indef_basis_is_integral_of_sinc(j in -10i64..10, h in 0.05f64..2.0, u in -12.0f64..12.0) {
        let x = u * h;
        let lower = (j as f64 - 40.0) * h;
        let tail = indef_basis(j, h, lower);
        let panels = 400;
        let integral = common::integrate(|s| sinc_basis(j, h, s), lower, x, panels);
        let got = indef_basis(j, h, x);
        prop_assert!((got - tail - integral).abs() <= 1e-12 * h.max(1.0));
    }

    #[test]
    fn round_trip(kind in kind(), iv in interval(), s in -1.0f64..1.0) {
        let limit = match kind { TransformKind::Se => 30.0, TransformKind::De => 4.0 };
        let x = s * limit;
        let p = kind.forward(x, &iv).unwrap();
        prop_assert!((kind.inverse_point(&p) - x).abs() <= 1e-10);
    }

    #[test]
    fn inverse_from_t_on_moderate_range(kind in kind(), iv in interval(), x in -2.0f64..2.0) {
        let t = kind.forward(x, &iv).unwrap().t;
        prop_assume!(t > iv.a && t < iv.b);
        let back = kind.inverse(t, &iv).unwrap();
        prop_assert!((back - x).abs() <= 1e-8 * (1.0 + x.abs()), "{} vs {}", back, x);
    }

    #[test]
    fn derivative_matches_central_difference(kind in kind(), iv in interval(), x in -3.0f64..3.0) {
        let exact = kind.derivative(x, &iv);
        let fd = common::central_difference(|y| kind.forward(y, &iv).unwrap().t, x, 1e-6);
        prop_assert!((exact - fd).abs() <= 1e-6 * (1.0 + exact.abs()));
    }

    #[test]
    fn offsets_add_to_width(kind in kind(), iv in interval(), x in -3.0f64..3.0) {
        let p = kind.forward(x, &iv).unwrap();
        prop_assert!(((p.off_a + p.off_b) - iv.width()).abs() <= 4.0 * f64::EPSILON * iv.width());
        prop_assert!(p.off_a > 0.0 && p.off_b > 0.0);
    }
}

#[test]
fn offsets_positive_on_every_grid() {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let params = RegularityParams::new(0.5, 1.0).unwrap();
    for kind in [TransformKind::Se, TransformKind::De] {
        for n in 1..=200 {
            let grid = build_grid(kind, iv, params, n).unwrap();
            assert!(grid.nodes.iter().all(|p| p.off_a > 0.0 && p.off_b > 0.0));
            assert!(grid.dweights.iter().all(|&w| w > 0.0));
            assert_eq!(grid.nodes.len(), 2 * n + 1);
        }
    }
}

#[test]
fn nodes_ordered() {
    let iv = Interval::new(-1.0, 3.0).unwrap();
    let params = RegularityParams::new(1.0, 1.0).unwrap();
    for kind in [TransformKind::Se, TransformKind::De] {
        for n in [1, 4, 16, 64, 200] {
            let grid = build_grid(kind, iv, params, n).unwrap();
            // The small offset on each half resolves the nodes until it
            // reaches the underflow floor on the outermost DE nodes.
            let strict = n <= 64;
            for (k, w) in grid.nodes.windows(2).enumerate() {
                assert!(w[0].t <= w[1].t);
                assert!(w[0].off_a <= w[1].off_a && w[0].off_b >= w[1].off_b);
                if strict && k < n {
                    assert!(w[0].off_a < w[1].off_a);
                } else if strict {
                    assert!(w[0].off_b > w[1].off_b);
                }
            }
        }
        // Strict in t while every node is representable away from the ends.
        let grid = build_grid(kind, iv, params, 8).unwrap();
        assert!(grid.nodes.windows(2).all(|w| w[0].t < w[1].t));
    }
}

#[test]
fn step_size_ratios() {
    let params = RegularityParams::new(1.0, 1.0).unwrap();
    let se: Vec<f64> = [16, 64, 256]
        .iter()
        .map(|&n| step_size(TransformKind::Se, &params, n).unwrap())
        .collect();
    assert!((se[0] / se[1] - 2.0).abs() < 1e-14);
    assert!((se[1] / se[2] - 2.0).abs() < 1e-14);

    let de = |n: usize| step_size(TransformKind::De, &params, n).unwrap();
    for (n1, n2) in [(16usize, 64usize), (64, 256)] {
        let expected = ((2.0 * n1 as f64).ln() / n1 as f64) / ((2.0 * n2 as f64).ln() / n2 as f64);
        assert!((de(n1) / de(n2) - expected).abs() < 1e-12);
    }
}

#[test]
fn sinc_sum_bound() {
    let params = RegularityParams::new(1.0, 1.0).unwrap();
    for n in [4usize, 16, 64] {
        let h = step_size(TransformKind::Se, &params, n).unwrap();
        let bound = 2.0 / PI * (3.0 + (n as f64).ln());
        for s in 0..=2000 {
            let xi = n as f64 * h * (-1.0 + s as f64 / 1000.0);
            let sum: f64 = (-(n as i64)..=(n as i64))
                .map(|j| sinc_basis(j, h, xi).abs())
                .sum();
            assert!(sum <= bound, "N={n} xi={xi}: {sum} > {bound}");
        }
    }
}
