//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

/// Composite 20-point Gauss–Legendre rule with `panels` equal panels.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(20);
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let panel: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * f(mid + 0.5 * width * x))
            .sum();
        total += 0.5 * width * panel;
    }
    total
}

/// `Si(x)` by quadrature of `sin(t)/t`.
pub fn si_quadrature(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let panels = ((x.abs() / 0.25).ceil() as usize).max(1);
    integrate(|t| t.sin() / t, 0.0, x, panels)
}

/// Central difference of a scalar function.
pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, step: f64) -> f64 {
    (f(x + step) - f(x - step)) / (2.0 * step)
}

/// Relative maximum-norm distance `max|u − v| / (1 + max|v|)`.
pub fn rel_dist(u: &[f64], v: &[f64]) -> f64 {
    let scale = 1.0 + v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    u.iter()
        .zip(v)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
        / scale
}
