//! Scalar building blocks of the Sinc methods.
//!
//! * [`sinc_basis`]: the shifted Sinc function `S(j,h)(x)`.
//! * [`sine_integral`]: `Si(x) = ∫₀ˣ sin(t)/t dt`.
//! * [`indef_basis`]: the indefinite-integration basis
//!   `J(j,h)(x) = h·{1/2 + Si(π(x/h − j))/π}`.
//! * [`sigma`]: the weights `σ_k = 1/2 + Si(πk)/π` of the integration matrix.
//!
//! Every call to [`sine_integral`] bumps a thread-local counter so callers can
//! verify how many special-function evaluations an algorithm performs (see
//! [`si_call_count`]).

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

/// Below this magnitude `sin(u)/u` is evaluated by its Taylor polynomial.
const SINC_TAYLOR_LIMIT: f64 = 1e-4;

/// Maclaurin series is used for `|x| <= SERIES_LIMIT`, the continued
/// fraction for the auxiliary functions beyond it.
const SERIES_LIMIT: f64 = 4.0;

const SERIES_MAX_TERMS: usize = 60;
const CF_MAX_ITER: usize = 500;
const CF_TINY: f64 = 1e-300;

thread_local! {
    static SI_CALLS: Cell<u64> = const { Cell::new(0) };
}

/// Number of [`sine_integral`] evaluations performed on the current thread.
pub fn si_call_count() -> u64 {
    SI_CALLS.with(Cell::get)
}

/// Resets the current thread's [`sine_integral`] counter to zero.
pub fn reset_si_call_count() {
    SI_CALLS.with(|c| c.set(0));
}

/// A basis index `j` together with the step size `h` of the Sinc grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelIndex {
    pub j: i64,
    pub h: f64,
}

impl KernelIndex {
    pub fn new(j: i64, h: f64) -> Self {
        debug_assert!(h > 0.0, "step size must be positive");
        Self { j, h }
    }

    pub fn sinc(&self, x: f64) -> f64 {
        sinc_basis(self.j, self.h, x)
    }

    pub fn indef(&self, x: f64) -> f64 {
        indef_basis(self.j, self.h, x)
    }
}

/// `sin(u)/u`, smooth through the removable singularity at zero.
#[inline]
fn sinc_of(u: f64) -> f64 {
    if u.abs() < SINC_TAYLOR_LIMIT {
        let u2 = u * u;
        1.0 - u2 / 6.0 * (1.0 - u2 / 20.0)
    } else {
        u.sin() / u
    }
}

/// `sin(πv)` with the argument reduced to `[-1/2, 1/2]` first, so that the
/// zeros at integer `v` are reproduced to rounding of `v` itself.
#[inline]
fn sin_pi(v: f64) -> f64 {
    let n = v.round();
    let s = (PI * (v - n)).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// The Sinc basis `S(j,h)(x) = sin(π(x/h − j)) / (π(x/h − j))`.
pub fn sinc_basis(j: i64, h: f64, x: f64) -> f64 {
    let v = x / h - j as f64;
    let u = PI * v;
    if u.abs() < SINC_TAYLOR_LIMIT {
        sinc_of(u)
    } else {
        sin_pi(v) / u
    }
}

/// Fills `out[k] = S(k − n, h)(x)` for `k = 0..2n+1` using a single sine
/// evaluation.
pub fn sinc_row(n: usize, h: f64, x: f64, out: &mut [f64]) {
    assert_eq!(out.len(), 2 * n + 1);
    let v = x / h;
    let nearest = v.round();
    let r = v - nearest;
    let s = (PI * r).sin();
    // sin(π(v − j)) = (−1)^(nearest − j) · sin(πr)
    let parity_even = nearest.rem_euclid(2.0) == 0.0;
    for (k, slot) in out.iter_mut().enumerate() {
        let j = k as i64 - n as i64;
        let u = PI * (v - j as f64);
        *slot = if u.abs() < SINC_TAYLOR_LIMIT {
            sinc_of(u)
        } else {
            let even = parity_even == (j.rem_euclid(2) == 0);
            if even {
                s / u
            } else {
                -s / u
            }
        };
    }
}

/// Maclaurin series `Σ (−1)^k x^(2k+1) / ((2k+1)(2k+1)!)`, for moderate `x`.
fn si_series(x: f64) -> f64 {
    let x2 = x * x;
    // term_k = (−1)^k x^(2k+1) / (2k+1)!
    let mut term = x;
    let mut sum = x;
    for k in 1..SERIES_MAX_TERMS {
        let m = (2 * k) as f64;
        term *= -x2 / (m * (m + 1.0));
        let contrib = term / (m + 1.0);
        sum += contrib;
        if contrib.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    sum
}

/// Auxiliary functions `(f(x), g(x))` with
/// `Si(x) = π/2 − f(x)·cos x − g(x)·sin x`, for `x > 0`.
///
/// Uses `g − i·f = e^{ix}·E₁(ix)` and the continued fraction
/// `e^z E₁(z) = 1/(z+1− 1²/(z+3− 2²/(z+5− …)))` evaluated by the modified
/// Lentz algorithm.
fn si_auxiliary(x: f64) -> (f64, f64) {
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / CF_TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..CF_MAX_ITER {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < f64::EPSILON {
            break;
        }
    }
    (-h.im, h.re)
}

/// The sine integral `Si(x) = ∫₀ˣ sin(t)/t dt`.
///
/// Odd, bounded by `Si(π) ≈ 1.8519`, and tends to `±π/2` as `x → ±∞`.
/// Absolute accuracy is about `1e-15` over the whole real line.
pub fn sine_integral(x: f64) -> f64 {
    SI_CALLS.with(|c| c.set(c.get() + 1));
    let ax = x.abs();
    let value = if ax <= SERIES_LIMIT {
        si_series(ax)
    } else if ax.is_infinite() {
        FRAC_PI_2
    } else {
        let (f, g) = si_auxiliary(ax);
        FRAC_PI_2 - f * ax.cos() - g * ax.sin()
    };
    if x.is_sign_negative() {
        -value
    } else {
        value
    }
}

/// The indefinite-integration basis `J(j,h)(x) = h·{1/2 + Si(π(x/h − j))/π}`.
pub fn indef_basis(j: i64, h: f64, x: f64) -> f64 {
    h * (0.5 + sine_integral(PI * (x / h - j as f64)) / PI)
}

/// Fills `out[k] = J(k − n, h)(x)` for `k = 0..2n+1`; performs exactly
/// `2n + 1` sine-integral evaluations.
pub fn indef_row(n: usize, h: f64, x: f64, out: &mut [f64]) {
    assert_eq!(out.len(), 2 * n + 1);
    let v = x / h;
    for (k, slot) in out.iter_mut().enumerate() {
        let j = k as f64 - n as f64;
        *slot = h * (0.5 + sine_integral(PI * (v - j)) / PI);
    }
}

/// `σ_k = 1/2 + Si(πk)/π`.
pub fn sigma(k: i64) -> f64 {
    0.5 + sine_integral(PI * k as f64) / PI
}
