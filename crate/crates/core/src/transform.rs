//! Single- and double-exponential variable transformations mapping the real
//! line onto a finite interval, their inverses and derivatives, the step-size
//! rules, and Sinc grid construction.
//!
//! Points of `(a, b)` are carried as [`NodePoint`]s: besides `t` they hold the
//! endpoint offsets `t − a` and `b − t`, computed from the logistic form of
//! the transformation so that nodes clustered against an endpoint keep their
//! relative accuracy instead of rounding onto it. Offsets that would
//! underflow are floored at [`OFFSET_FLOOR`]; the same floor applies to the
//! derivative weights.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::error::{Error, Result};

/// Smallest offset or derivative weight ever reported.
pub const OFFSET_FLOOR: f64 = f64::MIN_POSITIVE;

/// The finite interval `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, t: f64) -> bool {
        self.a <= t && t <= self.b
    }

    /// A point given by its plain coordinate; offsets are `t − a` and `b − t`.
    pub fn point(&self, t: f64) -> NodePoint {
        NodePoint {
            t,
            off_a: t - self.a,
            off_b: self.b - t,
        }
    }
}

/// Which variable transformation a grid uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    /// `t = (b−a)/2·tanh(x/2) + (b+a)/2`
    Se,
    /// `t = (b−a)/2·tanh((π/2)·sinh x) + (b+a)/2`
    De,
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformKind::Se => f.write_str("SE"),
            TransformKind::De => f.write_str("DE"),
        }
    }
}

/// Analyticity parameters: Hölder exponent `alpha` at the endpoints and
/// half-width `d` of the strip of analyticity in the transformed variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularityParams {
    pub alpha: f64,
    pub d: f64,
}

impl RegularityParams {
    pub fn new(alpha: f64, d: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "alpha = {alpha} must lie in (0, 1]"
            )));
        }
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidParams(format!("d = {d} must be positive")));
        }
        Ok(Self { alpha, d })
    }

    /// Checks the strip bound of `kind`: `d < π` (SE) or `d < π/2` (DE).
    pub fn validate_for(&self, kind: TransformKind) -> Result<()> {
        let bound = match kind {
            TransformKind::Se => PI,
            TransformKind::De => FRAC_PI_2,
        };
        if self.d >= bound {
            return Err(Error::InvalidParams(format!(
                "d = {} must be below {bound} for the {kind} transformation",
                self.d
            )));
        }
        Ok(())
    }
}

/// A point of `(a, b)` with cancellation-free endpoint offsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodePoint {
    pub t: f64,
    /// `t − a`
    pub off_a: f64,
    /// `b − t`
    pub off_b: f64,
}

/// Point of `(a, b)` whose transformed coordinate satisfies
/// `(t − a)/(b − t) = e^u`.
fn logistic_point(u: f64, iv: &Interval) -> NodePoint {
    let w = iv.width();
    let off_a = (w / (1.0 + (-u).exp())).max(OFFSET_FLOOR);
    let off_b = (w / (1.0 + u.exp())).max(OFFSET_FLOOR);
    let mid = 0.5 * (iv.a + iv.b);
    let t = (mid + 0.5 * w * (0.5 * u).tanh()).clamp(iv.a, iv.b);
    NodePoint { t, off_a, off_b }
}

/// `4·cosh²(u/2)` in reciprocal form, `e^{−|u|}/(1 + e^{−|u|})²`.
fn inv_four_cosh2_half(u: f64) -> f64 {
    let e = (-u.abs()).exp();
    e / ((1.0 + e) * (1.0 + e))
}

fn check_open(t: f64, iv: &Interval) -> Result<()> {
    if !(iv.a < t && t < iv.b) {
        return Err(Error::Domain {
            t,
            a: iv.a,
            b: iv.b,
        });
    }
    Ok(())
}

/// `ψ^SE(x) = (b−a)/2·tanh(x/2) + (b+a)/2`.
pub fn se_forward(x: f64, iv: &Interval) -> NodePoint {
    logistic_point(x, iv)
}

/// `φ^SE(t) = log((t − a)/(b − t))`; `t` must lie strictly inside.
pub fn se_inverse(t: f64, iv: &Interval) -> Result<f64> {
    check_open(t, iv)?;
    Ok(((t - iv.a) / (iv.b - t)).ln())
}

/// `{ψ^SE}'(x) = (b−a)/(4·cosh²(x/2))`.
pub fn se_derivative(x: f64, iv: &Interval) -> f64 {
    (iv.width() * inv_four_cosh2_half(x)).max(OFFSET_FLOOR)
}

/// `ψ^DE(x) = (b−a)/2·tanh((π/2)·sinh x) + (b+a)/2`.
pub fn de_forward(x: f64, iv: &Interval) -> Result<NodePoint> {
    let u = PI * x.sinh();
    if !u.is_finite() {
        return Err(Error::Overflow { x });
    }
    Ok(logistic_point(u, iv))
}

/// `φ^DE(t) = arcsinh((2/π)·arctanh((2t − b − a)/(b − a)))`.
pub fn de_inverse(t: f64, iv: &Interval) -> Result<f64> {
    check_open(t, iv)?;
    // 2·arctanh((2t−b−a)/(b−a)) = log((t−a)/(b−t))
    Ok((((t - iv.a) / (iv.b - t)).ln() / PI).asinh())
}

/// `{ψ^DE}'(x) = (b−a)·π·cosh x / (4·cosh²((π/2)·sinh x))`.
pub fn de_derivative(x: f64, iv: &Interval) -> f64 {
    let u = PI * x.sinh();
    let decay = inv_four_cosh2_half(u);
    if decay == 0.0 {
        return OFFSET_FLOOR;
    }
    (iv.width() * PI * x.cosh() * decay).max(OFFSET_FLOOR)
}

impl TransformKind {
    pub fn forward(self, x: f64, iv: &Interval) -> Result<NodePoint> {
        match self {
            TransformKind::Se => Ok(se_forward(x, iv)),
            TransformKind::De => de_forward(x, iv),
        }
    }

    pub fn inverse(self, t: f64, iv: &Interval) -> Result<f64> {
        match self {
            TransformKind::Se => se_inverse(t, iv),
            TransformKind::De => de_inverse(t, iv),
        }
    }

    /// Inverse computed from the offsets of `p`, exact for points produced by
    /// [`forward`](Self::forward) even where `t` itself has rounded onto an
    /// endpoint.
    pub fn inverse_point(self, p: &NodePoint) -> f64 {
        let log_ratio = (p.off_a / p.off_b).ln();
        match self {
            TransformKind::Se => log_ratio,
            TransformKind::De => (log_ratio / PI).asinh(),
        }
    }

    pub fn derivative(self, x: f64, iv: &Interval) -> f64 {
        match self {
            TransformKind::Se => se_derivative(x, iv),
            TransformKind::De => de_derivative(x, iv),
        }
    }
}

/// Step size `h` for `2N + 1` Sinc points:
/// SE `√(πd/(αN))`, DE `log(2dN/α)/N`.
pub fn step_size(kind: TransformKind, params: &RegularityParams, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParams("N must be positive".into()));
    }
    params.validate_for(kind)?;
    let nf = n as f64;
    match kind {
        TransformKind::Se => Ok((PI * params.d / (params.alpha * nf)).sqrt()),
        TransformKind::De => {
            let arg = 2.0 * params.d * nf / params.alpha;
            if arg <= 1.0 {
                return Err(Error::InvalidParams(format!(
                    "2dN/alpha = {arg} must exceed 1 for the DE step size (N = {n} too small)"
                )));
            }
            Ok(arg.ln() / nf)
        }
    }
}

/// The `2N + 1` Sinc points `ψ(jh)`, `j = −N..=N`, with derivative weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SincGrid {
    pub kind: TransformKind,
    pub interval: Interval,
    pub params: RegularityParams,
    pub n: usize,
    pub h: f64,
    /// `nodes[k] = ψ((k − N)·h)`
    pub nodes: Vec<NodePoint>,
    /// `dweights[k] = ψ'((k − N)·h)`
    pub dweights: Vec<f64>,
}

impl SincGrid {
    pub fn new(
        kind: TransformKind,
        interval: Interval,
        params: RegularityParams,
        n: usize,
    ) -> Result<Self> {
        let h = step_size(kind, &params, n)?;
        let len = 2 * n + 1;
        let mut nodes = Vec::with_capacity(len);
        let mut dweights = Vec::with_capacity(len);
        for k in 0..len {
            let x = (k as f64 - n as f64) * h;
            nodes.push(kind.forward(x, &interval)?);
            dweights.push(kind.derivative(x, &interval));
        }
        Ok(Self {
            kind,
            interval,
            params,
            n,
            h,
            nodes,
            dweights,
        })
    }

    /// Number of nodes, `2N + 1`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Transformed coordinate `(k − N)·h` of storage index `k`.
    pub fn x_at(&self, k: usize) -> f64 {
        (k as f64 - self.n as f64) * self.h
    }

    /// Transformed coordinate of an arbitrary point of the interval.
    pub fn to_transformed(&self, p: &NodePoint) -> f64 {
        self.kind.inverse_point(p)
    }
}

/// Builds the Sinc grid of `kind` on `iv` for the given parameters and `N`.
pub fn build_grid(
    kind: TransformKind,
    iv: Interval,
    params: RegularityParams,
    n: usize,
) -> Result<SincGrid> {
    SincGrid::new(kind, iv, params, n)
}
