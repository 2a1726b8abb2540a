//! Linear initial value problems `y' = K(t)·y + g(t)`, `y(a) = r`, and the
//! reference problems with closed-form solutions.
//!
//! Coefficient and forcing evaluators receive a [`NodePoint`] rather than a
//! bare `t`, so problems with endpoint singularities can use the exact
//! offsets `t − a` and `b − t`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::transform::{Interval, NodePoint, RegularityParams, TransformKind};

/// Stand-in for "any positive number below π" in the analyticity parameters.
#[allow(clippy::approx_constant)]
pub const PI_MINUS: f64 = 3.14;

/// `K(t)` as a row-major `n×n` matrix.
pub type CoeffFn = dyn Fn(&NodePoint) -> Vec<f64> + Send + Sync;
/// `g(t)` as an `n`-vector.
pub type ForcingFn = dyn Fn(&NodePoint) -> Vec<f64> + Send + Sync;
/// Closed-form solution `y(t)`.
pub type ExactFn = dyn Fn(f64) -> Vec<f64> + Send + Sync;

#[derive(Clone)]
pub struct IvpProblem {
    interval: Interval,
    init: Vec<f64>,
    coeff: Arc<CoeffFn>,
    forcing: Arc<ForcingFn>,
}

impl fmt::Debug for IvpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IvpProblem")
            .field("interval", &self.interval)
            .field("init", &self.init)
            .finish_non_exhaustive()
    }
}

impl IvpProblem {
    pub fn new<K, G>(interval: Interval, init: Vec<f64>, coeff: K, forcing: G) -> Result<Self>
    where
        K: Fn(&NodePoint) -> Vec<f64> + Send + Sync + 'static,
        G: Fn(&NodePoint) -> Vec<f64> + Send + Sync + 'static,
    {
        if init.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self {
            interval,
            init,
            coeff: Arc::new(coeff),
            forcing: Arc::new(forcing),
        })
    }

    /// System dimension `n`.
    pub fn dim(&self) -> usize {
        self.init.len()
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn init(&self) -> &[f64] {
        &self.init
    }

    pub fn coeff_at(&self, p: &NodePoint) -> Vec<f64> {
        (self.coeff)(p)
    }

    pub fn forcing_at(&self, p: &NodePoint) -> Vec<f64> {
        (self.forcing)(p)
    }

    /// `K(t)·y + g(t)`.
    pub fn rhs(&self, p: &NodePoint, y: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let k = self.coeff_at(p);
        let mut out = self.forcing_at(p);
        for i in 0..n {
            out[i] += (0..n).map(|j| k[i * n + j] * y[j]).sum::<f64>();
        }
        out
    }
}

/// Which reference problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExampleId {
    Halm,
    Singular,
    DenseSingularities,
    Exponential,
}

impl ExampleId {
    pub const ALL: [ExampleId; 4] = [
        ExampleId::Halm,
        ExampleId::Singular,
        ExampleId::DenseSingularities,
        ExampleId::Exponential,
    ];

    pub fn build(self) -> ExampleProblem {
        match self {
            ExampleId::Halm => example_halm(),
            ExampleId::Singular => example_singular(),
            ExampleId::DenseSingularities => example_dense_singularities(),
            ExampleId::Exponential => example_exponential(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ExampleId::Halm => "1",
            ExampleId::Singular => "2",
            ExampleId::DenseSingularities => "3",
            ExampleId::Exponential => "exp",
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ExampleId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1" => Ok(ExampleId::Halm),
            "2" => Ok(ExampleId::Singular),
            "3" => Ok(ExampleId::DenseSingularities),
            "exp" => Ok(ExampleId::Exponential),
            other => Err(format!(
                "unknown example '{other}' (expected 1, 2, 3 or exp)"
            )),
        }
    }
}

/// A problem with its exact solution and the `(α, d)` under which it meets
/// the regularity hypotheses of each transformation.
#[derive(Clone)]
pub struct ExampleProblem {
    pub id: ExampleId,
    pub problem: IvpProblem,
    pub exact: Arc<ExactFn>,
    pub se_params: RegularityParams,
    pub de_params: RegularityParams,
}

impl fmt::Debug for ExampleProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExampleProblem")
            .field("id", &self.id)
            .field("problem", &self.problem)
            .field("se_params", &self.se_params)
            .field("de_params", &self.de_params)
            .finish_non_exhaustive()
    }
}

impl ExampleProblem {
    pub fn params(&self, kind: TransformKind) -> RegularityParams {
        match kind {
            TransformKind::Se => self.se_params,
            TransformKind::De => self.de_params,
        }
    }

    pub fn exact_at(&self, t: f64) -> Vec<f64> {
        (self.exact)(t)
    }
}

fn params(alpha: f64, d: f64) -> RegularityParams {
    RegularityParams::new(alpha, d).expect("reference parameters are valid")
}

/// Strip half-width for the DE map under which the Halm problem is regular.
pub fn halm_de_strip() -> f64 {
    let p = PI_MINUS / (2.0 * 2f64.ln());
    let s = 1.0 + 7.0 * p * p;
    let q = ((s + (s * s + 36.0 * p * p).sqrt()) / 2.0).sqrt();
    let x = (q - 1.0) / (4.0 * p);
    let y = 3.0 * (1.0 - 1.0 / q) / 4.0;
    (y / x.hypot(y)).asin()
}

/// The Halm equation `(1+t²)²y'' − 2y = 0`, `y(0) = 0`, `y'(0) = 1` on
/// `[0, 1]`, as a first-order system.
pub fn example_halm() -> ExampleProblem {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let problem = IvpProblem::new(
        iv,
        vec![0.0, 1.0],
        |p: &NodePoint| {
            let s = 1.0 + p.t * p.t;
            vec![0.0, 1.0, 2.0 / (s * s), 0.0]
        },
        |_: &NodePoint| vec![0.0, 0.0],
    )
    .unwrap();
    let exact = |t: f64| {
        let r = (1.0 + t * t).sqrt();
        let theta = t.atan();
        let y1 = r * theta.sinh();
        let y2 = (t * theta.sinh() + theta.cosh()) / r;
        vec![y1, y2]
    };
    ExampleProblem {
        id: ExampleId::Halm,
        problem,
        exact: Arc::new(exact),
        se_params: params(1.0, 3.0 * PI_MINUS / 4.0),
        de_params: params(1.0, halm_de_strip()),
    }
}

/// `y₁' = −y₁ + y₂/(2√t)`, `y₂' = −y₁/√t` on `[0, 2]` with
/// `y = (√t·e^{−t}, e^{−t})`; singular coefficients at the origin.
pub fn example_singular() -> ExampleProblem {
    let iv = Interval::new(0.0, 2.0).unwrap();
    let problem = IvpProblem::new(
        iv,
        vec![0.0, 1.0],
        // a = 0, so √t is √(t − a)
        |p: &NodePoint| {
            let s = p.off_a.sqrt();
            vec![-1.0, 0.5 / s, -1.0 / s, 0.0]
        },
        |_: &NodePoint| vec![0.0, 0.0],
    )
    .unwrap();
    let exact = |t: f64| {
        let e = (-t).exp();
        vec![t.sqrt() * e, e]
    };
    ExampleProblem {
        id: ExampleId::Singular,
        problem,
        exact: Arc::new(exact),
        se_params: params(0.5, PI_MINUS),
        de_params: params(0.5, PI_MINUS / 2.0),
    }
}

fn dense_f(atanh_t: f64) -> f64 {
    ((4.0 * atanh_t).cos() + PI.cosh()).sqrt()
}

/// Rotation system on `[−1, 1]` whose coefficient has singularities
/// accumulating at both endpoints; `y = (sin((1−t²)F), cos((1−t²)F))` with
/// `F(t) = √(cos(4·artanh t) + cosh π)`.
pub fn example_dense_singularities() -> ExampleProblem {
    let iv = Interval::new(-1.0, 1.0).unwrap();
    let problem = IvpProblem::new(
        iv,
        vec![0.0, 1.0],
        |p: &NodePoint| {
            // on [−1, 1]: 1 + t = off_a, 1 − t = off_b
            let at = 0.5 * (p.off_a / p.off_b).ln();
            let f = dense_f(at);
            let phi = 2.0 * (p.t * f * f + (4.0 * at).sin()) / f;
            vec![0.0, -phi, phi, 0.0]
        },
        |_: &NodePoint| vec![0.0, 0.0],
    )
    .unwrap();
    let exact = |t: f64| {
        let w = (1.0 - t) * (1.0 + t);
        if w <= 0.0 {
            return vec![0.0, 1.0];
        }
        let u = w * dense_f(t.atanh());
        vec![u.sin(), u.cos()]
    };
    let d_se = PI_MINUS / 2.0;
    ExampleProblem {
        id: ExampleId::DenseSingularities,
        problem,
        exact: Arc::new(exact),
        se_params: params(1.0, d_se),
        de_params: params(1.0, (d_se / PI).asin()),
    }
}

/// `y' = y`, `y(0) = 1` on `[0, 1]`.
pub fn example_exponential() -> ExampleProblem {
    let iv = Interval::new(0.0, 1.0).unwrap();
    let problem = IvpProblem::new(
        iv,
        vec![1.0],
        |_: &NodePoint| vec![1.0],
        |_: &NodePoint| vec![0.0],
    )
    .unwrap();
    ExampleProblem {
        id: ExampleId::Exponential,
        problem,
        exact: Arc::new(|t: f64| vec![t.exp()]),
        se_params: params(1.0, 3.0 * PI_MINUS / 4.0),
        de_params: params(1.0, PI_MINUS / 2.0),
    }
}
