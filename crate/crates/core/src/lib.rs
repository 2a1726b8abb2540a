//! Sinc-collocation and Sinc-Nyström methods for systems of linear initial
//! value problems
//!
//! ```text
//! y'(t) = K(t)·y(t) + g(t),   a ≤ t ≤ b,   y(a) = r
//! ```
//!
//! on a finite interval. The problem is recast as the Volterra integral
//! equation `y(t) = r + ∫ₐᵗ {g(s) + K(s)y(s)} ds`, the integral is replaced by
//! Sinc indefinite integration under a single-exponential (SE) or
//! double-exponential (DE) variable transformation, and the resulting dense
//! linear system is solved by LU. The node values are then extended to the
//! whole interval either by the Nyström formula or by generalized Sinc
//! interpolation (collocation), giving four methods in total.
//!
//! ```no_run
//! use sinc_ivp::harness::{method_error, MethodId};
//! use sinc_ivp::ivp::example_singular;
//!
//! let ex = example_singular();
//! let err = method_error(MethodId::DeCollocation, &ex, 31).unwrap();
//! assert!(err < 1e-7);
//! ```

pub mod error;
pub mod harness;
pub mod ivp;
pub mod linalg;
pub mod sinc_kernel;
pub mod solver;
pub mod transform;

pub use error::{Error, Result};
pub use harness::MethodId;
pub use ivp::{ExampleId, ExampleProblem, IvpProblem};
pub use solver::{
    collocation_eval, collocation_solve, nystrom_eval, nystrom_solve, solve_system,
    CollocationSolution, Evaluator, NodeValues, NystromSolution,
};
pub use transform::{build_grid, Interval, NodePoint, RegularityParams, SincGrid, TransformKind};
