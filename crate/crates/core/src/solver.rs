//! The Sinc-Nyström and Sinc-collocation methods.
//!
//! Both methods share one discrete system: the Volterra form
//! `y(t) = r + ∫ₐᵗ {g(s) + K(s)y(s)} ds` with the integral replaced by Sinc
//! indefinite integration and collocated at the `2N + 1` Sinc points. They
//! differ only in how the solved node values `Y` are turned back into a
//! function of `t`:
//!
//! * Nyström: `y(t) = r + Σ_j {g(t_j) + K(t_j)Y_j}·ψ'(jh)·J(j,h)(φ(t))`.
//!   Each evaluation costs `2N + 1` sine-integral calls.
//! * collocation: `ỹ_i(t) = y_{i,−N}w_a(t) + y_{i,N}w_b(t) +
//!   Σ_j {y_{i,j} − y_{i,−N}w_a(t_j) − y_{i,N}w_b(t_j)}·S(j,h)(φ(t))`
//!   with `w_a = (b−t)/(b−a)`, `w_b = (t−a)/(b−a)`. Only elementary
//!   functions are involved.
//!
//! Whichever transformation the grid uses (SE or DE) selects the SE or DE
//! variant of each method.

use crate::error::{Error, Result};
use crate::ivp::IvpProblem;
use crate::linalg::{assemble_with, integration_matrix, lu_factor, sample_problem, NodeSamples};
use crate::sinc_kernel::{indef_row, sinc_row};
use crate::transform::{NodePoint, SincGrid};

/// Solved node values `Y` of the discrete system.
#[derive(Debug, Clone)]
pub struct NodeValues {
    pub grid: SincGrid,
    /// Component-major: `y[i·(2N+1) + k]` is component `i` at node `k`.
    pub y: Vec<f64>,
    dim: usize,
}

impl NodeValues {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All node values of component `i`.
    pub fn component(&self, i: usize) -> &[f64] {
        let m = self.grid.len();
        &self.y[i * m..(i + 1) * m]
    }

    /// The `n`-vector at storage index `k` (node `k − N`).
    pub fn at_node(&self, k: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.component(i)[k]).collect()
    }
}

/// Anything that yields an approximate solution vector at `t ∈ [a, b]`.
pub trait Evaluator {
    fn eval(&self, t: f64) -> Result<Vec<f64>>;
}

fn solve_sampled(prob: &IvpProblem, grid: &SincGrid) -> Result<(NodeValues, NodeSamples)> {
    if grid.interval != *prob.interval() {
        return Err(Error::InvalidParams(
            "grid and problem are defined on different intervals".into(),
        ));
    }
    let samples = sample_problem(grid, prob)?;
    let b = integration_matrix(grid);
    let (a, rhs) = assemble_with(&b, &samples, prob.init());
    let y = lu_factor(&a)?.solve(&rhs)?;
    if let Some(pos) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "solution value",
            node: (pos % grid.len()) as i64 - grid.n as i64,
        });
    }
    Ok((
        NodeValues {
            grid: grid.clone(),
            y,
            dim: prob.dim(),
        },
        samples,
    ))
}

/// Assembles and solves the discrete Volterra system by one dense LU.
pub fn solve_system(prob: &IvpProblem, grid: &SincGrid) -> Result<NodeValues> {
    solve_sampled(prob, grid).map(|(values, _)| values)
}

fn combo_weights(values: &NodeValues, samples: &NodeSamples) -> Vec<Vec<f64>> {
    let n = values.dim;
    (0..values.grid.len())
        .map(|k| {
            let yk = values.at_node(k);
            let kmat = &samples.coeff[k];
            (0..n)
                .map(|i| {
                    samples.forcing[k][i] + (0..n).map(|j| kmat[i * n + j] * yk[j]).sum::<f64>()
                })
                .collect()
        })
        .collect()
}

/// Sinc-Nyström solution.
#[derive(Debug, Clone)]
pub struct NystromSolution {
    pub values: NodeValues,
    pub problem: IvpProblem,
    /// `combo[k] = g(t_k) + K(t_k)·Y_k`
    pub combo: Vec<Vec<f64>>,
    /// `weighted[i][k] = combo[k][i]·ψ'(x_k)`, hoisted out of evaluation.
    weighted: Vec<Vec<f64>>,
}

pub fn nystrom_solve(prob: &IvpProblem, grid: &SincGrid) -> Result<NystromSolution> {
    let (values, samples) = solve_sampled(prob, grid)?;
    let combo = combo_weights(&values, &samples);
    let weighted = (0..values.dim)
        .map(|i| {
            combo
                .iter()
                .zip(&grid.dweights)
                .map(|(c, w)| c[i] * w)
                .collect()
        })
        .collect();
    Ok(NystromSolution {
        values,
        problem: prob.clone(),
        combo,
        weighted,
    })
}

impl NystromSolution {
    /// Recomputes `g(t_k) + K(t_k)·Y_k` from the problem and node values.
    pub fn recompute_combo(&self) -> Result<Vec<Vec<f64>>> {
        let samples = sample_problem(&self.values.grid, &self.problem)?;
        Ok(combo_weights(&self.values, &samples))
    }

    /// Evaluates at transformed coordinate `x`; `2N + 1` sine integrals.
    pub fn eval_transformed(&self, x: f64) -> Vec<f64> {
        let grid = &self.values.grid;
        let mut row = vec![0.0; grid.len()];
        indef_row(grid.n, grid.h, x, &mut row);
        self.problem
            .init()
            .iter()
            .zip(&self.weighted)
            .map(|(r, w)| r + w.iter().zip(&row).map(|(a, b)| a * b).sum::<f64>())
            .collect()
    }

    /// Value at the right endpoint, where every `J(j,h)` has tended to `h`.
    fn eval_right_end(&self) -> Vec<f64> {
        let h = self.values.grid.h;
        self.problem
            .init()
            .iter()
            .zip(&self.weighted)
            .map(|(r, w)| r + h * w.iter().sum::<f64>())
            .collect()
    }
}

impl Evaluator for NystromSolution {
    fn eval(&self, t: f64) -> Result<Vec<f64>> {
        nystrom_eval(self, t)
    }
}

fn check_in(grid: &SincGrid, t: f64) -> Result<()> {
    if !grid.interval.contains(t) {
        return Err(Error::OutOfInterval {
            t,
            a: grid.interval.a,
            b: grid.interval.b,
        });
    }
    Ok(())
}

/// Nyström evaluator at `t ∈ [a, b]`.
pub fn nystrom_eval(sol: &NystromSolution, t: f64) -> Result<Vec<f64>> {
    let grid = &sol.values.grid;
    check_in(grid, t)?;
    if t == grid.interval.a {
        return Ok(sol.problem.init().to_vec());
    }
    if t == grid.interval.b {
        return Ok(sol.eval_right_end());
    }
    let x = grid.to_transformed(&grid.interval.point(t));
    Ok(sol.eval_transformed(x))
}

/// Sinc-collocation solution.
#[derive(Debug, Clone)]
pub struct CollocationSolution {
    pub values: NodeValues,
    /// `(y_{i,−N}, y_{i,N})` per component.
    pub boundary: Vec<(f64, f64)>,
    /// `coef[i][k] = y_{i,k} − y_{i,−N}·w_a(t_k) − y_{i,N}·w_b(t_k)`
    coef: Vec<Vec<f64>>,
}

pub fn collocation_solve(prob: &IvpProblem, grid: &SincGrid) -> Result<CollocationSolution> {
    let values = solve_system(prob, grid)?;
    Ok(CollocationSolution::from_values(values))
}

impl CollocationSolution {
    pub fn from_values(values: NodeValues) -> Self {
        let grid = &values.grid;
        let width = grid.interval.width();
        let last = grid.len() - 1;
        let boundary: Vec<(f64, f64)> = (0..values.dim)
            .map(|i| {
                let c = values.component(i);
                (c[0], c[last])
            })
            .collect();
        let coef = boundary
            .iter()
            .enumerate()
            .map(|(i, &(ya, yb))| {
                values
                    .component(i)
                    .iter()
                    .zip(&grid.nodes)
                    .map(|(y, p)| y - ya * (p.off_b / width) - yb * (p.off_a / width))
                    .collect()
            })
            .collect();
        Self {
            values,
            boundary,
            coef,
        }
    }

    fn eval_point(&self, x: f64, p: &NodePoint) -> Vec<f64> {
        let grid = &self.values.grid;
        let width = grid.interval.width();
        let (wa, wb) = (p.off_b / width, p.off_a / width);
        let mut row = vec![0.0; grid.len()];
        sinc_row(grid.n, grid.h, x, &mut row);
        self.boundary
            .iter()
            .zip(&self.coef)
            .map(|(&(ya, yb), c)| {
                ya * wa + yb * wb + c.iter().zip(&row).map(|(a, b)| a * b).sum::<f64>()
            })
            .collect()
    }

    /// Evaluates at transformed coordinate `x`; elementary functions only.
    pub fn eval_transformed(&self, x: f64) -> Result<Vec<f64>> {
        let grid = &self.values.grid;
        let p = grid.kind.forward(x, &grid.interval)?;
        Ok(self.eval_point(x, &p))
    }
}

impl Evaluator for CollocationSolution {
    fn eval(&self, t: f64) -> Result<Vec<f64>> {
        collocation_eval(self, t)
    }
}

/// Collocation evaluator at `t ∈ [a, b]`.
pub fn collocation_eval(sol: &CollocationSolution, t: f64) -> Result<Vec<f64>> {
    let grid = &sol.values.grid;
    check_in(grid, t)?;
    if t == grid.interval.a {
        return Ok(sol.boundary.iter().map(|b| b.0).collect());
    }
    if t == grid.interval.b {
        return Ok(sol.boundary.iter().map(|b| b.1).collect());
    }
    let p = grid.interval.point(t);
    let x = grid.to_transformed(&p);
    Ok(sol.eval_point(x, &p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ivp::example_exponential;
    use crate::transform::{build_grid, Interval, RegularityParams, TransformKind};

    fn constant_problem(c: f64) -> IvpProblem {
        IvpProblem::new(
            Interval::new(0.0, 1.0).unwrap(),
            vec![c],
            |_: &NodePoint| vec![0.0],
            |_: &NodePoint| vec![0.0],
        )
        .unwrap()
    }

    fn grid(kind: TransformKind, n: usize) -> SincGrid {
        let p = RegularityParams::new(1.0, 1.5).unwrap();
        build_grid(kind, Interval::new(0.0, 1.0).unwrap(), p, n).unwrap()
    }

    #[test]
    fn constant_solution() {
        let prob = constant_problem(5.0);
        for kind in [TransformKind::Se, TransformKind::De] {
            let values = solve_system(&prob, &grid(kind, 10)).unwrap();
            assert!(values.y.iter().all(|&v| v == 5.0));
        }
    }

    #[test]
    fn combo_equals_forcing_for_zero_kernel() {
        let prob = IvpProblem::new(
            Interval::new(0.0, 1.0).unwrap(),
            vec![0.0],
            |_: &NodePoint| vec![0.0],
            |p: &NodePoint| vec![3.0 * p.t * p.t],
        )
        .unwrap();
        let g = grid(TransformKind::Se, 8);
        let sol = nystrom_solve(&prob, &g).unwrap();
        for (c, p) in sol.combo.iter().zip(&g.nodes) {
            assert_eq!(c[0], 3.0 * p.t * p.t);
        }
        assert_eq!(sol.recompute_combo().unwrap(), sol.combo);
    }

    #[test]
    fn exponential_node_values() {
        let ex = example_exponential();
        let g = build_grid(TransformKind::De, *ex.problem.interval(), ex.de_params, 32).unwrap();
        let values = solve_system(&ex.problem, &g).unwrap();
        for (y, p) in values.y.iter().zip(&g.nodes) {
            assert!((y - p.t.exp()).abs() < 1e-10);
        }
    }

    #[test]
    fn collocation_shares_node_values_and_boundary() {
        let ex = example_exponential();
        let g = build_grid(TransformKind::Se, *ex.problem.interval(), ex.se_params, 12).unwrap();
        let col = collocation_solve(&ex.problem, &g).unwrap();
        let nys = nystrom_solve(&ex.problem, &g).unwrap();
        assert_eq!(col.values.y, nys.values.y);
        assert_eq!(
            col.boundary,
            vec![(col.values.y[0], *col.values.y.last().unwrap())]
        );
        assert_eq!(collocation_eval(&col, 0.0).unwrap()[0], col.boundary[0].0);
        assert_eq!(collocation_eval(&col, 1.0).unwrap()[0], col.boundary[0].1);
    }

    #[test]
    fn evaluators_reject_outside_points() {
        let ex = example_exponential();
        let g = build_grid(TransformKind::De, *ex.problem.interval(), ex.de_params, 6).unwrap();
        let nys = nystrom_solve(&ex.problem, &g).unwrap();
        let col = CollocationSolution::from_values(nys.values.clone());
        assert!(matches!(
            nystrom_eval(&nys, 1.5),
            Err(Error::OutOfInterval { .. })
        ));
        assert!(collocation_eval(&col, -0.1).is_err());
        assert_eq!(nystrom_eval(&nys, 0.0).unwrap(), vec![1.0]);
    }

    #[test]
    fn nystrom_endpoint_limit() {
        let ex = example_exponential();
        let g = build_grid(TransformKind::De, *ex.problem.interval(), ex.de_params, 24).unwrap();
        let nys = nystrom_solve(&ex.problem, &g).unwrap();
        let at_b = nystrom_eval(&nys, 1.0).unwrap()[0];
        let near_b = nystrom_eval(&nys, 1.0 - 1e-12).unwrap()[0];
        assert!((at_b - near_b).abs() < 1e-10);
        assert!((at_b - std::f64::consts::E).abs() < 1e-9);
    }

    #[test]
    fn mismatched_interval_rejected() {
        let prob = constant_problem(1.0);
        let p = RegularityParams::new(1.0, 1.0).unwrap();
        let g = build_grid(TransformKind::Se, Interval::new(0.0, 2.0).unwrap(), p, 4).unwrap();
        assert!(solve_system(&prob, &g).is_err());
    }

    #[test]
    fn non_finite_coefficient_reports_node() {
        let prob = IvpProblem::new(
            Interval::new(0.0, 1.0).unwrap(),
            vec![1.0],
            |p: &NodePoint| vec![if p.t == 0.5 { f64::NAN } else { 1.0 }],
            |_: &NodePoint| vec![0.0],
        )
        .unwrap();
        let err = solve_system(&prob, &grid(TransformKind::Se, 3)).unwrap_err();
        assert_eq!(
            err,
            Error::NonFinite {
                what: "coefficient K(t)",
                node: 0
            }
        );
    }
}
