//! Dense matrices, LU factorization with partial pivoting, the Sinc
//! indefinite-integration matrix, and block assembly of the discrete
//! Volterra system.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::ivp::IvpProblem;
use crate::sinc_kernel::sigma;
use crate::transform::SincGrid;

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Packed `L\U` factors of `PA = LU`; `L` has a unit diagonal.
#[derive(Debug, Clone)]
pub struct LuFactors {
    pub lu: DenseMatrix,
    /// Row `i` of `PA` is row `perm[i]` of `A`.
    pub perm: Vec<usize>,
    /// Sign of the permutation, `±1`.
    pub sign: f64,
}

impl LuFactors {
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        lu_solve(self, b)
    }

    /// Growth factor `max|U| / max|A|`; requires the original matrix.
    pub fn growth_factor(&self, original: &DenseMatrix) -> f64 {
        let n = self.lu.rows;
        let mut umax = 0.0f64;
        for i in 0..n {
            for j in i..n {
                umax = umax.max(self.lu[(i, j)].abs());
            }
        }
        let amax = original.data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if amax == 0.0 {
            0.0
        } else {
            umax / amax
        }
    }
}

/// Gaussian elimination with partial pivoting.
pub fn lu_factor(a: &DenseMatrix) -> Result<LuFactors> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: a.cols,
        });
    }
    let n = a.rows;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;

    for k in 0..n {
        let (pivot_row, pivot_abs) =
            (k..n)
                .map(|i| (i, lu[(i, k)].abs()))
                .fold(
                    (k, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot_abs == 0.0 || !pivot_abs.is_finite() {
            return Err(Error::Singular { column: k });
        }
        if pivot_row != k {
            for j in 0..n {
                lu.data.swap(k * n + j, pivot_row * n + j);
            }
            perm.swap(k, pivot_row);
            sign = -sign;
        }
        let pivot = lu[(k, k)];
        let (upper, lower) = lu.data.split_at_mut((k + 1) * n);
        let pivot_tail = &upper[k * n + k + 1..k * n + n];
        for row in lower.chunks_exact_mut(n) {
            let factor = row[k] / pivot;
            row[k] = factor;
            if factor != 0.0 {
                for (x, &u) in row[k + 1..].iter_mut().zip(pivot_tail) {
                    *x -= factor * u;
                }
            }
        }
    }
    Ok(LuFactors { lu, perm, sign })
}

/// Solves `Ax = b` from the factors of `A`.
pub fn lu_solve(f: &LuFactors, b: &[f64]) -> Result<Vec<f64>> {
    let n = f.lu.rows;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut x: Vec<f64> = f.perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        let row = f.lu.row(i);
        let s: f64 = row[..i].iter().zip(&x[..i]).map(|(l, y)| l * y).sum();
        x[i] -= s;
    }
    for i in (0..n).rev() {
        let row = f.lu.row(i);
        let s: f64 = row[i + 1..]
            .iter()
            .zip(&x[i + 1..])
            .map(|(u, y)| u * y)
            .sum();
        x[i] = (x[i] - s) / row[i];
    }
    Ok(x)
}

/// The `(2N+1)×(2N+1)` Toeplitz matrix `[σ_{i−j}]`, `i, j = −N..=N`.
pub fn build_imatrix(n: usize) -> DenseMatrix {
    let m = 2 * n + 1;
    // sigmas[k + 2N] = σ_k for k = −2N..=2N
    let sigmas: Vec<f64> = (-(2 * n as i64)..=(2 * n as i64)).map(sigma).collect();
    let mut out = DenseMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = sigmas[i + 2 * n - j];
        }
    }
    out
}

/// `B = h·I⁽⁻¹⁾_N·D_N` with `D_N = diag(ψ'(jh))`.
pub fn integration_matrix(grid: &SincGrid) -> DenseMatrix {
    let mut b = build_imatrix(grid.n);
    let m = grid.len();
    for i in 0..m {
        for (j, w) in grid.dweights.iter().enumerate() {
            b[(i, j)] *= grid.h * w;
        }
    }
    b
}

/// Coefficient matrix and forcing of the problem sampled at every node.
#[derive(Debug, Clone)]
pub struct NodeSamples {
    /// `coeff[k]` is `K(t_k)` row-major (`n·n` entries).
    pub coeff: Vec<Vec<f64>>,
    /// `forcing[k]` is `g(t_k)`.
    pub forcing: Vec<Vec<f64>>,
}

/// Evaluates `K` and `g` at every grid node, rejecting non-finite values.
pub fn sample_problem(grid: &SincGrid, prob: &IvpProblem) -> Result<NodeSamples> {
    let n = prob.dim();
    let mut coeff = Vec::with_capacity(grid.len());
    let mut forcing = Vec::with_capacity(grid.len());
    for (k, node) in grid.nodes.iter().enumerate() {
        let node_index = k as i64 - grid.n as i64;
        let kmat = prob.coeff_at(node);
        if kmat.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: kmat.len(),
            });
        }
        if kmat.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "coefficient K(t)",
                node: node_index,
            });
        }
        let g = prob.forcing_at(node);
        if g.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.len(),
            });
        }
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "forcing g(t)",
                node: node_index,
            });
        }
        coeff.push(kmat);
        forcing.push(g);
    }
    Ok(NodeSamples { coeff, forcing })
}

/// Assembles `(I_n ⊗ I_N − (I_n ⊗ B)[K_ij]) Y = (I_n ⊗ B) G + R`.
///
/// Unknowns are ordered component-major: all `2N + 1` node values of the
/// first component, then the second, and so on.
pub fn assemble_system(grid: &SincGrid, prob: &IvpProblem) -> Result<(DenseMatrix, Vec<f64>)> {
    if grid.interval != *prob.interval() {
        return Err(Error::InvalidParams(
            "grid and problem are defined on different intervals".into(),
        ));
    }
    let samples = sample_problem(grid, prob)?;
    let b = integration_matrix(grid);
    Ok(assemble_with(&b, &samples, prob.init()))
}

pub(crate) fn assemble_with(
    b: &DenseMatrix,
    samples: &NodeSamples,
    init: &[f64],
) -> (DenseMatrix, Vec<f64>) {
    let n = init.len();
    let m = b.rows();
    let size = m * n;
    let mut a = DenseMatrix::identity(size);
    let mut rhs = vec![0.0; size];

    for ci in 0..n {
        for cj in 0..n {
            let kcol: Vec<f64> = samples.coeff.iter().map(|k| k[ci * n + cj]).collect();
            if kcol.iter().all(|&v| v == 0.0) {
                continue;
            }
            for p in 0..m {
                let brow = b.row(p);
                let arow =
                    &mut a.data[(ci * m + p) * size + cj * m..(ci * m + p) * size + cj * m + m];
                for ((slot, &bv), &kv) in arow.iter_mut().zip(brow).zip(&kcol) {
                    *slot -= bv * kv;
                }
            }
        }
        for p in 0..m {
            let bg: f64 = b
                .row(p)
                .iter()
                .zip(&samples.forcing)
                .map(|(bv, g)| bv * g[ci])
                .sum();
            rhs[ci * m + p] = bg + init[ci];
        }
    }
    (a, rhs)
}
