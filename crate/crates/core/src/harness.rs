//! Error metrics, convergence sweeps, the accuracy/cost benchmark and CSV
//! output.
//!
//! The error metric is the maximum absolute componentwise error over the 999
//! interior points `t_l = a + l·(b − a)/1000`, `l = 1..=999`.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ivp::ExampleProblem;
use crate::solver::{
    collocation_solve, nystrom_solve, CollocationSolution, Evaluator, NystromSolution,
};
use crate::transform::{build_grid, Interval, TransformKind};

/// Number of interior points of the error mesh.
pub const MESH_POINTS: usize = 999;

/// Largest `N` tried by [`accuracy_benchmark`].
pub const BENCH_MAX_N: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodId {
    SeNystrom,
    SeCollocation,
    DeNystrom,
    DeCollocation,
}

impl MethodId {
    pub const ALL: [MethodId; 4] = [
        MethodId::SeNystrom,
        MethodId::SeCollocation,
        MethodId::DeNystrom,
        MethodId::DeCollocation,
    ];

    pub fn kind(self) -> TransformKind {
        match self {
            MethodId::SeNystrom | MethodId::SeCollocation => TransformKind::Se,
            MethodId::DeNystrom | MethodId::DeCollocation => TransformKind::De,
        }
    }

    pub fn is_nystrom(self) -> bool {
        matches!(self, MethodId::SeNystrom | MethodId::DeNystrom)
    }

    pub fn name(self) -> &'static str {
        match self {
            MethodId::SeNystrom => "se-nystrom",
            MethodId::SeCollocation => "se-collocation",
            MethodId::DeNystrom => "de-nystrom",
            MethodId::DeCollocation => "de-collocation",
        }
    }

    /// Parses `all` or a comma-separated list of method names.
    pub fn parse_list(s: &str) -> std::result::Result<Vec<MethodId>, String> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        s.split(',').map(|m| m.trim().parse()).collect()
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        MethodId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown method '{s}' (expected se-nystrom, se-collocation, de-nystrom or de-collocation)"
                )
            })
    }
}

/// A solved problem, ready for evaluation.
#[derive(Debug, Clone)]
pub enum Solution {
    Nystrom(NystromSolution),
    Collocation(CollocationSolution),
}

impl Solution {
    pub fn step(&self) -> f64 {
        match self {
            Solution::Nystrom(s) => s.values.grid.h,
            Solution::Collocation(s) => s.values.grid.h,
        }
    }
}

impl Evaluator for Solution {
    fn eval(&self, t: f64) -> Result<Vec<f64>> {
        match self {
            Solution::Nystrom(s) => s.eval(t),
            Solution::Collocation(s) => s.eval(t),
        }
    }
}

/// Builds the grid matching `method` and solves the example with it.
pub fn solve_method(method: MethodId, example: &ExampleProblem, n: usize) -> Result<Solution> {
    let kind = method.kind();
    let grid = build_grid(kind, *example.problem.interval(), example.params(kind), n)?;
    if method.is_nystrom() {
        nystrom_solve(&example.problem, &grid).map(Solution::Nystrom)
    } else {
        collocation_solve(&example.problem, &grid).map(Solution::Collocation)
    }
}

/// `points` equispaced interior points `a + l·(b − a)/(points + 1)`.
pub fn mesh(iv: &Interval, points: usize) -> Vec<f64> {
    let step = iv.width() / (points + 1) as f64;
    (1..=points).map(|l| iv.a + l as f64 * step).collect()
}

/// Maximum absolute componentwise error over the 999-point mesh.
pub fn max_error<E, X>(evaluator: E, exact: X, iv: &Interval) -> Result<f64>
where
    E: FnMut(f64) -> Result<Vec<f64>>,
    X: Fn(f64) -> Vec<f64>,
{
    max_error_on(evaluator, exact, &mesh(iv, MESH_POINTS))
}

/// Maximum absolute componentwise error over the given points.
pub fn max_error_on<E, X>(mut evaluator: E, exact: X, points: &[f64]) -> Result<f64>
where
    E: FnMut(f64) -> Result<Vec<f64>>,
    X: Fn(f64) -> Vec<f64>,
{
    let mut worst = 0.0f64;
    for (i, &t) in points.iter().enumerate() {
        let approx = evaluator(t).map_err(|e| Error::Evaluation {
            index: i + 1,
            t,
            reason: e.to_string(),
        })?;
        let reference = exact(t);
        for (u, v) in approx.iter().zip(&reference) {
            let diff = (u - v).abs();
            if diff.is_nan() {
                return Err(Error::Evaluation {
                    index: i + 1,
                    t,
                    reason: "NaN in solution".into(),
                });
            }
            worst = worst.max(diff);
        }
    }
    Ok(worst)
}

/// Error of `method` at `N` on the standard mesh.
pub fn method_error(method: MethodId, example: &ExampleProblem, n: usize) -> Result<f64> {
    let sol = solve_method(method, example, n)?;
    max_error(
        |t| sol.eval(t),
        |t| example.exact_at(t),
        example.problem.interval(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellMetrics {
    pub max_error: f64,
    pub solve_time_s: f64,
    pub eval_time_s: f64,
}

impl CellMetrics {
    pub fn total_time_s(&self) -> f64 {
        self.solve_time_s + self.eval_time_s
    }
}

/// One `(method, N)` cell of a sweep. `h` is absent when the step size itself
/// could not be formed.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub method: MethodId,
    pub n: usize,
    pub h: Option<f64>,
    pub outcome: std::result::Result<CellMetrics, String>,
}

impl Record {
    pub fn max_error(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|m| m.max_error)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvergenceReport {
    pub records: Vec<Record>,
}

impl ConvergenceReport {
    /// Errors of `method` in sweep order; failed cells are `None`.
    pub fn errors(&self, method: MethodId) -> Vec<(usize, Option<f64>)> {
        self.records
            .iter()
            .filter(|r| r.method == method)
            .map(|r| (r.n, r.max_error()))
            .collect()
    }

    pub fn all_failed(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.outcome.is_err())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; `1` runs every cell on the calling thread.
    pub jobs: usize,
    /// Timing repetitions per cell; the median is reported.
    pub repeats: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            repeats: 3,
        }
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

/// Solves and evaluates one cell, timing solve and mesh evaluation
/// separately (median of `repeats` runs each).
pub fn measure_cell(
    method: MethodId,
    example: &ExampleProblem,
    n: usize,
    repeats: usize,
) -> Result<CellMetrics> {
    let points = mesh(example.problem.interval(), MESH_POINTS);
    let repeats = repeats.max(1);
    let mut solve_times = Vec::with_capacity(repeats);
    let mut eval_times = Vec::with_capacity(repeats);
    let mut max_err = 0.0;
    for rep in 0..repeats {
        let start = Instant::now();
        let sol = solve_method(method, example, n)?;
        solve_times.push(start.elapsed().as_secs_f64());

        let start = Instant::now();
        let values = points
            .iter()
            .map(|&t| sol.eval(t))
            .collect::<Result<Vec<_>>>()?;
        eval_times.push(start.elapsed().as_secs_f64());

        if rep == 0 {
            let mut it = values.into_iter();
            max_err = max_error_on(
                |_| Ok(it.next().expect("one value per mesh point")),
                |t| example.exact_at(t),
                &points,
            )?;
        }
    }
    Ok(CellMetrics {
        max_error: max_err,
        solve_time_s: median(solve_times),
        eval_time_s: median(eval_times),
    })
}

fn run_cell(method: MethodId, example: &ExampleProblem, n: usize, repeats: usize) -> Record {
    let kind = method.kind();
    let h = crate::transform::step_size(kind, &example.params(kind), n).ok();
    Record {
        method,
        n,
        h,
        outcome: measure_cell(method, example, n, repeats).map_err(|e| e.to_string()),
    }
}

/// Error and timing for every `(method, N)` pair, method-major in input
/// order. Failed cells are recorded, not propagated.
pub fn convergence_sweep(
    example: &ExampleProblem,
    methods: &[MethodId],
    n_list: &[usize],
    opts: SweepOptions,
) -> Result<ConvergenceReport> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams(
            "N list must be strictly ascending".into(),
        ));
    }
    let cells: Vec<(MethodId, usize)> = methods
        .iter()
        .flat_map(|&m| n_list.iter().map(move |&n| (m, n)))
        .collect();
    let records = if opts.jobs <= 1 {
        cells
            .iter()
            .map(|&(m, n)| run_cell(m, example, n, opts.repeats))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
        pool.install(|| {
            cells
                .par_iter()
                .map(|&(m, n)| run_cell(m, example, n, opts.repeats))
                .collect()
        })
    };
    Ok(ConvergenceReport { records })
}

/// One row of the accuracy benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub method: MethodId,
    /// Smallest `N` found meeting the target, or the largest tried when
    /// `saturated`.
    pub n: usize,
    pub h: f64,
    pub saturated: bool,
    pub metrics: CellMetrics,
}

/// Smallest `N` (doubling from 1, then bisection) whose error is within
/// `target`; `Err(N)` with the cap if none up to `max_n` is.
fn search_n(
    method: MethodId,
    example: &ExampleProblem,
    target: f64,
    max_n: usize,
) -> std::result::Result<usize, usize> {
    let ok = |n: usize| matches!(method_error(method, example, n), Ok(e) if e <= target);
    let mut lo = 0;
    let mut n = 1;
    let hi = loop {
        if ok(n) {
            break n;
        }
        if n >= max_n {
            return Err(n);
        }
        lo = n;
        n = (2 * n).min(max_n);
    };
    let mut hi = hi;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// For each method: the smallest `N` reaching `target` and the time to solve
/// and evaluate on the mesh at that `N`.
pub fn accuracy_benchmark(
    example: &ExampleProblem,
    methods: &[MethodId],
    target: f64,
    repeats: usize,
) -> Result<Vec<std::result::Result<BenchRow, (MethodId, String)>>> {
    accuracy_benchmark_capped(example, methods, target, repeats, BENCH_MAX_N)
}

pub fn accuracy_benchmark_capped(
    example: &ExampleProblem,
    methods: &[MethodId],
    target: f64,
    repeats: usize,
    max_n: usize,
) -> Result<Vec<std::result::Result<BenchRow, (MethodId, String)>>> {
    if target.is_nan() || target <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "target {target} must be positive"
        )));
    }
    Ok(methods
        .iter()
        .map(|&method| {
            let (n, saturated) = match search_n(method, example, target, max_n) {
                Ok(n) => (n, false),
                Err(n) => (n, true),
            };
            let kind = method.kind();
            let h = crate::transform::step_size(kind, &example.params(kind), n)
                .map_err(|e| (method, e.to_string()))?;
            let metrics =
                measure_cell(method, example, n, repeats).map_err(|e| (method, e.to_string()))?;
            Ok(BenchRow {
                method,
                n,
                h,
                saturated,
                metrics,
            })
        })
        .collect())
}

/// Shortest round-trip decimal; exponent form for very small or large
/// magnitudes.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if v != 0.0 && v.is_finite() && !(1e-4..1e6).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

pub const CONVERGENCE_HEADER: &str = "method,N,h,max_error,solve_time_s,eval_time_s";

/// Writes the report as CSV; failed cells carry `NaN` metrics.
pub fn emit_csv<W: Write>(report: &ConvergenceReport, sink: &mut W) -> io::Result<()> {
    writeln!(sink, "{CONVERGENCE_HEADER}")?;
    for r in &report.records {
        let h = r.h.map_or_else(|| "NaN".to_string(), fmt_num);
        match &r.outcome {
            Ok(m) => writeln!(
                sink,
                "{},{},{},{},{},{}",
                r.method,
                r.n,
                h,
                fmt_num(m.max_error),
                fmt_num(m.solve_time_s),
                fmt_num(m.eval_time_s)
            )?,
            Err(_) => writeln!(sink, "{},{},{},NaN,NaN,NaN", r.method, r.n, h)?,
        }
    }
    Ok(())
}

pub const BENCH_HEADER: &str =
    "method,N,h,max_error,solve_time_s,eval_time_s,total_time_s,saturated";

pub fn emit_bench_csv<W: Write>(
    rows: &[std::result::Result<BenchRow, (MethodId, String)>],
    sink: &mut W,
) -> io::Result<()> {
    writeln!(sink, "{BENCH_HEADER}")?;
    for row in rows {
        match row {
            Ok(r) => writeln!(
                sink,
                "{},{},{},{},{},{},{},{}",
                r.method,
                r.n,
                fmt_num(r.h),
                fmt_num(r.metrics.max_error),
                fmt_num(r.metrics.solve_time_s),
                fmt_num(r.metrics.eval_time_s),
                fmt_num(r.metrics.total_time_s()),
                r.saturated
            )?,
            Err((m, _)) => writeln!(sink, "{m},NaN,NaN,NaN,NaN,NaN,NaN,false")?,
        }
    }
    Ok(())
}

/// Writes `t, y_i…, exact_i…, abs_err_i…` at `points` interior mesh points.
pub fn emit_solution_csv<W: Write>(
    example: &ExampleProblem,
    solution: &Solution,
    points: usize,
    sink: &mut W,
) -> Result<()> {
    let n = example.problem.dim();
    let io_err = |e: io::Error| Error::InvalidParams(format!("write failed: {e}"));
    let mut header = vec!["t".to_string()];
    for prefix in ["y", "exact", "abs_err"] {
        header.extend((1..=n).map(|i| format!("{prefix}_{i}")));
    }
    writeln!(sink, "{}", header.join(",")).map_err(io_err)?;
    for (l, t) in mesh(example.problem.interval(), points)
        .into_iter()
        .enumerate()
    {
        let y = solution.eval(t).map_err(|e| Error::Evaluation {
            index: l + 1,
            t,
            reason: e.to_string(),
        })?;
        let exact = example.exact_at(t);
        let mut fields = vec![fmt_num(t)];
        fields.extend(y.iter().map(|&v| fmt_num(v)));
        fields.extend(exact.iter().map(|&v| fmt_num(v)));
        fields.extend(y.iter().zip(&exact).map(|(u, v)| fmt_num((u - v).abs())));
        writeln!(sink, "{}", fields.join(",")).map_err(io_err)?;
    }
    Ok(())
}

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
