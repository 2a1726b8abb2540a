use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sinc_ivp::harness::{
    accuracy_benchmark, convergence_sweep, emit_bench_csv, emit_csv, emit_solution_csv,
    solve_method, MethodId, SweepOptions, MESH_POINTS,
};
use sinc_ivp::ExampleId;

const EXIT_BAD_ARGS: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sinc-ivp",
    version,
    about = "SE/DE Sinc-Nystrom and Sinc-collocation solvers for linear IVPs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one example with one method and tabulate the solution on a mesh.
    Solve {
        #[arg(long)]
        example: ExampleId,
        #[arg(long)]
        method: MethodId,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = MESH_POINTS)]
        points: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Maximum error and timings over a list of N for several methods.
    Converge {
        #[arg(long)]
        example: ExampleId,
        /// `all` or a comma-separated list of method names
        #[arg(long, default_value = "all")]
        methods: String,
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Smallest N reaching a target accuracy, with solve and evaluation time.
    Bench {
        #[arg(long)]
        example: ExampleId,
        #[arg(long, default_value_t = 1e-8)]
        target: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn open_sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    let io_fail = |e: io::Error| (EXIT_BAD_ARGS, format!("output: {e}"));
    match cli.command {
        Command::Solve {
            example,
            method,
            n,
            points,
            output,
        } => {
            let ex = example.build();
            let sol = solve_method(method, &ex, n).map_err(|e| (EXIT_SOLVER, e.to_string()))?;
            let mut sink = open_sink(&output).map_err(io_fail)?;
            emit_solution_csv(&ex, &sol, points, &mut sink)
                .map_err(|e| (EXIT_SOLVER, e.to_string()))?;
            sink.flush().map_err(io_fail)?;
        }
        Command::Converge {
            example,
            methods,
            n_list,
            jobs,
            output,
        } => {
            let methods = MethodId::parse_list(&methods).map_err(|e| (EXIT_BAD_ARGS, e))?;
            let ex = example.build();
            let opts = SweepOptions {
                jobs: jobs.max(1),
                ..SweepOptions::default()
            };
            let report = convergence_sweep(&ex, &methods, &n_list, opts)
                .map_err(|e| (EXIT_BAD_ARGS, e.to_string()))?;
            let mut sink = open_sink(&output).map_err(io_fail)?;
            emit_csv(&report, &mut sink).map_err(io_fail)?;
            sink.flush().map_err(io_fail)?;
            for r in &report.records {
                if let Err(msg) = &r.outcome {
                    eprintln!("warning: {} N={}: {msg}", r.method, r.n);
                }
            }
            if report.all_failed() {
                return Err((EXIT_SOLVER, "every requested cell failed".into()));
            }
        }
        Command::Bench {
            example,
            target,
            output,
        } => {
            let ex = example.build();
            let rows = accuracy_benchmark(&ex, &MethodId::ALL, target, 3)
                .map_err(|e| (EXIT_BAD_ARGS, e.to_string()))?;
            let mut sink = open_sink(&output).map_err(io_fail)?;
            emit_bench_csv(&rows, &mut sink).map_err(io_fail)?;
            sink.flush().map_err(io_fail)?;
            for (m, msg) in rows.iter().filter_map(|r| r.as_ref().err()) {
                eprintln!("warning: {m}: {msg}");
            }
            if rows.iter().all(|r| r.is_err()) {
                return Err((EXIT_SOLVER, "every method failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
