use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qgap_core::bounds::FriedlanderConvention;
use qgap_core::reduction::Mode;

use qgap::commands::{self, TestFunction};
use qgap::error::{exit, Error, Result};
use qgap::formats::{read_chain, read_graph, read_input, to_json, TraceFile};
use qgap::render::{emit, Format, Table};

/// Spectral gaps of quantum graphs, pumpkin-chain reduction and extremal
/// chains.
#[derive(Parser)]
#[command(name = "qgap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Metric,
    Combinatorial,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    AsPrinted,
    Shifted,
}

#[derive(Subcommand)]
enum Command {
    /// First nonzero eigenvalue of a graph (finite elements) or a chain file
    /// (shooting).
    Eig {
        input: PathBuf,
        /// Absolute tolerance on σ for chains, relative error for graphs.
        #[arg(long)]
        tol: Option<f64>,
        /// Initial mesh size for graphs.
        #[arg(long)]
        mesh: Option<f64>,
        /// Eigenvalue index (chains only).
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a graph to a pumpkin chain with the same diameter.
    Reduce {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "metric")]
        mode: ModeArg,
        /// Where to write the chain file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the trace file.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Evaluate the closed-form bounds, with λ₁ from finite elements.
    Bounds {
        input: PathBuf,
        /// Skip the eigenvalue and margins.
        #[arg(long)]
        no_lambda: bool,
        #[arg(long, value_enum, default_value = "as-printed")]
        friedlander: Convention,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        mesh: Option<f64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify an extremal chain.
    Extremal {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        j0: usize,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Also write the chain file here.
        #[arg(long)]
        chain_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample an eigenfunction or trial function of a chain file.
    Eigenfunction {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum)]
        test_function: Option<TestFunction>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized invariant suite.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn render<T: serde::Serialize>(value: &T, table: impl FnOnce() -> Table, format: Format) -> String {
    match format {
        Format::Json => to_json(value),
        Format::Table => table().to_text(),
        Format::Csv => table().to_csv(),
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Eig {
            input,
            tol,
            mesh,
            index,
            format,
            out,
        } => {
            let input = read_input(&input)?;
            let start = Instant::now();
            let report = commands::eig(&input, tol, mesh, index)?;
            let elapsed = start.elapsed();
            // runtime only in the text table, so JSON stays reproducible
            let table = || {
                let mut t = report.table();
                if format == Format::Table {
                    t.push(vec!["runtime".into(), format!("{elapsed:.3?}")]);
                }
                t
            };
            emit(&render(&report, table, format), out.as_deref())?;
        }
        Command::Reduce {
            input,
            mode,
            out,
            trace,
            format,
        } => {
            let g = read_graph(&input)?;
            let mode = match mode {
                ModeArg::Metric => Mode::Metric,
                ModeArg::Combinatorial => Mode::Combinatorial,
            };
            let (report, t) = commands::reduce_graph(&g, mode)?;
            if let Some(path) = &out {
                emit(&to_json(&report.chain), Some(path))?;
            }
            if let Some(path) = &trace {
                emit(&to_json(&TraceFile::from_trace(&t)), Some(path))?;
            }
            emit(&render(&report, || report.table(), format), None)?;
        }
        Command::Bounds {
            input,
            no_lambda,
            friedlander,
            tol,
            mesh,
            format,
            out,
        } => {
            let g = read_graph(&input)?;
            let convention = match friedlander {
                Convention::AsPrinted => FriedlanderConvention::AsPrinted,
                Convention::Shifted => FriedlanderConvention::Shifted,
            };
            let report = commands::bounds(&g, !no_lambda, tol, mesh, convention)?;
            emit(&render(&report, || report.table(), format), out.as_deref())?;
        }
        Command::Extremal {
            m,
            j0,
            n,
            a,
            tol,
            chain_out,
            format,
            out,
        } => {
            let report = commands::extremal(m, j0, n, a, tol)?;
            if let Some(path) = &chain_out {
                emit(&to_json(&report.chain), Some(path))?;
            }
            emit(&render(&report, || report.table(), format), out.as_deref())?;
            if !report.verified(1e-8) {
                return Err(Error::Verification("extremal chain failed verification".into()));
            }
        }
        Command::Eigenfunction {
            input,
            index,
            samples,
            test_function,
            tol,
            format,
            out,
        } => {
            let chain = read_chain(&input)?;
            let s = commands::eigenfunction(&chain, index, samples, test_function, tol)?;
            emit(&render(&s, || s.table(), format), out.as_deref())?;
        }
        Command::Verify {
            seed,
            count,
            format,
            out,
        } => {
            let summary = commands::verify_suite(seed, count)?;
            let mut text = render(&summary, || commands::summary_table(&summary), format);
            if format == Format::Table {
                for f in &summary.failures {
                    text.push_str(&format!("case {} {}: {}\n", f.case, f.check, f.detail));
                }
            }
            emit(&text, out.as_deref())?;
            if !summary.all_passed() {
                return Ok(exit::VERIFICATION);
            }
        }
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qgap: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
