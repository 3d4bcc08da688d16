use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use polymin::{min_search_1d, TraceLevel};
use polymin_bench::corpus::Corpus;
use polymin_bench::export::export_plot_data;
use polymin_bench::harness::{render_table, run_benchmark, BenchConfig, Method};
use polymin_bench::oracle::{dense_oracle, ORACLE_GRID};

#[derive(Parser)]
#[command(
    name = "bench",
    about = "Benchmark harness for the polymin univariate global minimizer"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run methods over corpus functions and write a report.
    Run(RunArgs),
    /// List the corpus with oracle minima.
    List {
        /// Grid size of the dense oracle.
        #[arg(long, default_value_t = ORACLE_GRID)]
        grid: usize,
    },
    /// Run the solver on one function and write plot-ready files.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Off,
    Evaluations,
    Full,
}

impl From<Level> for TraceLevel {
    fn from(l: Level) -> Self {
        match l {
            Level::Off => TraceLevel::Off,
            Level::Evaluations => TraceLevel::Evaluations,
            Level::Full => TraceLevel::Full,
        }
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Seed of the generator behind random initial points.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance on x.
    #[arg(long, default_value_t = 1e-6)]
    xtol: f64,
    /// Relative tolerance on f.
    #[arg(long, default_value_t = 1e-6)]
    ftol: f64,
    /// Disable pruning of unpromising valleys.
    #[arg(long)]
    no_bounds: bool,
    /// Insert sliding-cubic minima before refinement.
    #[arg(long)]
    sliding: bool,
    /// Hard cap on objective evaluations per run.
    #[arg(long)]
    max_evals: Option<usize>,
    #[arg(long, value_enum, default_value = "full")]
    trace_level: Level,
}

impl SolverArgs {
    fn bench_config(&self, methods: Vec<Method>, grid: usize) -> BenchConfig {
        BenchConfig {
            methods,
            xtol: self.xtol,
            ftol: self.ftol,
            seed: self.seed,
            bounds: !self.no_bounds,
            sliding: self.sliding,
            max_evals: self.max_evals,
            trace_level: self.trace_level.into(),
            oracle_grid: grid,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Functions to run (repeatable); all when omitted.
    #[arg(long = "function", short = 'f')]
    functions: Vec<String>,
    /// Methods to run (repeatable); all when omitted.
    #[arg(long = "method", short = 'm', value_enum)]
    methods: Vec<Method>,
    #[command(flatten)]
    solver: SolverArgs,
    /// Output directory for report.json, report.txt and traces/.
    #[arg(long, short = 'o', default_value = "bench-out")]
    out: PathBuf,
    /// Grid size of the dense oracle.
    #[arg(long, default_value_t = ORACLE_GRID)]
    grid: usize,
}

#[derive(Args)]
struct ExportArgs {
    /// Corpus function to run.
    #[arg(long = "function", short = 'f')]
    function: String,
    #[command(flatten)]
    solver: SolverArgs,
    /// Output directory for the CSV files, manifest.json and trace.jsonl.
    #[arg(long, short = 'o', default_value = "plot-out")]
    out: PathBuf,
    /// Dense samples of the objective.
    #[arg(long, default_value_t = 2000)]
    samples: usize,
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let corpus = Corpus::builtin();
    let mut out = io::stdout().lock();
    match cli.command {
        Command::List { grid } => {
            writeln!(
                out,
                "{:<12} {:>8} {:>8} {:>16} {:>16} {:>6}  formula",
                "name", "xinf", "xsup", "x*", "f*", "minima"
            )?;
            for e in corpus.entries() {
                let o = dense_oracle(&|x| e.eval(x), e.xinf, e.xsup, grid);
                writeln!(
                    out,
                    "{:<12} {:>8} {:>8} {:>16.10} {:>16.10} {:>6}  {}",
                    e.name, e.xinf, e.xsup, o.x, o.f, o.local_minima, e.formula
                )?;
            }
        }
        Command::Run(args) => {
            let selection = corpus.select(&args.functions).map_err(anyhow::Error::msg)?;
            let methods = if args.methods.is_empty() {
                Method::ALL.to_vec()
            } else {
                args.methods
            };
            let cfg = args.solver.bench_config(methods, args.grid);
            // surface configuration errors before any work
            cfg.solver_config(&selection[0]).validate()?;
            let report = run_benchmark(&selection, &cfg, Some(&args.out))?;
            write!(out, "{}", render_table(&report))?;
            writeln!(out, "\nreport and traces written to {}", args.out.display())?;
        }
        Command::Export(args) => {
            let entry = corpus.get(&args.function).with_context(|| {
                format!(
                    "unknown function '{}' (known: {})",
                    args.function,
                    corpus.names().join(", ")
                )
            })?;
            let mut cfg = args
                .solver
                .bench_config(vec![Method::Mixed], ORACLE_GRID)
                .solver_config(entry);
            cfg.trace_level = TraceLevel::Full;
            let r = min_search_1d(|x| entry.eval(x), &[], &cfg)?;
            let m = export_plot_data(&|x| entry.eval(x), entry.domain(), &r.trace, args.samples, &args.out)?;
            let trace_path = args.out.join("trace.jsonl");
            r.trace
                .write_jsonl(std::io::BufWriter::new(std::fs::File::create(&trace_path)?))?;
            writeln!(
                out,
                "{}: xmin {} ymin {} after {} evaluations; {} passes, {} interpolants written to {}",
                entry.name,
                r.xmin,
                r.ymin,
                r.n_evals,
                m.passes,
                m.interpolants,
                args.out.display()
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        // reader went away, e.g. piped into head
        Err(e)
            if e.downcast_ref::<io::Error>()
                .is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) =>
        {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
