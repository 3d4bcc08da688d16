//! Head-to-head runs of the solver and the baselines over a corpus.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;

use polymin::{
    min_search_1d, refine_triplet, BoundsConfig, EvalPoint, RefineParams, RefineStrategy, SearchError, SolverConfig,
    Trace, TraceLevel,
};

use crate::baselines::{baseline_golden, baseline_parabola_only};
use crate::corpus::CorpusEntry;
use crate::oracle::{dense_oracle, Oracle, ORACLE_GRID};

pub const REPORT_SCHEMA: &str = "polymin-bench-report";
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// The full two-phase solver.
    Mixed,
    /// Successive parabolas from the first bracket.
    ParabolaOnly,
    /// Golden-section search from the first bracket.
    Golden,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Mixed, Method::ParabolaOnly, Method::Golden];

    pub fn name(self) -> &'static str {
        match self {
            Method::Mixed => "mixed",
            Method::ParabolaOnly => "parabola-only",
            Method::Golden => "golden",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchConfig {
    pub methods: Vec<Method>,
    pub xtol: f64,
    pub ftol: f64,
    pub seed: u64,
    pub bounds: bool,
    pub sliding: bool,
    pub max_evals: Option<usize>,
    pub trace_level: TraceLevel,
    pub oracle_grid: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            methods: Method::ALL.to_vec(),
            xtol: 1e-6,
            ftol: 1e-6,
            seed: 0,
            bounds: true,
            sliding: false,
            max_evals: None,
            trace_level: TraceLevel::Full,
            oracle_grid: ORACLE_GRID,
        }
    }
}

impl BenchConfig {
    pub fn solver_config(&self, entry: &CorpusEntry) -> SolverConfig {
        let mut c = SolverConfig::new(entry.domain());
        c.xtol = self.xtol;
        c.ftol = self.ftol;
        c.rng_seed = self.seed;
        c.bounds = BoundsConfig {
            enabled: self.bounds,
            ..BoundsConfig::default()
        };
        c.sliding_cubic_stage = self.sliding;
        c.max_evals = self.max_evals;
        c.trace_level = self.trace_level;
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub function: String,
    pub method: Method,
    pub n_evals: usize,
    pub xmin: f64,
    pub ymin: f64,
    pub x_star: f64,
    pub f_star: f64,
    /// `|ymin - f_star|`
    pub error: f64,
    pub success: bool,
    pub termination: String,
    pub trace_file: Option<PathBuf>,
    /// Set when the cell could not be run.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodTotals {
    pub method: Method,
    pub cells: usize,
    pub successes: usize,
    pub n_evals: usize,
}

/// Refinement cost of both strategies on the same first bracket.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyRow {
    pub function: String,
    pub bracket: [EvalPoint; 3],
    pub mixed: usize,
    pub parabola_only: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyComparison {
    pub rows: Vec<StrategyRow>,
    /// Rows where the mixed strategy used no more evaluations.
    pub mixed_not_worse: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub schema: String,
    pub version: u32,
    pub config: BenchConfig,
    pub oracles: Vec<(String, Oracle)>,
    pub cells: Vec<Cell>,
    pub totals: Vec<MethodTotals>,
    pub strategy: StrategyComparison,
}

struct CellRun {
    n_evals: usize,
    xmin: f64,
    ymin: f64,
    termination: String,
    trace: Option<Trace>,
}

struct FunctionRuns {
    oracle: Oracle,
    cells: Vec<(Method, Result<CellRun, String>)>,
    strategy: Option<StrategyRow>,
}

fn run_function(entry: &CorpusEntry, cfg: &BenchConfig) -> FunctionRuns {
    let f = |x: f64| entry.eval(x);
    let oracle = dense_oracle(&f, entry.xinf, entry.xsup, cfg.oracle_grid);
    let solver_cfg = cfg.solver_config(entry);
    let solved = min_search_1d(f, &[], &solver_cfg).map_err(|e| e.to_string());

    let bracket = solved
        .as_ref()
        .ok()
        .and_then(|r| r.exploration)
        .and_then(|e| e.first_triplet.map(|t| (t, e.evals_at_triplet)));
    let params = |strategy| RefineParams {
        xtol: cfg.xtol,
        ftol: cfg.ftol,
        n_max_failed: solver_cfg.bounds.n_max_failed,
        strategy,
    };

    let baseline = |method: Method| -> Result<CellRun, String> {
        let r = solved.as_ref().map_err(Clone::clone)?;
        let Some((t, spent)) = bracket else {
            // no bracket: exploration alone decided the answer
            let e = r.exploration;
            let best = e.and_then(|e| e.best_at_end);
            return Ok(CellRun {
                n_evals: e.map_or(r.n_evals, |e| e.evals_at_end),
                xmin: best.map_or(r.xmin, |b| b.x),
                ymin: best.map_or(r.ymin, |b| b.y),
                termination: "no_bracket".into(),
                trace: Some(r.trace.clone()),
            });
        };
        let out = match method {
            Method::Golden => baseline_golden(f, t, cfg.xtol * (1.0 + t[1].x.abs()), cfg.trace_level),
            _ => baseline_parabola_only(
                f,
                t,
                cfg.xtol,
                cfg.ftol,
                solver_cfg.bounds.n_max_failed,
                cfg.trace_level,
            ),
        }
        .map_err(|e: SearchError| e.to_string())?;
        Ok(CellRun {
            n_evals: spent + out.n_evals,
            xmin: out.xmin,
            ymin: out.ymin,
            termination: "converged".into(),
            trace: Some(out.trace),
        })
    };

    let cells = cfg
        .methods
        .iter()
        .map(|&m| {
            let run = match m {
                Method::Mixed => solved.clone().map(|r| CellRun {
                    n_evals: r.n_evals,
                    xmin: r.xmin,
                    ymin: r.ymin,
                    termination: serde_json::to_value(r.termination)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default(),
                    trace: Some(r.trace),
                }),
                _ => baseline(m),
            };
            (m, run)
        })
        .collect();

    let strategy = bracket.and_then(|(t, _)| {
        let mixed = refine_triplet(f, t, params(RefineStrategy::Mixed), TraceLevel::Off).ok()?;
        let para = refine_triplet(f, t, params(RefineStrategy::ParabolaOnly), TraceLevel::Off).ok()?;
        Some(StrategyRow {
            function: entry.name.clone(),
            bracket: t,
            mixed: mixed.n_evals,
            parabola_only: para.n_evals,
        })
    });

    FunctionRuns {
        oracle,
        cells,
        strategy,
    }
}

fn write_trace(dir: &Path, function: &str, method: Method, trace: &Trace) -> anyhow::Result<PathBuf> {
    let path = dir.join(format!("{function}.{}.jsonl", method.name()));
    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    trace.write_jsonl(BufWriter::new(file))?;
    Ok(path)
}

/// Runs every selected method on every entry. With `out_dir`, writes one
/// trace per cell under `traces/` plus `report.json` and `report.txt`.
pub fn run_benchmark(corpus: &[CorpusEntry], cfg: &BenchConfig, out_dir: Option<&Path>) -> anyhow::Result<BenchReport> {
    anyhow::ensure!(!corpus.is_empty(), "empty corpus selection");
    anyhow::ensure!(!cfg.methods.is_empty(), "no methods selected");
    anyhow::ensure!(cfg.xtol > 0.0 && cfg.ftol > 0.0, "tolerances must be positive");
    let trace_dir = match out_dir {
        Some(d) => {
            let t = d.join("traces");
            fs::create_dir_all(&t).with_context(|| format!("creating {}", t.display()))?;
            Some(t)
        }
        None => None,
    };

    let runs: Vec<FunctionRuns> = corpus.par_iter().map(|e| run_function(e, cfg)).collect();

    let mut cells = Vec::new();
    let mut oracles = Vec::new();
    let mut rows = Vec::new();
    for (entry, run) in corpus.iter().zip(runs) {
        let o = run.oracle;
        oracles.push((entry.name.clone(), o));
        rows.extend(run.strategy);
        for (method, res) in run.cells {
            let cell = match res {
                Ok(c) => {
                    let trace_file = match (&trace_dir, &c.trace) {
                        (Some(d), Some(t)) => Some(write_trace(d, &entry.name, method, t)?),
                        _ => None,
                    };
                    let ytol = cfg.ftol * (1.0 + o.f.abs());
                    Cell {
                        function: entry.name.clone(),
                        method,
                        n_evals: c.n_evals,
                        xmin: c.xmin,
                        ymin: c.ymin,
                        x_star: o.x,
                        f_star: o.f,
                        error: (c.ymin - o.f).abs(),
                        success: c.ymin <= o.f + ytol || (c.xmin - o.x).abs() <= cfg.xtol * (1.0 + o.x.abs()),
                        termination: c.termination,
                        trace_file,
                        failure: None,
                    }
                }
                Err(msg) => Cell {
                    function: entry.name.clone(),
                    method,
                    n_evals: 0,
                    xmin: f64::NAN,
                    ymin: f64::NAN,
                    x_star: o.x,
                    f_star: o.f,
                    error: f64::NAN,
                    success: false,
                    termination: "failed".into(),
                    trace_file: None,
                    failure: Some(msg),
                },
            };
            cells.push(cell);
        }
    }

    let totals = cfg
        .methods
        .iter()
        .map(|&m| {
            let mine: Vec<&Cell> = cells.iter().filter(|c| c.method == m).collect();
            MethodTotals {
                method: m,
                cells: mine.len(),
                successes: mine.iter().filter(|c| c.success).count(),
                n_evals: mine.iter().map(|c| c.n_evals).sum(),
            }
        })
        .collect();
    let mixed_not_worse = rows.iter().filter(|r| r.mixed <= r.parabola_only).count();
    let fraction = if rows.is_empty() {
        f64::NAN
    } else {
        mixed_not_worse as f64 / rows.len() as f64
    };

    let report = BenchReport {
        schema: REPORT_SCHEMA.into(),
        version: REPORT_SCHEMA_VERSION,
        config: cfg.clone(),
        oracles,
        cells,
        totals,
        strategy: StrategyComparison {
            rows,
            mixed_not_worse,
            fraction,
        },
    };
    if let Some(d) = out_dir {
        let json = serde_json::to_string_pretty(&report)?;
        fs::write(d.join("report.json"), json)?;
        fs::write(d.join("report.txt"), render_table(&report))?;
    }
    Ok(report)
}

/// Plain-text rendering of a report.
pub fn render_table(r: &BenchReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<12} {:<14} {:>7} {:>14} {:>15} {:>15} {:>10}  ok",
        "function", "method", "n_evals", "xmin", "ymin", "f*", "|ymin-f*|"
    );
    for c in &r.cells {
        let _ = writeln!(
            s,
            "{:<12} {:<14} {:>7} {:>14.8} {:>15.9} {:>15.9} {:>10.2e}  {}",
            c.function,
            c.method.name(),
            c.n_evals,
            c.xmin,
            c.ymin,
            c.f_star,
            c.error,
            match (&c.failure, c.success) {
                (Some(e), _) => format!("error: {e}"),
                (None, true) => "yes".into(),
                (None, false) => "no".into(),
            }
        );
    }
    let _ = writeln!(s);
    for t in &r.totals {
        let _ = writeln!(
            s,
            "{:<14} {:>3}/{:<3} solved, {:>6} evaluations",
            t.method.name(),
            t.successes,
            t.cells,
            t.n_evals
        );
    }
    let st = &r.strategy;
    let _ = writeln!(
        s,
        "\nsame first bracket, refinement only: mixed <= parabola-only on {}/{} functions (fraction {:.3})",
        st.mixed_not_worse,
        st.rows.len(),
        st.fraction
    );
    for row in &st.rows {
        let _ = writeln!(
            s,
            "  {:<12} mixed {:>4}   parabola-only {:>4}",
            row.function, row.mixed, row.parabola_only
        );
    }
    s
}
