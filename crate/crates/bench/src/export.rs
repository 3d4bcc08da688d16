//! Plot-ready columnar files from a run trace.
//!
//! Layout of the output directory:
//!
//! - `samples.csv`: `x,y` dense samples of the objective
//! - `evaluations.csv`: `ordinal,nff,x,y,step` every evaluation in order
//! - `snapshots.csv`: `pass,index,x,y,refined` the polygonal at the start of
//!   each refinement pass
//! - `interpolants.csv`: `curve,step,x,y` each recorded parabola or cubic
//!   sampled at [`CURVE_POINTS`] abscissas over its node span
//! - `manifest.json`: schema, version, file names and row counts

use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;

use polymin::interpolation::lagrange_eval;
use polymin::{Domain, EvalPoint, Event, StepKind, Trace};

pub const PLOT_SCHEMA: &str = "polymin-plot";
pub const PLOT_SCHEMA_VERSION: u32 = 1;
pub const CURVE_POINTS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotManifest {
    pub schema: String,
    pub version: u32,
    pub domain: [f64; 2],
    pub samples: usize,
    pub evaluations: usize,
    pub passes: usize,
    pub interpolants: usize,
    pub files: Vec<String>,
}

fn step_name(s: StepKind) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn curve(nodes: &[[f64; 2]]) -> Option<Vec<(f64, f64)>> {
    let pts: Vec<EvalPoint> = nodes.iter().map(|&[x, y]| EvalPoint::new(x, y)).collect();
    let lo = pts.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let hi = pts.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let eval: Box<dyn Fn(f64) -> f64> = match pts.len() {
        3 => {
            let p: [EvalPoint; 3] = pts.try_into().ok()?;
            Box::new(move |x| lagrange_eval(&p, x))
        }
        4 => {
            let p: [EvalPoint; 4] = pts.try_into().ok()?;
            Box::new(move |x| lagrange_eval(&p, x))
        }
        _ => return None,
    };
    Some(
        (0..CURVE_POINTS)
            .map(|i| {
                let x = lo + (hi - lo) * i as f64 / (CURVE_POINTS - 1) as f64;
                (x, eval(x))
            })
            .collect(),
    )
}

/// Writes the plot files for `trace` into `out_dir`, sampling `objective`
/// at `samples` points over `domain`.
pub fn export_plot_data(
    objective: &dyn Fn(f64) -> f64,
    domain: Domain,
    trace: &Trace,
    samples: usize,
    out_dir: &Path,
) -> anyhow::Result<PlotManifest> {
    anyhow::ensure!(samples >= 2, "need at least two samples");
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    let open = |name: &str| -> anyhow::Result<csv::Writer<fs::File>> {
        let path = out_dir.join(name);
        csv::Writer::from_path(&path).with_context(|| format!("creating {}", path.display()))
    };

    let mut w = open("samples.csv")?;
    w.write_record(["x", "y"])?;
    for i in 0..samples {
        let x = domain.xinf + domain.width() * i as f64 / (samples - 1) as f64;
        w.serialize((x, objective(x)))?;
    }
    w.flush()?;

    let mut evaluations = 0;
    let mut w = open("evaluations.csv")?;
    w.write_record(["ordinal", "nff", "x", "y", "step"])?;
    let mut pending = None;
    for e in trace.events() {
        match e.event {
            Event::Proposal { step } => pending = Some(step),
            Event::Duplicate { .. } => pending = None,
            Event::Evaluation {} => {
                evaluations += 1;
                let step = pending.take().map(step_name).unwrap_or_default();
                w.serialize((evaluations, e.nff, e.x, e.y, step))?;
            }
            _ => {}
        }
    }
    w.flush()?;

    let mut passes = 0;
    let mut w = open("snapshots.csv")?;
    w.write_record(["pass", "index", "x", "y", "refined"])?;
    for (pass, points) in trace.snapshots() {
        passes += 1;
        for (i, p) in points.iter().enumerate() {
            w.serialize((pass, i, p.x, p.y, p.refined))?;
        }
    }
    w.flush()?;

    let mut interpolants = 0;
    let mut w = open("interpolants.csv")?;
    w.write_record(["curve", "step", "x", "y"])?;
    for e in trace.events() {
        if let Event::Interpolation { step, nodes, .. } = &e.event {
            let Some(rows) = curve(nodes) else { continue };
            interpolants += 1;
            let name = step_name(*step);
            for (x, y) in rows {
                w.serialize((interpolants, &name, x, y))?;
            }
        }
    }
    w.flush()?;

    let manifest = PlotManifest {
        schema: PLOT_SCHEMA.into(),
        version: PLOT_SCHEMA_VERSION,
        domain: [domain.xinf, domain.xsup],
        samples,
        evaluations,
        passes,
        interpolants,
        files: ["samples.csv", "evaluations.csv", "snapshots.csv", "interpolants.csv"]
            .map(String::from)
            .to_vec(),
    };
    fs::write(out_dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
    Ok(manifest)
}
