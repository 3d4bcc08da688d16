//! Classic single-bracket minimizers to compare against.

use polymin::{
    refine_triplet, Domain, EvalContext, EvalPoint, Event, RefineParams, RefineStrategy, SearchError, StepKind, Trace,
    TraceLevel, CGOLD, GOLD,
};

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineResult {
    pub xmin: f64,
    pub ymin: f64,
    /// Evaluations spent by the baseline itself; the bracket is given.
    pub n_evals: usize,
    pub trace: Trace,
}

fn check_bracket(b: &[EvalPoint; 3]) -> Result<(), SearchError> {
    let [a, m, c] = b;
    if a.x < m.x && m.x < c.x && m.y <= a.y && m.y <= c.y {
        Ok(())
    } else {
        Err(SearchError::InvalidStart(format!(
            "not a bracketing triplet: ({}, {}) ({}, {}) ({}, {})",
            a.x, a.y, m.x, m.y, c.x, c.y
        )))
    }
}

/// Golden-section search on the outer interval of `bracket` until it is
/// narrower than `tol` (absolute). Each step shrinks the interval by `GOLD`.
pub fn baseline_golden<F>(
    mut objective: F,
    bracket: [EvalPoint; 3],
    tol: f64,
    trace_level: TraceLevel,
) -> Result<BaselineResult, SearchError>
where
    F: FnMut(f64) -> f64,
{
    check_bracket(&bracket)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(SearchError::InvalidConfig(format!("tol {tol} must be positive")));
    }
    let [pa, pm, pc] = bracket;
    let mut ctx = EvalContext::new(&mut objective, Domain::new(pa.x, pc.x)?, None, trace_level);
    let eval = |ctx: &mut EvalContext<'_>, x: f64| -> Result<f64, SearchError> {
        ctx.record(Some(x), None, Event::Proposal { step: StepKind::Golden });
        ctx.evaluate(x).map_err(|e| match e {
            polymin::Interrupt::NonFinite { x, y } => SearchError::NonFinite {
                x,
                y,
                trace: Box::new(Trace::new(TraceLevel::Off)),
            },
            polymin::Interrupt::Budget => unreachable!("no budget set"),
        })
    };

    let (mut a, mut b) = (pa.x, pc.x);
    let mut best = pm;
    let mut x1 = a + CGOLD * (b - a);
    let mut x2 = a + GOLD * (b - a);
    let mut f1 = eval(&mut ctx, x1)?;
    let mut f2 = eval(&mut ctx, x2)?;
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + CGOLD * (b - a);
            f1 = eval(&mut ctx, x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLD * (b - a);
            f2 = eval(&mut ctx, x2)?;
        }
    }
    for (x, y) in [(x1, f1), (x2, f2)] {
        if y < best.y {
            best = EvalPoint::new(x, y);
        }
    }
    Ok(BaselineResult {
        xmin: best.x,
        ymin: best.y,
        n_evals: ctx.nff(),
        trace: ctx.into_trace(),
    })
}

/// Successive parabolic interpolation with golden fallback, from `bracket`.
pub fn baseline_parabola_only<F>(
    objective: F,
    bracket: [EvalPoint; 3],
    xtol: f64,
    ftol: f64,
    n_max_failed: usize,
    trace_level: TraceLevel,
) -> Result<BaselineResult, SearchError>
where
    F: FnMut(f64) -> f64,
{
    let params = RefineParams {
        xtol,
        ftol,
        n_max_failed,
        strategy: RefineStrategy::ParabolaOnly,
    };
    let r = refine_triplet(objective, bracket, params, trace_level)?;
    Ok(BaselineResult {
        xmin: r.xmin,
        ymin: r.ymin,
        n_evals: r.n_evals,
        trace: r.trace,
    })
}
