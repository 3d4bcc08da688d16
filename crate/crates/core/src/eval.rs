//! Counted access to the objective.

use crate::bracketing::Domain;
use crate::error::Interrupt;
use crate::polygonal::{EvalPoint, InsertOutcome, Polygonal};
use crate::trace::{Event, StepKind, Trace, TraceLevel};

/// Running global minimum of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Best {
    pub x: f64,
    pub y: f64,
}

impl Best {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Adopts `p` when strictly lower; returns whether it did.
    pub fn offer(&mut self, p: EvalPoint) -> bool {
        if p.y < self.y {
            self.x = p.x;
            self.y = p.y;
            true
        } else {
            false
        }
    }
}

/// The objective together with the number of times it has been called.
///
/// All calls to the objective during a run go through [`EvalContext::evaluate`].
pub struct EvalContext<'f> {
    objective: &'f mut dyn FnMut(f64) -> f64,
    nff: usize,
    domain: Domain,
    max_evals: Option<usize>,
    lowest: Option<Best>,
    trace: Trace,
}

impl<'f> EvalContext<'f> {
    pub fn new(
        objective: &'f mut dyn FnMut(f64) -> f64,
        domain: Domain,
        max_evals: Option<usize>,
        trace_level: TraceLevel,
    ) -> Self {
        Self {
            objective,
            nff: 0,
            domain,
            max_evals,
            lowest: None,
            trace: Trace::new(trace_level),
        }
    }

    /// Number of objective calls so far.
    pub fn nff(&self) -> usize {
        self.nff
    }

    /// Lowest finite value returned by the objective so far.
    pub fn lowest(&self) -> Option<Best> {
        self.lowest
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn into_trace(self) -> Trace {
        self.trace
    }

    /// Appends a trace event stamped with the current evaluation count.
    pub fn record(&mut self, x: Option<f64>, y: Option<f64>, event: Event) {
        self.trace.record(self.nff, x, y, event);
    }

    pub fn evaluate(&mut self, x: f64) -> Result<f64, Interrupt> {
        assert!(
            self.domain.contains(x),
            "abscissa {x} outside [{}, {}]",
            self.domain.xinf,
            self.domain.xsup
        );
        if self.max_evals.is_some_and(|max| self.nff >= max) {
            return Err(Interrupt::Budget);
        }
        self.nff += 1;
        let y = (self.objective)(x);
        self.record(Some(x), Some(y), Event::Evaluation {});
        if !y.is_finite() {
            return Err(Interrupt::NonFinite { x, y });
        }
        if self.lowest.is_none_or(|b| y < b.y) {
            self.lowest = Some(Best::new(x, y));
        }
        Ok(y)
    }
}

/// Proposes `x` to the polygonal, evaluating it when new, and keeps `best`
/// up to date.
pub fn insert_counted(
    ctx: &mut EvalContext<'_>,
    poly: &mut Polygonal,
    best: &mut Best,
    x: f64,
    step: StepKind,
    xtol: f64,
) -> Result<InsertOutcome, Interrupt> {
    ctx.record(Some(x), None, Event::Proposal { step });
    let out = poly.insert_point(x, None, false, xtol, |x| ctx.evaluate(x))?;
    match out {
        InsertOutcome::Added { point, .. } => {
            best.offer(point);
        }
        InsertOutcome::Duplicate { point, .. } => ctx.record(
            Some(x),
            None,
            Event::Duplicate {
                step,
                existing: point.x,
            },
        ),
    }
    Ok(out)
}
