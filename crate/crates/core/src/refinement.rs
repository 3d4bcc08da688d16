//! Refinement of the valleys of the polygonal.
//!
//! Each pass scans a snapshot of the polygonal for valleys that pass the
//! gates and pushes each toward the true local minimum: a parabola through the
//! current triplet first, a cubic through four points when the parabola does
//! not improve, golden subdivision of the larger side as a last resort. New
//! points go to the working polygonal; passes repeat until one adds nothing.

use serde::{Deserialize, Serialize};

use crate::bracketing::Domain;
use crate::error::{Interrupt, SearchError};
use crate::eval::{insert_counted, Best, EvalContext};
use crate::interpolation::{cubic_min, golden_subdivide, inside, parabola_min, CubicMin};
use crate::polygonal::{EvalPoint, InsertOutcome, Polygonal, Triplet};
use crate::trace::{Event, Gate, RefineStop, StepKind, Trace, TraceLevel};

/// Guards the slope denominator of the initial gate.
pub const EPS2: f64 = 1e-12;

/// Pruning of unpromising valleys.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsConfig {
    pub enabled: bool,
    /// Required drop (negative). Defaults to `-ftol * (1 + |fb|)`.
    pub delta_bound: Option<f64>,
    /// Required slope (negative). Defaults to the delta bound divided by the
    /// domain width.
    pub slope_bound: Option<f64>,
    /// Fraction of the known ordinate range, measured down from the maximum,
    /// that a valley center must lie below.
    pub k_ysup: f64,
    /// Consecutive evaluations without a new global minimum after which a
    /// valley is abandoned.
    pub n_max_failed: usize,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        Self {
            enabled: true,
            delta_bound: None,
            slope_bound: None,
            k_ysup: 0.5,
            n_max_failed: 4,
        }
    }
}

impl BoundsConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if let Some(d) = self.delta_bound {
            if !(d < 0.0) {
                return Err(SearchError::InvalidConfig(format!("delta_bound {d} must be negative")));
            }
        }
        if let Some(s) = self.slope_bound {
            if !(s < 0.0) {
                return Err(SearchError::InvalidConfig(format!("slope_bound {s} must be negative")));
            }
        }
        if !(0.0..=1.0).contains(&self.k_ysup) {
            return Err(SearchError::InvalidConfig(format!(
                "k_ysup {} not in [0, 1]",
                self.k_ysup
            )));
        }
        if self.n_max_failed == 0 {
            return Err(SearchError::InvalidConfig("n_max_failed must be at least 1".into()));
        }
        Ok(())
    }

    /// Fills in the default thresholds for a run whose better initial
    /// ordinate is `fb`.
    pub fn resolve(&self, ftol: f64, fb: f64, dom: Domain) -> Bounds {
        let delta = self.delta_bound.unwrap_or(-ftol * (1.0 + fb.abs()));
        let slope = self.slope_bound.unwrap_or(-ftol * (1.0 + fb.abs()) / dom.width());
        Bounds {
            enabled: self.enabled,
            delta_bound: delta,
            slope_bound: slope,
            k_ysup: self.k_ysup,
            n_max_failed: self.n_max_failed,
        }
    }
}

/// [`BoundsConfig`] with concrete thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub enabled: bool,
    pub delta_bound: f64,
    pub slope_bound: f64,
    pub k_ysup: f64,
    pub n_max_failed: usize,
}

/// Should the search start at all? With bounds enabled the initial pair must
/// show either a large enough drop or a steep enough slope.
pub fn initial_gate(xa: f64, xb: f64, fa: f64, fb: f64, bounds: &Bounds) -> bool {
    if !bounds.enabled {
        return true;
    }
    let drop = fb - fa;
    let shallow_drop = drop > bounds.delta_bound;
    let shallow_slope = drop / ((xb - xa).abs() + EPS2) > bounds.slope_bound;
    !(shallow_drop && shallow_slope)
}

/// Decides whether a valley is worth refining.
pub fn candidate_gate(t: &Triplet, bounds: &Bounds, fp_min: f64, fp_max: f64, ftol: f64) -> Gate {
    if t.center.refined {
        return Gate::AlreadyRefined;
    }
    let dp = t.delta_left();
    let dq = t.delta_right();
    if !bounds.enabled {
        let ytol = ftol * (1.0 + t.center.y.abs());
        return if dp < -ytol || dq > ytol {
            Gate::Passed
        } else {
            Gate::Flat
        };
    }
    if !(dp < bounds.delta_bound || dq > -bounds.delta_bound) {
        return Gate::Delta;
    }
    let slope_left = dp / (t.center.x - t.left.x);
    let slope_right = dq / (t.right.x - t.center.x);
    if !(slope_left < bounds.slope_bound || slope_right > -bounds.slope_bound) {
        return Gate::Slope;
    }
    if !(t.center.y < fp_max - (fp_max - fp_min) * bounds.k_ysup) {
        return Gate::Band;
    }
    Gate::Passed
}

/// Which interpolants a refinement may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefineStrategy {
    /// Parabola, then cubic, then golden subdivision.
    #[default]
    Mixed,
    /// Parabola, then golden subdivision.
    ParabolaOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineParams {
    pub xtol: f64,
    pub ftol: f64,
    pub n_max_failed: usize,
    pub strategy: RefineStrategy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineState {
    pub xlocmin: f64,
    pub ylocmin: f64,
    pub n_failed: usize,
    pub changes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValleyReport {
    pub xlocmin: f64,
    pub ylocmin: f64,
    /// Points added to the polygonal.
    pub changes: usize,
    pub stop: RefineStop,
    /// Kind of every evaluated proposal, in order.
    pub steps: Vec<StepKind>,
}

enum Placed {
    New { point: EvalPoint, improved: bool },
    Duplicate,
}

struct Refiner<'a, 'f> {
    ctx: &'a mut EvalContext<'f>,
    work: &'a mut Polygonal,
    best: &'a mut Best,
    params: RefineParams,
    state: RefineState,
    steps: Vec<StepKind>,
}

impl Refiner<'_, '_> {
    fn place(&mut self, x: f64, step: StepKind) -> Result<Placed, Interrupt> {
        let global_before = self.best.y;
        match insert_counted(self.ctx, self.work, self.best, x, step, self.params.xtol)? {
            InsertOutcome::Duplicate { .. } => Ok(Placed::Duplicate),
            InsertOutcome::Added { point, .. } => {
                self.state.changes += 1;
                self.steps.push(step);
                let improved = point.y < self.state.ylocmin;
                if improved {
                    self.state.xlocmin = point.x;
                    self.state.ylocmin = point.y;
                }
                let global = point.y < global_before;
                if global {
                    self.state.n_failed = 0;
                } else {
                    self.state.n_failed += 1;
                }
                let event = if improved {
                    Event::Improvement {
                        step,
                        global,
                        n_failed: self.state.n_failed,
                    }
                } else {
                    Event::NoImprovement {
                        step,
                        n_failed: self.state.n_failed,
                    }
                };
                self.ctx.record(Some(point.x), Some(point.y), event);
                Ok(Placed::New { point, improved })
            }
        }
    }

    /// Marks the current minimum and returns the triplet around it.
    fn recenter(&mut self) -> Option<Triplet> {
        let i = self.work.position_of(self.state.xlocmin)?;
        self.work.mark_refined(i);
        self.work.triplet_at(i)
    }

    fn interpolation(
        &mut self,
        step: StepKind,
        nodes: &[EvalPoint],
        x: Option<f64>,
        predicted: Option<f64>,
        degenerate: bool,
    ) {
        self.ctx.record(
            x,
            None,
            Event::Interpolation {
                step,
                nodes: nodes.iter().map(|p| [p.x, p.y]).collect(),
                predicted,
                degenerate,
            },
        );
    }

    fn cubic_inside(&mut self, step: StepKind, q: [EvalPoint; 4], lo: f64, hi: f64) -> Option<f64> {
        let res = cubic_min(q[0], q[1], q[2], q[3]);
        let m = res.minimum();
        self.interpolation(
            step,
            &q,
            m.map(|m| m.x),
            m.map(|m| m.y_predicted),
            res == CubicMin::Degenerate,
        );
        m.map(|m| m.x).filter(|&x| inside(x, lo, hi))
    }

    /// Cubic through the triplet around the current minimum plus the closer
    /// of the points just beyond it.
    fn nearest_cubic(&mut self, t: &Triplet) -> Option<f64> {
        let i = t.index;
        let pts = self.work.points();
        let before = i.checked_sub(2).map(|j| pts[j]);
        let after = pts.get(i + 2).copied();
        let x02 = before.map_or(f64::INFINITY, |p| t.center.x - p.x);
        let x24 = after.map_or(f64::INFINITY, |p| p.x - t.center.x);
        let q = if x02 < x24 {
            [before?, t.left, t.center, t.right]
        } else {
            [t.left, t.center, t.right, after?]
        };
        self.cubic_inside(StepKind::CubicNearest, q, t.left.x, t.right.x)
    }

    /// Golden subdivision of the larger side around the current minimum.
    fn golden(&mut self) -> Result<bool, Interrupt> {
        let Some(t) = self.recenter() else {
            return Ok(false);
        };
        let x = golden_subdivide(t.left, t.center, t.right);
        Ok(matches!(self.place(x, StepKind::Golden)?, Placed::New { .. }))
    }

    /// One round of proposals on `t`, the triplet around the current minimum.
    /// Returns `false` when every fallback landed on an existing point.
    fn step(&mut self, t: &Triplet) -> Result<bool, Interrupt> {
        let mixed = self.params.strategy == RefineStrategy::Mixed;
        let para = parabola_min(t.left, t.center, t.right);
        self.interpolation(
            StepKind::Parabola,
            &[t.left, t.center, t.right],
            para.map(|m| m.x),
            para.map(|m| m.y_predicted),
            false,
        );
        if let Some(x) = para.map(|m| m.x).filter(|&x| inside(x, t.left.x, t.right.x)) {
            match self.place(x, StepKind::Parabola)? {
                Placed::New { improved: true, .. } => return Ok(true),
                Placed::New { point, improved: false } => {
                    if !mixed {
                        return Ok(true);
                    }
                    let mut q = [t.left, t.center, point, t.right];
                    q.sort_by(|a, b| a.x.total_cmp(&b.x));
                    if let Some(x) = self.cubic_inside(StepKind::Cubic, q, t.left.x, t.right.x) {
                        if let Placed::New { .. } = self.place(x, StepKind::Cubic)? {
                            return Ok(true);
                        }
                    }
                    return self.golden();
                }
                Placed::Duplicate => {}
            }
        }
        if mixed && self.work.len() > 3 {
            if let Some(x) = self.nearest_cubic(t) {
                if let Placed::New { .. } = self.place(x, StepKind::CubicNearest)? {
                    return Ok(true);
                }
            }
        }
        self.golden()
    }

    fn run(&mut self, start: Triplet) -> Result<RefineStop, Interrupt> {
        let mut t = start;
        loop {
            if self.state.n_failed >= self.params.n_max_failed {
                return Ok(RefineStop::TooManyFailures);
            }
            let ytol = self.params.ftol * (1.0 + t.center.y.abs());
            if t.left.y - t.center.y < ytol && t.right.y - t.center.y < ytol {
                return Ok(RefineStop::Converged);
            }
            if !self.step(&t)? {
                return Ok(RefineStop::Exhausted);
            }
            match self.recenter() {
                Some(next) => t = next,
                None => return Ok(RefineStop::Exhausted),
            }
        }
    }
}

/// Drives one valley toward its local minimum, adding points to `work`.
pub fn refine_valley(
    ctx: &mut EvalContext<'_>,
    work: &mut Polygonal,
    best: &mut Best,
    triplet: Triplet,
    params: RefineParams,
) -> Result<ValleyReport, Interrupt> {
    debug_assert!(triplet.center.y <= triplet.left.y && triplet.center.y <= triplet.right.y);
    let mut r = Refiner {
        ctx,
        work,
        best,
        params,
        state: RefineState {
            xlocmin: triplet.center.x,
            ylocmin: triplet.center.y,
            n_failed: 0,
            changes: 0,
        },
        steps: Vec::new(),
    };
    let stop = r.run(triplet)?;
    // the minimum is marked even when it was never improved
    if let Some(i) = r.work.position_of(r.state.xlocmin) {
        r.work.mark_refined(i);
    }
    let report = ValleyReport {
        xlocmin: r.state.xlocmin,
        ylocmin: r.state.ylocmin,
        changes: r.state.changes,
        stop,
        steps: r.steps,
    };
    r.ctx.record(
        Some(report.xlocmin),
        Some(report.ylocmin),
        Event::RefineEnd {
            stop,
            changes: report.changes,
        },
    );
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RefineAllOutcome {
    pub passes: usize,
    pub changes: usize,
    pub valleys: Vec<ValleyReport>,
}

/// Refines valleys pass after pass until a pass adds no points.
pub fn refine_all(
    ctx: &mut EvalContext<'_>,
    poly: &mut Polygonal,
    best: &mut Best,
    bounds: &Bounds,
    params: RefineParams,
) -> Result<RefineAllOutcome, Interrupt> {
    let mut out = RefineAllOutcome::default();
    loop {
        out.passes += 1;
        let pass = out.passes;
        let snapshot = poly.clone();
        ctx.record(None, None, Event::PassStart { pass });
        ctx.record(
            None,
            None,
            Event::Snapshot {
                pass,
                points: snapshot.points().to_vec(),
            },
        );
        let Some((fp_min, fp_max)) = snapshot.ordinate_range() else {
            break;
        };
        let mut changes = 0;
        for t in snapshot.scan_valleys() {
            let mut gate = candidate_gate(&t, bounds, fp_min, fp_max, params.ftol);
            let current = poly.position_of(t.center.x).and_then(|i| poly.triplet_at(i));
            if gate == Gate::Passed {
                gate = match current {
                    Some(c) if c.center.refined => Gate::AlreadyRefined,
                    Some(c) if c.left.x == t.left.x && c.right.x == t.right.x => Gate::Passed,
                    _ => Gate::Disturbed,
                };
            }
            ctx.record(Some(t.center.x), Some(t.center.y), Event::Candidate { gate });
            if gate != Gate::Passed {
                continue;
            }
            let Some(start) = current else { continue };
            let report = refine_valley(ctx, poly, best, start, params)?;
            changes += report.changes;
            out.valleys.push(report);
        }
        out.changes += changes;
        ctx.record(None, None, Event::PassEnd { pass, changes });
        if changes == 0 {
            break;
        }
    }
    Ok(out)
}

/// Result of refining a lone bracketing triplet.
#[derive(Debug, Clone, PartialEq)]
pub struct TripletRefinement {
    pub xmin: f64,
    pub ymin: f64,
    pub n_evals: usize,
    pub report: ValleyReport,
    pub polygonal: Polygonal,
    pub trace: Trace,
}

/// Refines the valley of `triplet` on its own, without exploration or
/// gating. Useful for comparing strategies from an identical bracket.
pub fn refine_triplet<F>(
    mut objective: F,
    triplet: [EvalPoint; 3],
    params: RefineParams,
    trace_level: TraceLevel,
) -> Result<TripletRefinement, SearchError>
where
    F: FnMut(f64) -> f64,
{
    let [a, b, c] = triplet;
    if !(a.x < b.x && b.x < c.x) || !(b.y <= a.y && b.y <= c.y) {
        return Err(SearchError::InvalidStart(
            "triplet must be increasing in x with the least ordinate in the middle".into(),
        ));
    }
    if params.n_max_failed == 0 || !(params.xtol > 0.0) || !(params.ftol > 0.0) {
        return Err(SearchError::InvalidConfig(
            "tolerances and n_max_failed must be positive".into(),
        ));
    }
    let dom = Domain::new(a.x, c.x)?;
    let mut ctx = EvalContext::new(&mut objective, dom, None, trace_level);
    let mut poly: Polygonal = [a, b, c]
        .into_iter()
        .map(|p| EvalPoint { refined: false, ..p })
        .collect();
    let mut best = Best::new(b.x, b.y);
    let t = poly.triplet_at(1).expect("three points");
    let report = match refine_valley(&mut ctx, &mut poly, &mut best, t, params) {
        Ok(r) => r,
        Err(Interrupt::NonFinite { x, y }) => {
            return Err(SearchError::NonFinite {
                x,
                y,
                trace: Box::new(ctx.into_trace()),
            })
        }
        Err(Interrupt::Budget) => unreachable!("no budget set"),
    };
    Ok(TripletRefinement {
        xmin: best.x,
        ymin: best.y,
        n_evals: ctx.nff(),
        report,
        polygonal: poly,
        trace: ctx.into_trace(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bounds(delta: f64, slope: f64) -> Bounds {
        Bounds {
            enabled: true,
            delta_bound: delta,
            slope_bound: slope,
            k_ysup: 0.5,
            n_max_failed: 4,
        }
    }

    fn triplet(p: [(f64, f64); 3]) -> Triplet {
        let poly: Polygonal = p.iter().map(|&(x, y)| EvalPoint::new(x, y)).collect();
        poly.triplet_at(1).unwrap()
    }

    fn params(ftol: f64, strategy: RefineStrategy) -> RefineParams {
        RefineParams {
            xtol: 1e-9,
            ftol,
            n_max_failed: 4,
            strategy,
        }
    }

    fn pts(p: [(f64, f64); 3]) -> [EvalPoint; 3] {
        p.map(|(x, y)| EvalPoint::new(x, y))
    }

    #[test]
    fn initial_gate_examples() {
        let b = bounds(-1e-6, -1e-6);
        assert!(!initial_gate(0.0, 1.0, 1.0, 0.9999999, &b));
        assert!(initial_gate(0.0, 1.0, 1.0, 0.5, &b));
        let off = Bounds { enabled: false, ..b };
        assert!(initial_gate(0.0, 1.0, 1.0, 1.0, &off));
        // steep but tiny drop over a tiny step
        assert!(initial_gate(0.0, 1e-9, 1.0, 0.9999999, &b));
    }

    #[test]
    fn candidate_gate_examples() {
        let b = bounds(-1e-6, -1e-6);
        let deep = triplet([(0.0, 10.0), (1.0, 0.0), (2.0, 10.0)]);
        assert_eq!(candidate_gate(&deep, &b, 0.0, 10.0, 1e-6), Gate::Passed);
        let high = triplet([(0.0, 9.2), (1.0, 9.0), (2.0, 9.1)]);
        assert_eq!(candidate_gate(&high, &b, 0.0, 10.0, 1e-6), Gate::Band);
        let mut refined = deep;
        refined.center.refined = true;
        assert_eq!(candidate_gate(&refined, &b, 0.0, 10.0, 1e-6), Gate::AlreadyRefined);
    }

    #[test]
    fn candidate_gate_shallow_valleys() {
        let b = bounds(-1e-3, -1e-3);
        let flat = triplet([(0.0, 1e-5), (1.0, 0.0), (2.0, 1e-5)]);
        assert_eq!(candidate_gate(&flat, &b, 0.0, 10.0, 1e-6), Gate::Delta);
        // drops exceed the delta bound but are spread over a wide span
        let wide = triplet([(0.0, 2e-3), (1e3, 0.0), (2e3, 2e-3)]);
        assert_eq!(candidate_gate(&wide, &b, 0.0, 10.0, 1e-6), Gate::Slope);
        let off = Bounds { enabled: false, ..b };
        assert_eq!(candidate_gate(&flat, &off, 0.0, 10.0, 1e-6), Gate::Passed);
        let flatter = triplet([(0.0, 1e-7), (1.0, 0.0), (2.0, 1e-7)]);
        assert_eq!(candidate_gate(&flatter, &off, 0.0, 10.0, 1e-6), Gate::Flat);
    }

    #[test]
    fn exact_parabola_takes_one_evaluation() {
        let r = refine_triplet(
            |x: f64| (x - 2.0).powi(2),
            pts([(0.0, 4.0), (1.0, 1.0), (3.0, 1.0)]),
            params(1.2, RefineStrategy::Mixed),
            TraceLevel::Full,
        )
        .unwrap();
        assert_eq!(r.n_evals, 1);
        assert_eq!((r.xmin, r.ymin), (2.0, 0.0));
        assert_eq!(r.report.stop, RefineStop::Converged);
        assert_eq!(r.report.steps, vec![StepKind::Parabola]);
    }

    #[test]
    fn flat_valley_gives_up_after_failures() {
        let r = refine_triplet(
            |x: f64| x.abs(),
            pts([(-1.0, 1.0), (0.0, 0.0), (2.0, 2.0)]),
            params(1e-12, RefineStrategy::Mixed),
            TraceLevel::Full,
        )
        .unwrap();
        assert_eq!(r.report.stop, RefineStop::TooManyFailures);
        assert_eq!(r.n_evals, 4);
        assert_eq!((r.xmin, r.ymin), (0.0, 0.0));
    }

    #[test]
    fn parabola_only_never_uses_cubics() {
        let f = |x: f64| (x - 0.7).abs().powf(1.5) + 0.1 * x;
        let tri = pts([(0.0, f(0.0)), (0.6, f(0.6)), (2.0, f(2.0))]);
        let r = refine_triplet(f, tri, params(1e-10, RefineStrategy::ParabolaOnly), TraceLevel::Full).unwrap();
        assert!(r
            .report
            .steps
            .iter()
            .all(|s| matches!(s, StepKind::Parabola | StepKind::Golden)));
    }

    #[test]
    fn refine_triplet_rejects_bad_input() {
        let f = |x: f64| x * x;
        assert!(refine_triplet(
            f,
            pts([(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)]),
            params(1e-6, RefineStrategy::Mixed),
            TraceLevel::Off
        )
        .is_err());
        assert!(refine_triplet(
            f,
            pts([(1.0, 1.0), (0.0, 0.0), (2.0, 4.0)]),
            params(1e-6, RefineStrategy::Mixed),
            TraceLevel::Off
        )
        .is_err());
    }

    #[test]
    fn bounds_config_validation() {
        assert!(BoundsConfig::default().validate().is_ok());
        for bad in [
            BoundsConfig {
                delta_bound: Some(0.0),
                ..Default::default()
            },
            BoundsConfig {
                slope_bound: Some(1.0),
                ..Default::default()
            },
            BoundsConfig {
                k_ysup: 1.5,
                ..Default::default()
            },
            BoundsConfig {
                n_max_failed: 0,
                ..Default::default()
            },
        ] {
            assert!(bad.validate().is_err());
        }
        let b = BoundsConfig::default().resolve(1e-6, -3.0, Domain::new(0.0, 2.0).unwrap());
        assert!((b.delta_bound + 4e-6).abs() < 1e-18);
        assert!((b.slope_bound + 2e-6).abs() < 1e-18);
    }

    #[test]
    fn single_valley_refine_all_stops_after_quiet_pass() {
        let mut f = |x: f64| (x - 2.0).powi(2);
        let mut ctx = EvalContext::new(&mut f, Domain::new(0.0, 5.0).unwrap(), None, TraceLevel::Full);
        let mut poly: Polygonal = [(0.0, 4.0), (1.0, 1.0), (5.0, 9.0)]
            .iter()
            .map(|&(x, y)| EvalPoint::new(x, y))
            .collect();
        let mut best = Best::new(1.0, 1.0);
        let b = BoundsConfig::default().resolve(1e-6, 1.0, ctx.domain());
        let out = refine_all(&mut ctx, &mut poly, &mut best, &b, params(1e-6, RefineStrategy::Mixed)).unwrap();
        assert_eq!(out.passes, 2);
        assert_eq!(out.valleys.len(), 1);
        assert!((best.x - 2.0).abs() < 1e-6);
        assert_eq!(ctx.trace().snapshots().count(), 2);
    }

    fn wavy(c: [f64; 4]) -> impl Fn(f64) -> f64 {
        move |x: f64| (x - c[0]).powi(2) + c[1] * (c[2] * x + c[3]).sin()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn refinement_stays_inside_and_descends(
            c0 in 0.2f64..0.8, c1 in 0.0f64..0.3, c2 in 1.0f64..30.0, c3 in 0.0f64..6.0,
            mixed in any::<bool>(),
        ) {
            let f = wavy([c0, c1, c2, c3]);
            let (a, c) = (0.0, 1.0);
            // lowest interior grid point as center
            let b = (1..20).map(|i| i as f64 / 20.0).min_by(|x, y| f(*x).total_cmp(&f(*y))).unwrap();
            prop_assume!(f(b) <= f(a) && f(b) <= f(c));
            let strategy = if mixed { RefineStrategy::Mixed } else { RefineStrategy::ParabolaOnly };
            let r = refine_triplet(&f, pts([(a, f(a)), (b, f(b)), (c, f(c))]), params(1e-9, strategy), TraceLevel::Full).unwrap();

            for (x, _) in r.trace.evaluations() {
                prop_assert!(a < x && x < c);
            }
            prop_assert!(r.ymin <= f(b));
            prop_assert_eq!(r.ymin, r.polygonal.lowest().unwrap().y);
            prop_assert_eq!(r.n_evals, r.report.changes);

            // ylocmin is non-increasing along the run
            let mut loc = f(b);
            for e in r.trace.events() {
                if let Event::Improvement { .. } = e.event {
                    let y = e.y.unwrap();
                    prop_assert!(y < loc);
                    loc = y;
                }
            }
            prop_assert_eq!(loc, r.report.ylocmin);

            match r.report.stop {
                RefineStop::Converged => {
                    let i = r.polygonal.position_of(r.report.xlocmin).unwrap();
                    let t = r.polygonal.triplet_at(i).unwrap();
                    let ytol = 1e-9 * (1.0 + t.center.y.abs());
                    prop_assert!(t.left.y - t.center.y < ytol && t.right.y - t.center.y < ytol);
                }
                RefineStop::TooManyFailures => {}
                RefineStop::Exhausted => {}
            }
        }
    }
}
