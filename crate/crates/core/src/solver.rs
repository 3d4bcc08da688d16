//! Entry point: initial points, exploration, refinement, result packaging.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bracketing::{explore, interior_subdivide_if_cramped, Domain, ExploreOutcome};
use crate::error::{Interrupt, SearchError};
use crate::eval::{insert_counted, Best, EvalContext};
use crate::interpolation::{sliding_cubic_suspects, CGOLD};
use crate::polygonal::{almost_equal_rel, EvalPoint, Polygonal};
use crate::refinement::{initial_gate, refine_all, Bounds, BoundsConfig, RefineParams, RefineStrategy};
use crate::trace::{Event, StepKind, Trace, TraceLevel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub domain: Domain,
    /// Relative tolerance on the abscissa.
    pub xtol: f64,
    /// Relative tolerance on the ordinate.
    pub ftol: f64,
    pub bounds: BoundsConfig,
    /// Insert the minima of sliding four-point cubics before refining.
    pub sliding_cubic_stage: bool,
    /// Attempts at finding a second point with a different value.
    pub max_initial_trials: usize,
    /// Hard cap on objective evaluations.
    pub max_evals: Option<usize>,
    pub rng_seed: u64,
    pub strategy: RefineStrategy,
    pub trace_level: TraceLevel,
}

impl SolverConfig {
    pub fn new(domain: Domain) -> Self {
        Self {
            domain,
            xtol: 1e-6,
            ftol: 1e-6,
            bounds: BoundsConfig::default(),
            sliding_cubic_stage: false,
            max_initial_trials: 16,
            max_evals: None,
            rng_seed: 0,
            strategy: RefineStrategy::Mixed,
            trace_level: TraceLevel::Full,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        Domain::new(self.domain.xinf, self.domain.xsup)?;
        if !(self.xtol > 0.0 && self.xtol.is_finite()) {
            return Err(SearchError::InvalidConfig(format!(
                "xtol {} must be positive",
                self.xtol
            )));
        }
        if !(self.ftol > 0.0 && self.ftol.is_finite()) {
            return Err(SearchError::InvalidConfig(format!(
                "ftol {} must be positive",
                self.ftol
            )));
        }
        if self.max_initial_trials == 0 {
            return Err(SearchError::InvalidConfig(
                "max_initial_trials must be at least 1".into(),
            ));
        }
        if self.max_evals == Some(0) {
            return Err(SearchError::InvalidConfig("max_evals must be at least 1".into()));
        }
        self.bounds.validate()
    }
}

/// A starting abscissa, optionally with its already known ordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StartPoint {
    pub x: f64,
    pub y: Option<f64>,
}

impl StartPoint {
    pub fn new(x: f64) -> Self {
        Self { x, y: None }
    }

    pub fn known(x: f64, y: f64) -> Self {
        Self { x, y: Some(y) }
    }
}

/// Two distinct points with `fb < fa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialPair {
    pub xa: f64,
    pub fa: f64,
    pub xb: f64,
    pub fb: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Acquired {
    Pair(InitialPair),
    /// Every sample had the same value.
    Constant {
        x: f64,
        y: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    BudgetExhausted,
    /// The initial pair showed too little variation to be worth a search.
    GatedOut,
    ConstantFunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalMinimum {
    pub x: f64,
    pub y: f64,
    pub refined: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub xmin: f64,
    pub ymin: f64,
    /// Valley centers of the final polygonal, left to right.
    pub local_minima: Vec<LocalMinimum>,
    pub n_evals: usize,
    pub termination: Termination,
    /// Refinement passes performed.
    pub passes: usize,
    pub polygonal: Polygonal,
    /// Outcome of the exploration phase, when it ran.
    pub exploration: Option<ExploreOutcome>,
    pub trace: Trace,
}

/// Uniform step of at most `CGOLD` times the domain width around `from`,
/// clamped to the domain.
fn random_step(rng: &mut ChaCha8Rng, dom: Domain, from: f64) -> f64 {
    let half = CGOLD * dom.width();
    dom.clamp(from + rng.gen_range(-half..=half))
}

/// Random step from `from` that is distinguishable from `avoid`; `None` if
/// none was found in a few draws.
fn distinct_step(rng: &mut ChaCha8Rng, dom: Domain, from: f64, avoid: f64, xtol: f64) -> Option<f64> {
    (0..64)
        .map(|_| random_step(rng, dom, from))
        .find(|&x| !almost_equal_rel(x, avoid, xtol) && !almost_equal_rel(avoid, x, xtol))
}

/// Produces two points with `fb < fa` from zero, one or two given ones.
pub fn acquire_initial_points(
    ctx: &mut EvalContext<'_>,
    given: &[StartPoint],
    rng: &mut ChaCha8Rng,
    max_trials: usize,
    xtol: f64,
) -> Result<Acquired, Interrupt> {
    let dom = ctx.domain();
    let eval = |ctx: &mut EvalContext<'_>, p: StartPoint, step: StepKind| -> Result<f64, Interrupt> {
        match p.y {
            Some(y) => Ok(y),
            None => {
                ctx.record(Some(p.x), None, Event::Proposal { step });
                ctx.evaluate(p.x)
            }
        }
    };

    let (xa, fa) = match given.first() {
        Some(&p) => (p.x, eval(ctx, p, StepKind::Random)?),
        None => {
            let x = rng.gen_range(dom.xinf..=dom.xsup);
            (x, eval(ctx, StartPoint::new(x), StepKind::Random)?)
        }
    };

    let mut trials = 0;
    let (mut xb, mut fb) = match given.get(1) {
        Some(&p) => (p.x, eval(ctx, p, StepKind::Random)?),
        None => {
            trials += 1;
            match distinct_step(rng, dom, xa, xa, xtol) {
                Some(x) => (x, eval(ctx, StartPoint::new(x), StepKind::Random)?),
                None => return Ok(Acquired::Constant { x: xa, y: fa }),
            }
        }
    };

    let anchor = xb;
    while fb == fa {
        if trials >= max_trials {
            return Ok(Acquired::Constant { x: xb, y: fb });
        }
        trials += 1;
        match distinct_step(rng, dom, anchor, xa, xtol) {
            Some(x) => {
                xb = x;
                fb = eval(ctx, StartPoint::new(x), StepKind::Random)?;
            }
            None => return Ok(Acquired::Constant { x: xb, y: fb }),
        }
    }

    Ok(Acquired::Pair(if fb < fa {
        InitialPair { xa, fa, xb, fb }
    } else {
        InitialPair {
            xa: xb,
            fa: fb,
            xb: xa,
            fb: fa,
        }
    }))
}

fn validate_start(given: &[StartPoint], dom: Domain, xtol: f64) -> Result<(), SearchError> {
    if given.len() > 2 {
        return Err(SearchError::InvalidStart(format!(
            "at most two start points, got {}",
            given.len()
        )));
    }
    for p in given {
        if !dom.contains(p.x) {
            return Err(SearchError::InvalidStart(format!("x = {} outside the domain", p.x)));
        }
        if p.y.is_some_and(|y| !y.is_finite()) {
            return Err(SearchError::InvalidStart(format!("non-finite ordinate at x = {}", p.x)));
        }
    }
    if let [a, b] = given {
        if almost_equal_rel(a.x, b.x, xtol) || almost_equal_rel(b.x, a.x, xtol) {
            return Err(SearchError::InvalidStart("start points are not distinct".into()));
        }
    }
    Ok(())
}

struct Run<'f> {
    ctx: EvalContext<'f>,
    poly: Polygonal,
    best: Best,
    passes: usize,
    exploration: Option<ExploreOutcome>,
}

impl Run<'_> {
    fn search(&mut self, pair: InitialPair, config: &SolverConfig, bounds: &Bounds) -> Result<(), Interrupt> {
        let InitialPair { xa, fa, xb, fb } = pair;
        let xtol = config.xtol;
        let explored = explore(&mut self.ctx, &mut self.poly, &mut self.best, xa, xb, fa, fb, xtol)?;
        self.exploration = Some(explored);
        interior_subdivide_if_cramped(
            &mut self.ctx,
            &mut self.poly,
            &mut self.best,
            explored.expansion_count,
            xa,
            xb,
            xtol,
        )?;
        if config.sliding_cubic_stage {
            for x in sliding_cubic_suspects(&self.poly, xtol) {
                insert_counted(
                    &mut self.ctx,
                    &mut self.poly,
                    &mut self.best,
                    x,
                    StepKind::Sliding,
                    xtol,
                )?;
            }
        }
        let params = RefineParams {
            xtol,
            ftol: config.ftol,
            n_max_failed: bounds.n_max_failed,
            strategy: config.strategy,
        };
        let out = refine_all(&mut self.ctx, &mut self.poly, &mut self.best, bounds, params);
        // passes are only known on success; count pass starts otherwise
        self.passes = match &out {
            Ok(o) => o.passes,
            Err(_) => self
                .ctx
                .trace()
                .events()
                .iter()
                .filter(|e| matches!(e.event, Event::PassStart { .. }))
                .count(),
        };
        out.map(|_| ())
    }
}

fn local_minima(poly: &Polygonal) -> Vec<LocalMinimum> {
    poly.scan_valleys()
        .map(|t| LocalMinimum {
            x: t.center.x,
            y: t.center.y,
            refined: t.center.refined,
        })
        .collect()
}

/// Searches for the global minimum of `objective` over `config.domain`,
/// starting from up to two given points.
pub fn min_search_1d<F>(mut objective: F, start: &[StartPoint], config: &SolverConfig) -> Result<RunResult, SearchError>
where
    F: FnMut(f64) -> f64,
{
    config.validate()?;
    let dom = config.domain;
    validate_start(start, dom, config.xtol)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut ctx = EvalContext::new(&mut objective, dom, config.max_evals, config.trace_level);

    let finish = |ctx: EvalContext<'_>,
                  best: Best,
                  poly: Polygonal,
                  termination: Termination,
                  passes: usize,
                  exploration: Option<ExploreOutcome>| {
        let mut ctx = ctx;
        ctx.record(
            Some(best.x),
            Some(best.y),
            Event::Terminated {
                reason: format!("{termination:?}"),
            },
        );
        RunResult {
            xmin: best.x,
            ymin: best.y,
            local_minima: local_minima(&poly),
            n_evals: ctx.nff(),
            termination,
            passes,
            polygonal: poly,
            exploration,
            trace: ctx.into_trace(),
        }
    };
    let non_finite = |ctx: EvalContext<'_>, x: f64, y: f64| SearchError::NonFinite {
        x,
        y,
        trace: Box::new(ctx.into_trace()),
    };

    let acquired = match acquire_initial_points(&mut ctx, start, &mut rng, config.max_initial_trials, config.xtol) {
        Ok(a) => a,
        Err(Interrupt::NonFinite { x, y }) => return Err(non_finite(ctx, x, y)),
        Err(Interrupt::Budget) => {
            // budget spent before two points with different values were found
            let known = start.iter().filter_map(|p| p.y.map(|y| Best::new(p.x, y)));
            let best = ctx
                .lowest()
                .into_iter()
                .chain(known)
                .reduce(|a, b| if b.y < a.y { b } else { a });
            let (best, poly) = match best {
                Some(b) => (b, std::iter::once(EvalPoint::new(b.x, b.y)).collect()),
                None => (Best::new(f64::NAN, f64::NAN), Polygonal::new()),
            };
            return Ok(finish(ctx, best, poly, Termination::BudgetExhausted, 0, None));
        }
    };

    let pair = match acquired {
        Acquired::Constant { x, y } => {
            let poly: Polygonal = std::iter::once(EvalPoint::new(x, y)).collect();
            return Ok(finish(
                ctx,
                Best::new(x, y),
                poly,
                Termination::ConstantFunction,
                0,
                None,
            ));
        }
        Acquired::Pair(p) => p,
    };

    let bounds = config.bounds.resolve(config.ftol, pair.fb, dom);
    let mut poly = Polygonal::new();
    for (x, y) in [(pair.xa, pair.fa), (pair.xb, pair.fb)] {
        poly.insert_point(x, Some(y), false, config.xtol, |_| Ok::<_, ()>(y))
            .expect("ordinate supplied");
    }
    let best = Best::new(pair.xb, pair.fb);

    if !initial_gate(pair.xa, pair.xb, pair.fa, pair.fb, &bounds) {
        return Ok(finish(ctx, best, poly, Termination::GatedOut, 0, None));
    }

    let mut run = Run {
        ctx,
        poly,
        best,
        passes: 0,
        exploration: None,
    };
    let termination = match run.search(pair, config, &bounds) {
        Ok(()) => Termination::Converged,
        Err(Interrupt::Budget) => Termination::BudgetExhausted,
        Err(Interrupt::NonFinite { x, y }) => return Err(non_finite(run.ctx, x, y)),
    };
    Ok(finish(
        run.ctx,
        run.best,
        run.poly,
        termination,
        run.passes,
        run.exploration,
    ))
}
