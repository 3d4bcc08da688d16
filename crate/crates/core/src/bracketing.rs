//! Exploration of the domain outward from the initial pair.
//!
//! Starting from `xa -> xb` (downhill), the interval is magnified by a
//! golden factor while the function keeps decreasing. A rise triggers one
//! more probe: a second consecutive rise stops the exploration, a descent
//! resumes it. Every sample is kept in the polygonal.

use serde::{Deserialize, Serialize};

use crate::error::{Interrupt, SearchError};
use crate::eval::{insert_counted, Best, EvalContext};
use crate::interpolation::{GOLD, MIN_RATIO};
use crate::polygonal::{EvalPoint, InsertOutcome, Polygonal};
use crate::trace::{Event, StepKind};

/// Closed interval `[xinf, xsup]` on which the objective is defined.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub xinf: f64,
    pub xsup: f64,
}

impl Domain {
    pub fn new(xinf: f64, xsup: f64) -> Result<Self, SearchError> {
        if !(xinf.is_finite() && xsup.is_finite() && xsup > xinf) {
            return Err(SearchError::InvalidDomain { xinf, xsup });
        }
        Ok(Self { xinf, xsup })
    }

    pub fn width(&self) -> f64 {
        self.xsup - self.xinf
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.xinf && x <= self.xsup
    }

    pub fn is_endpoint(&self, x: f64) -> bool {
        x == self.xinf || x == self.xsup
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.xinf, self.xsup)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryAdjust {
    pub x: f64,
    /// The proposal was at or beyond the limit.
    pub clipped: bool,
}

/// Keeps a proposal `xc`, made beyond `xb` in the direction `xa -> xb`,
/// inside the domain.
///
/// A proposal past the limit is clipped to it. One that would leave a
/// residual gap to the limit smaller than `min_ratio` times the step is
/// snapped to the limit without counting as clipped.
pub fn adjust_to_boundary(xa: f64, xb: f64, xc: f64, min_ratio: f64, dom: Domain) -> BoundaryAdjust {
    if xb > xa {
        if xc >= dom.xsup {
            BoundaryAdjust {
                x: dom.xsup,
                clipped: true,
            }
        } else if (dom.xsup - xc) / (xc - xb) < min_ratio {
            BoundaryAdjust {
                x: dom.xsup,
                clipped: false,
            }
        } else {
            BoundaryAdjust { x: xc, clipped: false }
        }
    } else if xc <= dom.xinf {
        BoundaryAdjust {
            x: dom.xinf,
            clipped: true,
        }
    } else if (xc - dom.xinf) / (xb - xc) < min_ratio {
        BoundaryAdjust {
            x: dom.xinf,
            clipped: false,
        }
    } else {
        BoundaryAdjust { x: xc, clipped: false }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ExploreOutcome {
    /// Expansions that were not clipped at the boundary.
    pub expansion_count: usize,
    pub boundary_reached: bool,
    /// The first bracketing triplet met, in increasing abscissa order.
    pub first_triplet: Option<[EvalPoint; 3]>,
    /// Evaluation count of the run when `first_triplet` was met.
    pub evals_at_triplet: usize,
    /// Evaluation count of the run when exploration ended.
    pub evals_at_end: usize,
    /// Global minimum when exploration ended.
    pub best_at_end: Option<Best>,
}

fn sorted3(mut pts: [EvalPoint; 3]) -> [EvalPoint; 3] {
    pts.sort_by(|a, b| a.x.total_cmp(&b.x));
    pts
}

/// Golden magnification of `[from, to]` beyond `to`, kept inside the domain.
fn propose(ctx: &mut EvalContext<'_>, from: f64, to: f64) -> BoundaryAdjust {
    let proposed = to + GOLD * (to - from);
    let adj = adjust_to_boundary(from, to, proposed, MIN_RATIO, ctx.domain());
    ctx.record(
        Some(adj.x),
        None,
        Event::Adjustment {
            proposed,
            clipped: adj.clipped,
        },
    );
    adj
}

/// Extends the initial interval downhill until a rise is confirmed or the
/// boundary is reached. `xa` and `xb` must already be in `poly` with
/// `fb < fa`.
#[allow(clippy::too_many_arguments)]
pub fn explore(
    ctx: &mut EvalContext<'_>,
    poly: &mut Polygonal,
    best: &mut Best,
    mut xa: f64,
    mut xb: f64,
    mut fa: f64,
    mut fb: f64,
    xtol: f64,
) -> Result<ExploreOutcome, Interrupt> {
    debug_assert!(fb < fa);
    let dom = ctx.domain();
    let mut out = ExploreOutcome::default();

    loop {
        let adj = propose(ctx, xa, xb);
        if !adj.clipped {
            out.expansion_count += 1;
        }
        let c = match insert_counted(ctx, poly, best, adj.x, StepKind::Expand, xtol)? {
            InsertOutcome::Added { point, .. } => point,
            InsertOutcome::Duplicate { .. } => {
                out.boundary_reached = dom.is_endpoint(adj.x);
                break;
            }
        };
        let mut clipped = adj.clipped;

        if c.y >= fb {
            let triplet = sorted3([EvalPoint::new(xa, fa), EvalPoint::new(xb, fb), c]);
            if out.first_triplet.is_none() {
                out.first_triplet = Some(triplet);
                out.evals_at_triplet = ctx.nff();
            }
            ctx.record(Some(xb), Some(fb), Event::TripletFound { points: triplet });

            let adj = propose(ctx, xa, c.x);
            if !adj.clipped {
                out.expansion_count += 1;
            }
            clipped = adj.clipped;
            let d = match insert_counted(ctx, poly, best, adj.x, StepKind::Probe, xtol)? {
                InsertOutcome::Added { point, .. } => point,
                InsertOutcome::Duplicate { .. } => {
                    out.boundary_reached = dom.is_endpoint(adj.x);
                    break;
                }
            };
            if d.y >= c.y {
                ctx.record(Some(d.x), Some(d.y), Event::RiseConfirmed {});
                break;
            }
            // descending again after a hump
            xa = c.x;
            fa = c.y;
            xb = d.x;
            fb = d.y;
        } else {
            xb = c.x;
            fb = c.y;
        }

        if clipped {
            out.boundary_reached = true;
            break;
        }
    }
    out.evals_at_end = ctx.nff();
    out.best_at_end = Some(*best);
    Ok(out)
}

/// When the initial interval could not be expanded at least twice, samples it
/// at the golden point closer to `xbb`.
pub fn interior_subdivide_if_cramped(
    ctx: &mut EvalContext<'_>,
    poly: &mut Polygonal,
    best: &mut Best,
    expansion_count: usize,
    xaa: f64,
    xbb: f64,
    xtol: f64,
) -> Result<Option<InsertOutcome>, Interrupt> {
    if expansion_count >= 2 {
        return Ok(None);
    }
    let x = xaa + GOLD * (xbb - xaa);
    insert_counted(ctx, poly, best, x, StepKind::Interior, xtol).map(Some)
}
