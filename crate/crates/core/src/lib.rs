//! Global minimization of arbitrary real functions of one variable on a
//! finite interval.
//!
//! The search runs in two phases. Exploration magnifies the initial interval
//! by golden steps in the downhill direction, keeping every sample in an
//! ordered polygonal, until a rise is confirmed or the domain boundary is
//! reached. Refinement then scans the polygonal for valleys and drives each
//! toward its true minimum with parabolic and cubic interpolation, falling
//! back on golden subdivision. The lowest local minimum is returned.
//!
//! ```
//! use polymin::{min_search_1d, Domain, SolverConfig};
//!
//! let config = SolverConfig::new(Domain::new(2.7, 7.5).unwrap());
//! let f = |x: f64| x.sin() + (10.0 * x / 3.0).sin();
//! let r = min_search_1d(f, &[], &config).unwrap();
//! assert!((r.xmin - 5.1457).abs() < 1e-3);
//! ```

// `!(a < b)` is deliberate throughout: NaN must fail the comparison
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bracketing;
pub mod error;
pub mod eval;
pub mod interpolation;
pub mod polygonal;
pub mod refinement;
pub mod solver;
pub mod trace;

pub use bracketing::{Domain, ExploreOutcome};
pub use error::{Interrupt, SearchError};
pub use eval::{Best, EvalContext};
pub use interpolation::{cubic_min, golden_subdivide, parabola_min, CubicMin, InterpMin, CGOLD, GOLD};
pub use polygonal::{almost_equal_rel, EvalPoint, InsertOutcome, Polygonal, Triplet};
pub use refinement::{refine_triplet, BoundsConfig, RefineParams, RefineStrategy, TripletRefinement};
pub use solver::{min_search_1d, LocalMinimum, RunResult, SolverConfig, StartPoint, Termination};
pub use trace::{Event, StepKind, Trace, TraceEvent, TraceLevel};
