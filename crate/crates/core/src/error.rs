use thiserror::Error;

use crate::trace::Trace;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid domain [{xinf}, {xsup}]: need finite limits with xsup > xinf")]
    InvalidDomain { xinf: f64, xsup: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid start: {0}")]
    InvalidStart(String),

    #[error("objective returned {y} at x = {x}")]
    NonFinite { x: f64, y: f64, trace: Box<Trace> },
}

/// Reasons a run stops early from deep inside a phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interrupt {
    /// The evaluation budget is spent.
    Budget,
    NonFinite {
        x: f64,
        y: f64,
    },
}
