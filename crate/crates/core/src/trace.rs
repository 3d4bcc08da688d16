//! Ordered event log of a run.
//!
//! Every record carries a sequence number and the evaluation count at the
//! time it was emitted. On disk a trace is JSON Lines: a header record
//! `{"schema": "polymin-trace", "version": 1}` followed by one record per
//! event with the fields `seq`, `nff`, `kind`, optional `x` / `y` and a
//! kind-specific `detail` object.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::polygonal::EvalPoint;

pub const TRACE_SCHEMA: &str = "polymin-trace";
pub const TRACE_SCHEMA_VERSION: u32 = 1;

/// How much of a run is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceLevel {
    Off,
    /// Evaluations, polygonal snapshots and pass boundaries.
    Evaluations,
    #[default]
    Full,
}

/// Where a proposed abscissa came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// Random initial point or random step.
    Random,
    /// Golden-ratio magnification of the current interval.
    Expand,
    /// Extra expansion probe beyond a detected rise.
    Probe,
    /// Golden point inside the initial interval.
    Interior,
    /// Minimum of a sliding-window cubic.
    Sliding,
    Parabola,
    /// Cubic through the triplet plus the last evaluated point.
    Cubic,
    /// Cubic through the four polygonal points nearest the current minimum.
    CubicNearest,
    Golden,
}

/// Which test decided a candidate valley.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    Passed,
    AlreadyRefined,
    /// Variation below `ftol` (bounds disabled).
    Flat,
    /// Neither drop exceeds the delta bound.
    Delta,
    /// Neither side is steeper than the slope bound.
    Slope,
    /// Center above the lower band of known values.
    Band,
    /// The valley's neighbors changed earlier in the same pass.
    Disturbed,
}

/// Why a valley refinement stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefineStop {
    Converged,
    Exhausted,
    TooManyFailures,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Event {
    Evaluation {},
    Proposal {
        step: StepKind,
    },
    Adjustment {
        proposed: f64,
        clipped: bool,
    },
    Duplicate {
        step: StepKind,
        existing: f64,
    },
    TripletFound {
        points: [EvalPoint; 3],
    },
    RiseConfirmed {},
    Interpolation {
        step: StepKind,
        nodes: Vec<[f64; 2]>,
        /// Predicted ordinate at `x`, when the interpolant has a minimum.
        predicted: Option<f64>,
        degenerate: bool,
    },
    Improvement {
        step: StepKind,
        global: bool,
        n_failed: usize,
    },
    NoImprovement {
        step: StepKind,
        n_failed: usize,
    },
    Candidate {
        gate: Gate,
    },
    RefineEnd {
        stop: RefineStop,
        changes: usize,
    },
    PassStart {
        pass: usize,
    },
    PassEnd {
        pass: usize,
        changes: usize,
    },
    Snapshot {
        pass: usize,
        points: Vec<EvalPoint>,
    },
    Terminated {
        reason: String,
    },
}

impl Event {
    fn level(&self) -> TraceLevel {
        match self {
            Event::Evaluation {}
            | Event::Snapshot { .. }
            | Event::PassStart { .. }
            | Event::PassEnd { .. }
            | Event::Terminated { .. } => TraceLevel::Evaluations,
            _ => TraceLevel::Full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub seq: u64,
    pub nff: usize,
    #[serde(flatten)]
    pub event: Event,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    schema: String,
    version: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    level: TraceLevel,
    events: Vec<TraceEvent>,
}

impl Trace {
    pub fn new(level: TraceLevel) -> Self {
        Self {
            level,
            events: Vec::new(),
        }
    }

    pub fn level(&self) -> TraceLevel {
        self.level
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn record(&mut self, nff: usize, x: Option<f64>, y: Option<f64>, event: Event) {
        if event.level() > self.level {
            return;
        }
        let seq = self.events.len() as u64;
        self.events.push(TraceEvent { seq, nff, event, x, y });
    }

    /// Abscissas and ordinates of every evaluation, in order.
    pub fn evaluations(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.events.iter().filter_map(|e| match e.event {
            Event::Evaluation {} => Some((e.x?, e.y?)),
            _ => None,
        })
    }

    /// Step kinds of the proposals that were actually evaluated, in order.
    pub fn evaluated_steps(&self) -> Vec<StepKind> {
        let mut pending = None;
        let mut out = Vec::new();
        for e in &self.events {
            match e.event {
                Event::Proposal { step } => pending = Some(step),
                Event::Duplicate { .. } => pending = None,
                Event::Evaluation {} => {
                    if let Some(step) = pending.take() {
                        out.push(step);
                    }
                }
                _ => {}
            }
        }
        out
    }

    pub fn snapshots(&self) -> impl Iterator<Item = (usize, &[EvalPoint])> + '_ {
        self.events.iter().filter_map(|e| match &e.event {
            Event::Snapshot { pass, points } => Some((*pass, points.as_slice())),
            _ => None,
        })
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        let header = Header {
            schema: TRACE_SCHEMA.to_string(),
            version: TRACE_SCHEMA_VERSION,
        };
        serde_json::to_writer(&mut w, &header)?;
        writeln!(w)?;
        for e in &self.events {
            serde_json::to_writer(&mut w, e)?;
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> io::Result<Self> {
        let mut lines = r.lines();
        let header: Header = match lines.next() {
            Some(line) => serde_json::from_str(&line?)?,
            None => return Err(io::Error::new(io::ErrorKind::InvalidData, "empty trace")),
        };
        if header.schema != TRACE_SCHEMA || header.version != TRACE_SCHEMA_VERSION {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                format!("unsupported trace schema {} v{}", header.schema, header.version),
            ));
        }
        let mut events = Vec::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            events.push(serde_json::from_str(&line)?);
        }
        Ok(Self {
            level: TraceLevel::Full,
            events,
        })
    }
}
