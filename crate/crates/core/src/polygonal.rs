//! The ordered record of every evaluated sample of the objective.
//!
//! A [`Polygonal`] is the piecewise-linear approximation the solver works on:
//! exploration appends to it, refinement scans it for valleys and inserts new
//! samples inside them. Abscissas are kept strictly increasing and no two of
//! them are closer than the run's relative tolerance.

use serde::{Deserialize, Serialize};

/// One evaluated sample of the objective; a vertex of the polygonal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub x: f64,
    pub y: f64,
    /// Set once the point has been processed as a local-minimum candidate.
    pub refined: bool,
}

impl EvalPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y, refined: false }
    }
}

/// `|a - b| < eps * (1 + |a|)`.
///
/// The tolerance is scaled by the first argument only, so the relation is not
/// symmetric. Callers pass the candidate abscissa first.
#[inline]
pub fn almost_equal_rel(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() < eps * (1.0 + a.abs())
}

/// Result of [`Polygonal::insert_point`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InsertOutcome {
    /// The point was new; `index` is its position after insertion.
    Added { index: usize, point: EvalPoint },
    /// An existing point is almost equal in abscissa; nothing was evaluated.
    Duplicate { index: usize, point: EvalPoint },
}

impl InsertOutcome {
    pub fn is_added(&self) -> bool {
        matches!(self, InsertOutcome::Added { .. })
    }

    pub fn point(&self) -> EvalPoint {
        match *self {
            InsertOutcome::Added { point, .. } | InsertOutcome::Duplicate { point, .. } => point,
        }
    }

    pub fn index(&self) -> usize {
        match *self {
            InsertOutcome::Added { index, .. } | InsertOutcome::Duplicate { index, .. } => index,
        }
    }
}

/// Three consecutive polygonal vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triplet {
    pub left: EvalPoint,
    pub center: EvalPoint,
    pub right: EvalPoint,
    /// Position of `center` in the polygonal the triplet was read from.
    pub index: usize,
}

impl Triplet {
    /// `center.y - left.y`
    pub fn delta_left(&self) -> f64 {
        self.center.y - self.left.y
    }

    /// `right.y - center.y`
    pub fn delta_right(&self) -> f64 {
        self.right.y - self.center.y
    }

    /// Center not above either neighbor. Ties count; peaks and shoulders
    /// that drop on one side do not.
    pub fn is_valley(&self) -> bool {
        self.delta_left() <= 0.0 && self.delta_right() >= 0.0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polygonal {
    points: Vec<EvalPoint>,
}

impl Polygonal {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[EvalPoint] {
        &self.points
    }

    pub fn get(&self, index: usize) -> Option<&EvalPoint> {
        self.points.get(index)
    }

    pub fn into_points(self) -> Vec<EvalPoint> {
        self.points
    }

    /// Position of the point with exactly this abscissa.
    pub fn position_of(&self, x: f64) -> Option<usize> {
        self.points.iter().position(|p| p.x == x)
    }

    /// Walks the points in ascending order like a sorted insertion would:
    /// returns `Err(i)` for the first point almost equal to `x`, else `Ok(i)`
    /// with the insertion position.
    fn locate(&self, x: f64, xtol: f64) -> Result<usize, usize> {
        for (i, p) in self.points.iter().enumerate() {
            if almost_equal_rel(x, p.x, xtol) {
                return Err(i);
            }
            if p.x > x {
                return Ok(i);
            }
        }
        Ok(self.points.len())
    }

    /// Inserts a sample at `x`, keeping the abscissas sorted.
    ///
    /// When an existing point is almost equal to `x` nothing changes and the
    /// evaluator is not called. Otherwise a missing ordinate is obtained by
    /// calling `eval(x)` exactly once.
    pub fn insert_point<E, F>(
        &mut self,
        x: f64,
        y: Option<f64>,
        refined: bool,
        xtol: f64,
        mut eval: F,
    ) -> Result<InsertOutcome, E>
    where
        F: FnMut(f64) -> Result<f64, E>,
    {
        match self.locate(x, xtol) {
            Err(index) => Ok(InsertOutcome::Duplicate {
                index,
                point: self.points[index],
            }),
            Ok(index) => {
                let y = match y {
                    Some(y) => y,
                    None => eval(x)?,
                };
                let point = EvalPoint { x, y, refined };
                self.points.insert(index, point);
                Ok(InsertOutcome::Added { index, point })
            }
        }
    }

    /// Would inserting `x` be rejected as a duplicate?
    pub fn is_duplicate(&self, x: f64, xtol: f64) -> bool {
        self.locate(x, xtol).is_err()
    }

    /// `(min y, max y)` over all points; `None` when empty.
    pub fn ordinate_range(&self) -> Option<(f64, f64)> {
        let mut it = self.points.iter();
        let first = it.next()?;
        Some(it.fold((first.y, first.y), |(lo, hi), p| (lo.min(p.y), hi.max(p.y))))
    }

    /// The triplet centered on `index`, if both neighbors exist.
    pub fn triplet_at(&self, index: usize) -> Option<Triplet> {
        if index == 0 || index + 1 >= self.points.len() {
            return None;
        }
        Some(Triplet {
            left: self.points[index - 1],
            center: self.points[index],
            right: self.points[index + 1],
            index,
        })
    }

    /// Every consecutive triplet whose center is not above both neighbors,
    /// left to right.
    pub fn scan_valleys(&self) -> impl Iterator<Item = Triplet> + '_ {
        (1..self.points.len().saturating_sub(1))
            .filter_map(move |i| self.triplet_at(i))
            .filter(Triplet::is_valley)
    }

    pub fn mark_refined(&mut self, index: usize) {
        if let Some(p) = self.points.get_mut(index) {
            p.refined = true;
        }
    }

    /// The point with the least ordinate (first one on ties).
    pub fn lowest(&self) -> Option<EvalPoint> {
        self.points
            .iter()
            .copied()
            .reduce(|best, p| if p.y < best.y { p } else { best })
    }
}

impl FromIterator<EvalPoint> for Polygonal {
    /// Builds a polygonal from points already in strictly increasing order.
    fn from_iter<I: IntoIterator<Item = EvalPoint>>(iter: I) -> Self {
        let points: Vec<EvalPoint> = iter.into_iter().collect();
        debug_assert!(points.windows(2).all(|w| w[0].x < w[1].x));
        Self { points }
    }
}
