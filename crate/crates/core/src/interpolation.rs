//! Closed-form minima of Lagrange interpolants and golden-ratio subdivision.

use crate::polygonal::{EvalPoint, Polygonal};

/// Golden ratio conjugate, `(sqrt(5) - 1) / 2`.
pub const GOLD: f64 = 0.61803398875;
/// `1 - GOLD`, which is also `GOLD^2`.
pub const CGOLD: f64 = 0.38196601125;
/// Relative residual gap below which a step is snapped to the domain limit.
pub const MIN_RATIO: f64 = CGOLD * CGOLD;

/// Threshold on the cubic's derivative leading coefficient, relative to
/// `max(1, |linear coefficient|)`, below which the data is treated as
/// quadratic.
pub const CUBIC_DEGENERACY: f64 = 1e-12;

/// Minimum of an interpolant: its abscissa and the interpolant's own value
/// there (a prediction, not an evaluation of the objective).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpMin {
    pub x: f64,
    pub y_predicted: f64,
}

/// Outcome of [`cubic_min`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CubicMin {
    Minimum(InterpMin),
    /// The derivative has no two distinct real roots.
    NoMinimum,
    /// The leading coefficient vanishes; the data is effectively parabolic.
    Degenerate,
}

impl CubicMin {
    pub fn minimum(self) -> Option<InterpMin> {
        match self {
            CubicMin::Minimum(m) => Some(m),
            _ => None,
        }
    }
}

/// Lagrange weights `f_i / prod_{j != i} (x_i - x_j)`.
fn lagrange_weights<const N: usize>(pts: &[EvalPoint; N]) -> [f64; N] {
    let mut w = [0.0; N];
    for i in 0..N {
        let mut v = pts[i].y;
        for j in 0..N {
            if i != j {
                v /= pts[i].x - pts[j].x;
            }
        }
        w[i] = v;
    }
    w
}

/// Evaluates the Lagrange interpolant through `pts` at `x`.
pub fn lagrange_eval<const N: usize>(pts: &[EvalPoint; N], x: f64) -> f64 {
    let w = lagrange_weights(pts);
    (0..N)
        .map(|i| (0..N).filter(|&j| j != i).fold(w[i], |acc, j| acc * (x - pts[j].x)))
        .sum()
}

/// Vertex of the parabola through three points, when it opens upward.
///
/// The abscissas must be pairwise distinct.
pub fn parabola_min(p1: EvalPoint, p2: EvalPoint, p3: EvalPoint) -> Option<InterpMin> {
    let pts = [p1, p2, p3];
    let [a, b, c] = lagrange_weights(&pts);
    let curvature = a + b + c;
    // NaN (coincident abscissas) fails this test too
    if !(curvature > 0.0) {
        return None;
    }
    let x = (a * (p2.x + p3.x) + b * (p1.x + p3.x) + c * (p1.x + p2.x)) / (2.0 * curvature);
    if !x.is_finite() {
        return None;
    }
    Some(InterpMin {
        x,
        y_predicted: lagrange_eval(&pts, x),
    })
}

/// Local minimum of the cubic through four points.
///
/// Writing the cubic in Lagrange form, its derivative is
/// `A x^2 - 2 B x + C`; the minimum is the root `(B + sqrt(B^2 - A C)) / A`,
/// where the second derivative `2 (A x - B)` equals `2 sqrt(B^2 - A C) > 0`.
pub fn cubic_min(p1: EvalPoint, p2: EvalPoint, p3: EvalPoint, p4: EvalPoint) -> CubicMin {
    let pts = [p1, p2, p3, p4];
    let w = lagrange_weights(&pts);
    let xs = [p1.x, p2.x, p3.x, p4.x];

    let mut lead = 0.0;
    let mut linear = 0.0;
    let mut constant = 0.0;
    for (i, &wi) in w.iter().enumerate() {
        let others: Vec<f64> = (0..4).filter(|&j| j != i).map(|j| xs[j]).collect();
        let sum = others[0] + others[1] + others[2];
        let pairs = others[0] * others[1] + others[0] * others[2] + others[1] * others[2];
        lead += wi;
        linear += wi * sum;
        constant += wi * pairs;
    }
    lead *= 3.0;

    if !(lead.abs() > CUBIC_DEGENERACY * linear.abs().max(1.0)) {
        return CubicMin::Degenerate;
    }
    let disc = linear * linear - lead * constant;
    if !(disc > 0.0) {
        return CubicMin::NoMinimum;
    }
    let x = (linear + disc.sqrt()) / lead;
    if !x.is_finite() {
        return CubicMin::NoMinimum;
    }
    CubicMin::Minimum(InterpMin {
        x,
        y_predicted: lagrange_eval(&pts, x),
    })
}

/// New abscissa placed in the larger of `[x1, x2]` and `[x2, x3]`, at a
/// fraction `GOLD` of the smaller width away from `x2`. Equal widths take the
/// right side.
pub fn golden_subdivide(p1: EvalPoint, p2: EvalPoint, p3: EvalPoint) -> f64 {
    if p2.x - p1.x > p3.x - p2.x {
        p2.x - GOLD * (p3.x - p2.x)
    } else {
        p2.x + GOLD * (p2.x - p1.x)
    }
}

/// `x > a && x < b`
#[inline]
pub fn inside(x: f64, a: f64, b: f64) -> bool {
    x > a && x < b
}

/// Cubic minimum with a parabolic fallback for degenerate (quadratic) data.
///
/// The fallback parabola goes through the three consecutive points centered
/// on the lower of the two interior points.
pub fn cubic_or_parabola_min(p1: EvalPoint, p2: EvalPoint, p3: EvalPoint, p4: EvalPoint) -> Option<InterpMin> {
    match cubic_min(p1, p2, p3, p4) {
        CubicMin::Minimum(m) => Some(m),
        CubicMin::NoMinimum => None,
        CubicMin::Degenerate => {
            if p2.y <= p3.y {
                parabola_min(p1, p2, p3)
            } else {
                parabola_min(p2, p3, p4)
            }
        }
    }
}

/// Abscissas where a cubic through each window of four consecutive points
/// predicts a minimum that the polygonal does not already sample.
pub fn sliding_cubic_suspects(poly: &Polygonal, xtol: f64) -> Vec<f64> {
    let pts = poly.points();
    let mut out: Vec<f64> = Vec::new();
    for w in pts.windows(4) {
        let Some(m) = cubic_or_parabola_min(w[0], w[1], w[2], w[3]) else {
            continue;
        };
        if !inside(m.x, w[0].x, w[3].x) || poly.is_duplicate(m.x, xtol) {
            continue;
        }
        if out.iter().any(|&s| crate::polygonal::almost_equal_rel(m.x, s, xtol)) {
            continue;
        }
        out.push(m.x);
    }
    out
}
