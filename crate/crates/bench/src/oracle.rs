//! Reference minima by exhaustive sampling.

use serde::Serialize;

use polymin::{CGOLD, GOLD};

/// Grid points used by [`dense_oracle`] unless told otherwise.
pub const ORACLE_GRID: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Oracle {
    pub x: f64,
    pub f: f64,
    /// Strict local minima seen on the grid, endpoints included.
    pub local_minima: usize,
}

/// Golden-section search on `[a, b]` until the interval is below `tol`.
pub fn golden_polish(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut x1 = a + CGOLD * (b - a);
    let mut x2 = a + GOLD * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + CGOLD * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLD * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Samples `n + 1` equally spaced points and polishes the best few grid
/// minima with golden-section search.
pub fn dense_oracle(f: &dyn Fn(f64) -> f64, xinf: f64, xsup: f64, n: usize) -> Oracle {
    assert!(n >= 2 && xsup > xinf);
    let h = (xsup - xinf) / n as f64;
    let xs = |i: usize| if i == n { xsup } else { xinf + i as f64 * h };
    let ys: Vec<f64> = (0..=n).map(|i| f(xs(i))).collect();

    let mut minima: Vec<usize> = (0..=n)
        .filter(|&i| {
            let left = i == 0 || ys[i] < ys[i - 1];
            let right = i == n || ys[i] < ys[i + 1];
            left && right
        })
        .collect();
    let local_minima = minima.len();
    if minima.is_empty() {
        // flat stretches only; fall back on the overall least sample
        let i = (0..=n).min_by(|&a, &b| ys[a].total_cmp(&ys[b])).unwrap();
        minima.push(i);
    }
    minima.sort_by(|&a, &b| ys[a].total_cmp(&ys[b]));

    let tol = 1e-13 * (1.0 + xinf.abs().max(xsup.abs()));
    let mut best = (xs(minima[0]), ys[minima[0]]);
    for &i in minima.iter().take(8) {
        let lo = xs(i.saturating_sub(1));
        let hi = xs((i + 1).min(n));
        let (x, y) = golden_polish(f, lo, hi, tol);
        for cand in [(x, y), (xs(i), ys[i])] {
            if cand.1 < best.1 {
                best = cand;
            }
        }
    }
    Oracle {
        x: best.0,
        f: best.1,
        local_minima,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polish_finds_quadratic_vertex() {
        let (x, y) = golden_polish(&|x: f64| (x - 0.3).powi(2), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-10);
        assert!(y < 1e-20);
    }

    #[test]
    fn oracle_on_known_functions() {
        let o = dense_oracle(&|x: f64| (x - 2.0).powi(2), 0.0, 10.0, 10_000);
        assert!((o.x - 2.0).abs() < 1e-8);
        assert_eq!(o.local_minima, 1);
        let o = dense_oracle(&|x: f64| -x, 0.0, 1.0, 1000);
        assert_eq!((o.x, o.f), (1.0, -1.0));
        let o = dense_oracle(&|x: f64| x.powi(4) - x * x, -2.0, 2.0, 100_000);
        assert!((o.f + 0.25).abs() < 1e-14);
        assert!((o.x.abs() - 0.5f64.sqrt()).abs() < 1e-7);
        assert_eq!(o.local_minima, 2);
    }
}
