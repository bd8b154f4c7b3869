//! Observation curves and the dynamic evaluation scores computed on them.
//!
//! A feature-selection run gets evaluated at several subset sizes `k`,
//! producing discrete observations `(k, M(k))` of a bounded performance
//! measure. Linear interpolation between consecutive observations yields the
//! continuous curve `g`. The FSDEM score is the mean value of `g` over an
//! integration range `[a, b]` (trapezoidal rule); the stability score is the
//! mean first-order derivative of `g` over the integer grid of `[a, b]`
//! (finite differences).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bounds of the performance measure; accuracy-like measures live in [0, 1].
pub const DEFAULT_BOUNDS: (f64, f64) = (0.0, 1.0);

/// Discrete observations `(k, M(k))`, sorted by `k`, interpreted as a
/// piecewise-linear function between consecutive points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservationCurve {
    points: Vec<(u32, f64)>,
    bounds: (f64, f64),
}

impl ObservationCurve {
    /// Builds a curve over the default [0, 1] measure bounds. Observations
    /// may arrive in any order; they are sorted by `k`.
    pub fn new(observations: Vec<(u32, f64)>) -> Result<Self> {
        Self::with_bounds(observations, DEFAULT_BOUNDS)
    }

    /// Builds a curve for a measure bounded by `bounds`.
    pub fn with_bounds(mut observations: Vec<(u32, f64)>, bounds: (f64, f64)) -> Result<Self> {
        if observations.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "an observation curve needs at least 2 points, got {}",
                observations.len()
            )));
        }
        if bounds.0 >= bounds.1 || !bounds.0.is_finite() || !bounds.1.is_finite() {
            return Err(Error::InvalidInput(format!(
                "measure bounds must be a finite interval, got [{}, {}]",
                bounds.0, bounds.1
            )));
        }
        observations.sort_by_key(|&(k, _)| k);
        for pair in observations.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidInput(format!(
                    "duplicate observation at k={}",
                    pair[0].0
                )));
            }
        }
        for &(k, value) in &observations {
            if k == 0 {
                return Err(Error::InvalidInput("k must be positive".into()));
            }
            if !value.is_finite() || value < bounds.0 || value > bounds.1 {
                return Err(Error::InvalidInput(format!(
                    "observation ({k}, {value}) outside measure bounds [{}, {}]",
                    bounds.0, bounds.1
                )));
            }
        }
        Ok(ObservationCurve {
            points: observations,
            bounds,
        })
    }

    pub fn points(&self) -> &[(u32, f64)] {
        &self.points
    }

    pub fn bounds(&self) -> (f64, f64) {
        self.bounds
    }

    pub fn min_k(&self) -> u32 {
        self.points[0].0
    }

    pub fn max_k(&self) -> u32 {
        self.points[self.points.len() - 1].0
    }

    /// Evaluates the piecewise-linear interpolant at `x`, which must lie
    /// within the curve support.
    pub fn value_at(&self, x: f64) -> Result<f64> {
        let (lo, hi) = (self.min_k() as f64, self.max_k() as f64);
        if !(lo..=hi).contains(&x) {
            return Err(Error::InvalidRange(format!(
                "x={x} outside curve support [{lo}, {hi}]"
            )));
        }
        // Index of the first point with k >= x.
        let idx = self.points.partition_point(|&(k, _)| (k as f64) < x);
        let (k1, v1) = self.points[idx];
        if (k1 as f64) == x {
            return Ok(v1);
        }
        let (k0, v0) = self.points[idx - 1];
        let t = (x - k0 as f64) / (k1 as f64 - k0 as f64);
        Ok(v0 + t * (v1 - v0))
    }

    fn check_range(&self, range: &MetricRange) -> Result<()> {
        if range.a() < self.min_k() || range.b() > self.max_k() {
            return Err(Error::InvalidRange(format!(
                "range [{}, {}] outside curve support [{}, {}]",
                range.a(),
                range.b(),
                self.min_k(),
                self.max_k()
            )));
        }
        Ok(())
    }
}

/// Integration bounds `[a, b]` over the number of selected features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricRange {
    a: u32,
    b: u32,
}

impl MetricRange {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidRange("a must be positive".into()));
        }
        if a >= b {
            return Err(Error::InvalidRange(format!("need a < b, got [{a}, {b}]")));
        }
        Ok(MetricRange { a, b })
    }

    /// The full support of a curve as an integration range.
    pub fn full(curve: &ObservationCurve) -> Result<Self> {
        Self::new(curve.min_k(), curve.max_k())
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn width(&self) -> f64 {
        (self.b - self.a) as f64
    }

    /// Number of integer grid points in `[a, b]`.
    pub fn grid_len(&self) -> usize {
        (self.b - self.a) as usize + 1
    }
}

/// Sorts raw observations into an [`ObservationCurve`] over [0, 1].
pub fn build_curve(observations: &[(u32, f64)]) -> Result<ObservationCurve> {
    ObservationCurve::new(observations.to_vec())
}

/// Integrates the piecewise-linear curve over `[a, b]` with the trapezoidal
/// rule. Every curve node inside the range contributes a trapezoid corner;
/// if `a` or `b` falls between nodes the endpoint value is interpolated.
pub fn trapezoid_integral(curve: &ObservationCurve, range: &MetricRange) -> Result<f64> {
    curve.check_range(range)?;
    let a = range.a() as f64;
    let b = range.b() as f64;

    // Trapezoid corners: a, b, and every node strictly between them.
    let mut x_prev = a;
    let mut v_prev = curve.value_at(a)?;
    let mut area = 0.0;
    for &(k, v) in curve.points() {
        let x = k as f64;
        if x <= a {
            continue;
        }
        if x >= b {
            break;
        }
        area += (x - x_prev) * (v_prev + v) / 2.0;
        x_prev = x;
        v_prev = v;
    }
    let v_b = curve.value_at(b)?;
    area += (b - x_prev) * (v_prev + v_b) / 2.0;
    Ok(area)
}

/// The FSDEM score: area under the curve over `[a, b]`, normalized by the
/// range width. Inherits its bounds from the underlying measure.
pub fn fsdem_score(curve: &ObservationCurve, range: &MetricRange) -> Result<f64> {
    Ok(trapezoid_integral(curve, range)? / range.width())
}

/// First-order derivative of the interpolated curve at every integer
/// `x ∈ [a, b]`: central differences in the interior, a forward difference
/// at `a` and a backward difference at `b`.
pub fn finite_differences(
    curve: &ObservationCurve,
    range: &MetricRange,
) -> Result<Vec<(u32, f64)>> {
    curve.check_range(range)?;
    let (a, b) = (range.a(), range.b());
    let mut slopes = Vec::with_capacity(range.grid_len());
    for x in a..=b {
        let slope = if x == a {
            curve.value_at((x + 1) as f64)? - curve.value_at(x as f64)?
        } else if x == b {
            curve.value_at(x as f64)? - curve.value_at((x - 1) as f64)?
        } else {
            (curve.value_at((x + 1) as f64)? - curve.value_at((x - 1) as f64)?) / 2.0
        };
        slopes.push((x, slope));
    }
    Ok(slopes)
}

/// The stability score: mean first-order derivative over the integer grid of
/// `[a, b]`. For measures in [0, 1] sampled at unit `k` spacing the value
/// lies in [−1, 1]; positive values mean adding features predominantly
/// improves the measure, negative values mean it degrades.
pub fn stability_score(curve: &ObservationCurve, range: &MetricRange) -> Result<f64> {
    let slopes = finite_differences(curve, range)?;
    let sum: f64 = slopes.iter().map(|&(_, s)| s).sum();
    Ok(sum / range.grid_len() as f64)
}

/// Thins a sorted list of subset sizes, keeping every `stride`-th entry plus
/// the final one so the curve support is preserved.
pub fn subsample_observations(ks: &[u32], stride: usize) -> Result<Vec<u32>> {
    if ks.is_empty() {
        return Err(Error::InvalidInput("no observation sizes given".into()));
    }
    if stride == 0 {
        return Err(Error::InvalidInput("stride must be at least 1".into()));
    }
    if ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "observation sizes must be strictly ascending".into(),
        ));
    }
    let mut kept: Vec<u32> = ks.iter().copied().step_by(stride).collect();
    let last = ks[ks.len() - 1];
    if *kept.last().unwrap() != last {
        kept.push(last);
    }
    Ok(kept)
}
