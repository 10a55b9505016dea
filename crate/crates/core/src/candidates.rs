//! Finite candidate sets that contain the values of a global minimizer.
//!
//! For real data the data values suffice. On the circle the antipodes of the
//! data values are added as well.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::signal::{Metric, Signal};

/// Strictly ascending candidate values.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateGrid {
    values: Vec<f64>,
    metric: Metric,
}

impl CandidateGrid {
    /// Wraps an explicit grid, checking that it is strictly ascending (and
    /// canonical for the circle).
    pub fn from_sorted(values: Vec<f64>, metric: Metric) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySignal);
        }
        check_grid(&values, metric)?;
        Ok(Self { values, metric })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of an exact grid value.
    pub fn position(&self, value: f64) -> Option<usize> {
        self.values
            .binary_search_by(|v| v.partial_cmp(&value).unwrap_or(std::cmp::Ordering::Less))
            .ok()
    }

    pub fn contains(&self, value: f64) -> bool {
        self.position(value).is_some()
    }
}

pub(crate) fn check_grid(values: &[f64], metric: Metric) -> Result<()> {
    for (index, &v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { what: "grid value", index });
        }
        if metric == Metric::Circular && !(v > -PI && v <= PI) {
            return Err(Error::NonCanonicalAngle { index, value: v });
        }
    }
    if let Some(i) = values.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NotAscending { index: i + 1 });
    }
    Ok(())
}

/// Distinct values occurring in `y`, ascending.
pub fn values_of(y: &[f64]) -> Result<Vec<f64>> {
    if y.is_empty() {
        return Err(Error::EmptySignal);
    }
    let mut v = y.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    v.dedup();
    Ok(v)
}

/// The point diametrically opposite `theta` on the circle.
///
/// Equals `canonicalize_angle(theta + pi)`. Written as a branch so that the
/// shift is exact whenever `|theta| >= pi/2`.
#[inline]
pub fn antipodal(theta: f64) -> f64 {
    if theta > 0.0 {
        theta - PI
    } else {
        theta + PI
    }
}

/// Candidate grid of a signal: `Val(y)` for real data, `Val(y) ∪ Val(ỹ)` on the circle.
pub fn build_grid(signal: &Signal) -> CandidateGrid {
    let y = signal.values();
    let mut values: Vec<f64> = match signal.metric() {
        Metric::Real => y.to_vec(),
        Metric::Circular => y.iter().flat_map(|&t| [t, antipodal(t)]).collect(),
    };
    values.sort_unstable_by(f64::total_cmp);
    // dedup uses ==, so -0.0 and 0.0 collapse
    values.dedup();
    CandidateGrid {
        values,
        metric: signal.metric(),
    }
}
