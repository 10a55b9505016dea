//! Signals, the two data-space metrics, and the L1-TV energy.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Data space of a signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Real line, `d(u, v) = |u - v|`.
    Real,
    /// Unit circle parametrized by angles in `(-pi, pi]`, arc-length distance.
    Circular,
}

impl Metric {
    /// Distance between two points of the data space.
    ///
    /// Circular inputs must be canonical angles; the result then lies in `[0, pi]`.
    #[inline]
    pub fn distance(self, u: f64, v: f64) -> f64 {
        match self {
            Metric::Real => (u - v).abs(),
            Metric::Circular => {
                let d = (u - v).abs();
                if d > PI {
                    TAU - d
                } else {
                    d
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Real => "real",
            Metric::Circular => "circular",
        }
    }
}

/// Free-function form of [`Metric::distance`].
#[inline]
pub fn distance(metric: Metric, u: f64, v: f64) -> f64 {
    metric.distance(u, v)
}

/// Maps a finite angle to its representative in `(-pi, pi]`.
///
/// Angles already in range are returned bit-for-bit; `-pi` maps to `pi`.
pub fn canonicalize_angle(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::NonFinite {
            what: "angle",
            index: 0,
        });
    }
    Ok(wrap(theta))
}

pub(crate) fn wrap(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let mut t = theta;
    if t.abs() > 64.0 * TAU {
        t = PI - (PI - t).rem_euclid(TAU);
    }
    while t > PI {
        t -= TAU;
    }
    while t <= -PI {
        t += TAU;
    }
    t
}

/// Ordered samples with nonnegative weights in a given data space.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    values: Vec<f64>,
    weights: Vec<f64>,
    metric: Metric,
}

impl Signal {
    /// Validates and builds a signal. Circular values are canonicalized.
    pub fn new(values: Vec<f64>, weights: Vec<f64>, metric: Metric) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySignal);
        }
        if weights.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: values.len(),
                found: weights.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: "value",
                index,
            });
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFinite {
                    what: "weight",
                    index,
                });
            }
            if w < 0.0 {
                return Err(Error::NegativeWeight { index, value: w });
            }
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(Error::AllZeroWeights);
        }
        let values = match metric {
            Metric::Real => values,
            Metric::Circular => values.into_iter().map(wrap).collect(),
        };
        Ok(Self {
            values,
            weights,
            metric,
        })
    }

    /// Unit-weight signal.
    pub fn unweighted(values: Vec<f64>, metric: Metric) -> Result<Self> {
        let weights = vec![1.0; values.len()];
        Self::new(values, weights, metric)
    }

    pub fn real(values: Vec<f64>) -> Result<Self> {
        Self::unweighted(values, Metric::Real)
    }

    pub fn circular(values: Vec<f64>) -> Result<Self> {
        Self::unweighted(values, Metric::Circular)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
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

    /// Total variation `sum d(y_n, y_{n+1})` of the samples themselves.
    pub fn total_variation(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| self.metric.distance(w[0], w[1]))
            .sum()
    }
}

/// Regularization strength.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizationParams {
    alpha: f64,
}

impl RegularizationParams {
    pub fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { alpha })
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

/// L1-TV energy `alpha * sum d(x_n, x_{n+1}) + sum w_n d(x_n, y_n)`.
pub fn energy(signal: &Signal, x: &[f64], alpha: f64) -> Result<f64> {
    if x.len() != signal.len() {
        return Err(Error::LengthMismatch {
            expected: signal.len(),
            found: x.len(),
        });
    }
    let metric = signal.metric;
    let tv: f64 = x.windows(2).map(|w| metric.distance(w[0], w[1])).sum();
    let data: f64 = x
        .iter()
        .zip(&signal.values)
        .zip(&signal.weights)
        .map(|((&xn, &yn), &wn)| wn * metric.distance(xn, yn))
        .sum();
    Ok(alpha * tv + data)
}
