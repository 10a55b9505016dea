//! L1 distance transforms on non-uniform grids.
//!
//! Given a cost table `B` aligned with an ascending grid `v`, the transform is
//! `D_k = min_l B_l + alpha * d(v_k, v_l)`, the lower envelope of cones of
//! slope `alpha` rooted at the grid points. On the real line a forward and a
//! backward sweep compute it in O(K). On the circle the grid is unrolled three
//! times (`v - 2pi`, `v`, `v + 2pi`), the real transform is applied to the
//! tripled table, and the middle third is kept.

use std::f64::consts::TAU;

use crate::candidates::check_grid;
use crate::error::{Error, Result};
use crate::signal::{check_alpha, Metric};

/// Two-pass transform of `d` in place on the ascending grid described by
/// `steps[k] = alpha * (v[k] - v[k - 1])` (`steps[0]` is unused).
///
/// Equal candidates never replace the stored value.
#[inline]
fn two_pass(d: &mut [f64], steps: &[f64]) {
    debug_assert_eq!(d.len(), steps.len());
    let k = d.len();
    for i in 1..k {
        let cand = d[i - 1] + steps[i];
        if cand < d[i] {
            d[i] = cand;
        }
    }
    for i in (0..k.saturating_sub(1)).rev() {
        let cand = d[i + 1] + steps[i + 1];
        if cand < d[i] {
            d[i] = cand;
        }
    }
}

fn steps_for(v: &[f64], alpha: f64) -> Vec<f64> {
    let mut steps = Vec::with_capacity(v.len());
    steps.push(0.0);
    steps.extend(v.windows(2).map(|w| alpha * (w[1] - w[0])));
    steps
}

fn tripled_grid(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|&x| x - TAU)
        .chain(v.iter().copied())
        .chain(v.iter().map(|&x| x + TAU))
        .collect()
}

fn check_inputs(b: &[f64], v: &[f64], alpha: f64, metric: Metric) -> Result<()> {
    if b.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: v.len(),
            found: b.len(),
        });
    }
    check_alpha(alpha)?;
    check_grid(v, metric)?;
    if let Some(index) = b.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { what: "cost", index });
    }
    Ok(())
}

/// Real-valued distance transform on an ascending grid.
pub fn dist_trans_real(b: &[f64], v: &[f64], alpha: f64) -> Result<Vec<f64>> {
    check_inputs(b, v, alpha, Metric::Real)?;
    let mut d = b.to_vec();
    two_pass(&mut d, &steps_for(v, alpha));
    Ok(d)
}

/// Circle-valued distance transform on an ascending grid of canonical angles.
pub fn dist_trans_circ(b: &[f64], v: &[f64], alpha: f64) -> Result<Vec<f64>> {
    check_inputs(b, v, alpha, Metric::Circular)?;
    let k = v.len();
    let mut d: Vec<f64> = b.iter().chain(b).chain(b).copied().collect();
    two_pass(&mut d, &steps_for(&tripled_grid(v), alpha));
    Ok(d[k..2 * k].to_vec())
}

/// Literal O(K^2) evaluation of the transform. Reference for testing.
pub fn naive_dist_trans(b: &[f64], v: &[f64], alpha: f64, metric: Metric) -> Result<Vec<f64>> {
    check_inputs(b, v, alpha, metric)?;
    Ok(v.iter()
        .map(|&vk| {
            b.iter()
                .zip(v)
                .map(|(&bl, &vl)| bl + alpha * metric.distance(vk, vl))
                .fold(f64::INFINITY, f64::min)
        })
        .collect())
}

/// Dispatches to the real or circular transform.
pub fn dist_trans(b: &[f64], v: &[f64], alpha: f64, metric: Metric) -> Result<Vec<f64>> {
    match metric {
        Metric::Real => dist_trans_real(b, v, alpha),
        Metric::Circular => dist_trans_circ(b, v, alpha),
    }
}

/// Reusable transform for a fixed grid and `alpha`.
///
/// Precomputes the sweep increments (and the tripled grid on the circle) so
/// that repeated application, as in the tabulation, allocates nothing.
#[derive(Debug, Clone)]
pub struct DistanceTransform {
    metric: Metric,
    k: usize,
    steps: Vec<f64>,
    scratch: Vec<f64>,
}

impl DistanceTransform {
    /// Validates the grid and `alpha`.
    pub fn new(v: &[f64], alpha: f64, metric: Metric) -> Result<Self> {
        check_alpha(alpha)?;
        check_grid(v, metric)?;
        if v.is_empty() {
            return Err(Error::EmptySignal);
        }
        let k = v.len();
        let (steps, scratch) = match metric {
            Metric::Real => (steps_for(v, alpha), Vec::new()),
            Metric::Circular => (steps_for(&tripled_grid(v), alpha), vec![0.0; 3 * k]),
        };
        Ok(Self {
            metric,
            k,
            steps,
            scratch,
        })
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// Writes the transform of `b` into `out`. Both must have the grid's length.
    pub fn apply(&mut self, b: &[f64], out: &mut [f64]) {
        assert_eq!(b.len(), self.k, "cost table length");
        assert_eq!(out.len(), self.k, "output length");
        let k = self.k;
        match self.metric {
            Metric::Real => {
                out.copy_from_slice(b);
                two_pass(out, &self.steps);
            }
            Metric::Circular => {
                for chunk in self.scratch.chunks_exact_mut(k) {
                    chunk.copy_from_slice(b);
                }
                two_pass(&mut self.scratch, &self.steps);
                out.copy_from_slice(&self.scratch[k..2 * k]);
            }
        }
    }
}
