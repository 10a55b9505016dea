//! Brute-force references for testing the solver.
//!
//! Everything here is written as literally as possible and shares only
//! [`Metric::distance`] and [`energy`] with the rest of the crate.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::candidates::CandidateGrid;
use crate::error::{Error, Result};
use crate::signal::{energy, Metric, Signal};

/// Default guard on `K^N` for [`exhaustive_solve`].
pub const DEFAULT_MAX_STATES: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub minimizer: Vec<f64>,
    pub energy: f64,
    pub evaluated_count: u64,
}

/// Minimizes the energy over all `K^N` grid tuples.
///
/// Tuples are visited in lexicographic index order and only a strictly
/// smaller energy replaces the incumbent, so the lexicographically first
/// minimizer is returned.
pub fn exhaustive_solve(
    signal: &Signal,
    grid: &CandidateGrid,
    alpha: f64,
    max_states: u128,
) -> Result<OracleResult> {
    let n = signal.len();
    let k = grid.len();
    let mut states: u128 = 1;
    for _ in 0..n {
        states = states.saturating_mul(k as u128);
    }
    if states > max_states {
        return Err(Error::TooManyStates {
            states,
            max: max_states,
        });
    }

    let v = grid.values();
    let mut idx = vec![0usize; n];
    let mut x = vec![v[0]; n];
    let mut best = OracleResult {
        minimizer: x.clone(),
        energy: f64::INFINITY,
        evaluated_count: 0,
    };
    loop {
        let e = energy(signal, &x, alpha)?;
        best.evaluated_count += 1;
        if e < best.energy {
            best.energy = e;
            best.minimizer.copy_from_slice(&x);
        }
        // odometer, last coordinate fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(best);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < k {
                x[pos] = v[idx[pos]];
                break;
            }
            idx[pos] = 0;
            x[pos] = v[0];
        }
    }
}

/// Uniform lattice of `resolution` points: the data range for real signals,
/// the whole circle `(-pi, pi]` for circular ones.
pub fn probe_lattice(signal: &Signal, resolution: usize) -> Vec<f64> {
    let r = resolution.max(2);
    match signal.metric() {
        Metric::Real => {
            let lo = signal.values().iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = signal.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            (0..r)
                .map(|j| {
                    if j == r - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * j as f64 / (r - 1) as f64
                    }
                })
                .collect()
        }
        Metric::Circular => (1..=r).map(|j| -PI + TAU * j as f64 / r as f64).collect(),
    }
}

/// Best energy over the probe lattice and around `anchor`.
///
/// The lattice part is the minimum over all `resolution^N` lattice tuples.
/// Listing them one by one is infeasible beyond tiny N, so it is evaluated
/// by the plain O(R^2 N) min-sum recursion over the lattice, which visits the
/// same set. The second part evaluates `trials` random perturbations of
/// `anchor` (typically the solver output) at scales from 1e-1 down to 1e-7.
pub fn continuous_probe(
    signal: &Signal,
    alpha: f64,
    resolution: usize,
    trials: usize,
    seed: u64,
    anchor: &[f64],
) -> Result<f64> {
    let metric = signal.metric();
    let lattice = probe_lattice(signal, resolution);
    let y = signal.values();
    let w = signal.weights();

    let mut cost: Vec<f64> = lattice.iter().map(|&p| w[0] * metric.distance(p, y[0])).collect();
    for n in 1..signal.len() {
        let next: Vec<f64> = lattice
            .iter()
            .map(|&p| {
                let mut best = f64::INFINITY;
                for (q, &c) in lattice.iter().zip(&cost) {
                    let e = c + alpha * metric.distance(p, *q);
                    if e < best {
                        best = e;
                    }
                }
                best + w[n] * metric.distance(p, y[n])
            })
            .collect();
        cost = next;
    }
    let mut best = cost.iter().cloned().fold(f64::INFINITY, f64::min);

    if !anchor.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = anchor.to_vec();
        for t in 0..trials {
            let scale = 10f64.powi(-1 - (t % 7) as i32);
            for (xi, &a) in x.iter_mut().zip(anchor) {
                let moved = if rng.gen_bool(0.5) {
                    a + rng.gen_range(-scale..=scale)
                } else {
                    a
                };
                *xi = match metric {
                    Metric::Real => moved,
                    Metric::Circular => literal_wrap(moved),
                };
            }
            best = best.min(energy(signal, &x, alpha)?);
        }
    }
    Ok(best)
}

fn literal_wrap(theta: f64) -> f64 {
    let mut t = theta;
    while t > PI {
        t -= TAU;
    }
    while t <= -PI {
        t += TAU;
    }
    t
}

fn check_weights(y: &[f64], w: &[f64]) -> Result<()> {
    if y.is_empty() {
        return Err(Error::EmptySignal);
    }
    if y.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: y.len(),
            found: w.len(),
        });
    }
    if w.iter().sum::<f64>() <= 0.0 {
        return Err(Error::AllZeroWeights);
    }
    Ok(())
}

fn best_candidate(mut candidates: Vec<f64>, y: &[f64], w: &[f64], metric: Metric) -> f64 {
    candidates.sort_by(f64::total_cmp);
    let mut best = candidates[0];
    let mut best_cost = f64::INFINITY;
    for &c in &candidates {
        let cost: f64 = y.iter().zip(w).map(|(&yn, &wn)| wn * metric.distance(c, yn)).sum();
        if cost < best_cost {
            best_cost = cost;
            best = c;
        }
    }
    best
}

/// Weighted median among the data values; ties go to the smallest value.
pub fn weighted_median_real(y: &[f64], w: &[f64]) -> Result<f64> {
    check_weights(y, w)?;
    Ok(best_candidate(y.to_vec(), y, w, Metric::Real))
}

/// Weighted circular median among the data values and their antipodes;
/// ties go to the smallest canonical angle.
pub fn weighted_median_circular(y: &[f64], w: &[f64]) -> Result<f64> {
    check_weights(y, w)?;
    let mut candidates = y.to_vec();
    candidates.extend(y.iter().map(|&t| literal_wrap(t + PI)));
    Ok(best_candidate(candidates, y, w, Metric::Circular))
}

/// Weighted sum of distances from `mu` to the samples.
pub fn median_objective(mu: f64, y: &[f64], w: &[f64], metric: Metric) -> f64 {
    y.iter().zip(w).map(|(&yn, &wn)| wn * metric.distance(mu, yn)).sum()
}
