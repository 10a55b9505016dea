#![allow(dead_code)]

use std::f64::consts::PI;

use l1tv::{canonicalize_angle, Metric, Signal};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `|a - b| <= tol * max(|a|, |b|)`, exact equality always accepted.
pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

pub fn random_angle(rng: &mut ChaCha8Rng) -> f64 {
    canonicalize_angle(rng.gen_range(-PI..=PI)).unwrap()
}

/// Strictly ascending random grid of length `k`.
pub fn random_grid(rng: &mut ChaCha8Rng, k: usize, metric: Metric) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..k)
            .map(|_| match metric {
                Metric::Real => rng.gen_range(-50.0..50.0),
                Metric::Circular => random_angle(rng),
            })
            .collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        if v.len() == k {
            return v;
        }
    }
}

/// Small instance: values drawn from an alphabet of at most `max_alphabet`
/// values, weights uniform in [0, 2] with at least one positive.
pub fn small_instance(rng: &mut ChaCha8Rng, max_n: usize, max_alphabet: usize, metric: Metric) -> Signal {
    let n = rng.gen_range(1..=max_n);
    let size = rng.gen_range(1..=max_alphabet);
    let alphabet: Vec<f64> = (0..size)
        .map(|_| match metric {
            Metric::Real => rng.gen_range(-5.0..5.0),
            Metric::Circular => random_angle(rng),
        })
        .collect();
    let values: Vec<f64> = (0..n).map(|_| *alphabet.choose(rng).unwrap()).collect();
    loop {
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=2.0)).collect();
        if weights.iter().any(|&w| w > 0.0) {
            return Signal::new(values, weights, metric).unwrap();
        }
    }
}
