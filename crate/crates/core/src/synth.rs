//! Synthetic test signals and quantization.
//!
//! Signals are piecewise constant with additive Laplacian noise (wrapped to
//! `(-pi, pi]` on the circle). Randomness comes from ChaCha8 seeded with
//! `seed_from_u64`, so a spec and seed fully determine the output.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::candidates::antipodal;
use crate::error::{Error, Result};
use crate::signal::{wrap, Metric, Signal};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub length: usize,
    pub segment_count: usize,
    /// Laplacian scale `b`; zero gives a noise-free signal.
    pub noise_scale: f64,
    pub seed: u64,
    pub metric: Metric,
    pub quant_levels: Option<usize>,
}

impl SynthSpec {
    pub fn new(length: usize, segment_count: usize, noise_scale: f64, seed: u64, metric: Metric) -> Self {
        Self {
            length,
            segment_count,
            noise_scale,
            seed,
            metric,
            quant_levels: None,
        }
    }

    pub fn with_quantization(mut self, levels: usize) -> Self {
        self.quant_levels = Some(levels);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::InvalidSpec("length must be positive".into()));
        }
        if self.segment_count == 0 || self.segment_count > self.length {
            return Err(Error::InvalidSpec(format!(
                "segment count {} must lie in 1..={}",
                self.segment_count, self.length
            )));
        }
        if !(self.noise_scale.is_finite() && self.noise_scale >= 0.0) {
            return Err(Error::InvalidSpec(format!(
                "noise scale {} must be finite and nonnegative",
                self.noise_scale
            )));
        }
        if let Some(l) = self.quant_levels {
            if l < 2 {
                return Err(Error::InvalidLevels(l));
            }
        }
        Ok(())
    }
}

/// Laplacian sample by inverse CDF: `-b sgn(u) ln(1 - 2|u|)` with `u` uniform on `(-1/2, 1/2)`.
pub fn sample_laplace<R: Rng>(rng: &mut R, scale: f64) -> f64 {
    let u = loop {
        let u = rng.gen::<f64>() - 0.5;
        if u > -0.5 {
            break u;
        }
    };
    -scale * u.signum() * (1.0 - 2.0 * u.abs()).ln()
}

/// Piecewise-constant ground truth and its noisy observation.
///
/// Segment boundaries are drawn uniformly without replacement from the
/// `N - 1` interior positions. Segment levels are uniform on `[0, 1)` for real
/// signals and on the circle otherwise. If the spec asks for quantization the
/// noisy signal is quantized, the ground truth is not.
pub fn gen_piecewise_constant(spec: &SynthSpec) -> Result<(Vec<f64>, Signal)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.length;

    let mut cuts: Vec<usize> = if spec.segment_count > 1 {
        sample(&mut rng, n - 1, spec.segment_count - 1)
            .into_iter()
            .map(|i| i + 1)
            .collect()
    } else {
        Vec::new()
    };
    cuts.sort_unstable();
    cuts.push(n);

    let mut truth = Vec::with_capacity(n);
    let mut start = 0;
    for &end in &cuts {
        let level = match spec.metric {
            Metric::Real => rng.gen::<f64>(),
            Metric::Circular => wrap(rng.gen_range(-PI..PI)),
        };
        truth.extend(std::iter::repeat_n(level, end - start));
        start = end;
    }

    let noisy: Vec<f64> = truth
        .iter()
        .map(|&t| {
            let x = t + sample_laplace(&mut rng, spec.noise_scale);
            match spec.metric {
                Metric::Real => x,
                Metric::Circular => wrap(x),
            }
        })
        .collect();

    let mut signal = Signal::unweighted(noisy, spec.metric)?;
    if let Some(levels) = spec.quant_levels {
        signal = quantize(&signal, levels)?;
    }
    Ok((truth, signal))
}

/// The `levels` equally spaced angles `j * 2pi / levels`, canonical, indexed by `j`.
///
/// For even `levels` the antipode of every level is exactly another level,
/// so a quantized signal gains no new candidates from antipodal augmentation.
/// Levels with `|angle| < pi/2` are derived from their antipodes to get this.
pub fn circular_levels(levels: usize) -> Vec<f64> {
    let l = levels as i64;
    let raw = |m: i64| -> f64 {
        if 2 * m == l {
            PI
        } else {
            TAU * m as f64 / levels as f64
        }
    };
    (0..l)
        .map(|r| {
            let m = if 2 * r > l { r - l } else { r };
            if l % 2 == 1 {
                return raw(m);
            }
            if 4 * m == l {
                FRAC_PI_2
            } else if 4 * m == -l {
                -FRAC_PI_2
            } else if 4 * m.abs() < l {
                let partner = if m > 0 { m - l / 2 } else { m + l / 2 };
                antipodal(raw(partner))
            } else {
                raw(m)
            }
        })
        .collect()
}

/// Snaps every sample to the nearest of `levels` equally spaced levels.
///
/// Real signals use levels spanning `[min y, max y]`, circular ones the
/// levels of [`circular_levels`].
pub fn quantize(signal: &Signal, levels: usize) -> Result<Signal> {
    if levels < 2 {
        return Err(Error::InvalidLevels(levels));
    }
    let y = signal.values();
    let snapped: Vec<f64> = match signal.metric() {
        Metric::Real => {
            let lo = y.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if lo == hi {
                y.to_vec()
            } else {
                let top = (levels - 1) as f64;
                let level = |j: usize| {
                    if j == levels - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * j as f64 / top
                    }
                };
                y.iter()
                    .map(|&x| {
                        let j = ((x - lo) / (hi - lo) * top).round().clamp(0.0, top) as usize;
                        level(j)
                    })
                    .collect()
            }
        }
        Metric::Circular => {
            let table = circular_levels(levels);
            let per_radian = levels as f64 / TAU;
            y.iter()
                .map(|&t| {
                    let j = ((t * per_radian).round() as i64).rem_euclid(levels as i64);
                    table[j as usize]
                })
                .collect()
        }
    };
    Signal::new(snapped, signal.weights().to_vec(), signal.metric())
}
