//! Runtime scaling measurements and the quadratic reference tabulation.

use std::io::Write;
use std::time::Instant;

use crate::candidates::CandidateGrid;
use crate::error::Result;
use crate::signal::{check_alpha, energy, Metric, Signal};
use crate::solver::{solve_with, SolveOptions, Tables};
use crate::synth::{gen_piecewise_constant, SynthSpec};

/// One timed solve configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub metric: Metric,
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    /// Median wall-clock seconds per solve.
    pub seconds: f64,
    pub energy: f64,
}

/// Tabulation with the inner minimum evaluated by a double loop, O(K^2 N).
pub fn naive_tabulate(signal: &Signal, grid: &CandidateGrid, alpha: f64) -> Result<Tables> {
    check_alpha(alpha)?;
    let metric = grid.metric();
    let v = grid.values();
    let y = signal.values();
    let w = signal.weights();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(signal.len());
    rows.push(v.iter().map(|&vk| w[0] * metric.distance(vk, y[0])).collect());
    for n in 1..signal.len() {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(v.len());
        for &vk in v {
            let mut best = f64::INFINITY;
            for (&bl, &vl) in prev.iter().zip(v) {
                best = best.min(bl + alpha * metric.distance(vk, vl));
            }
            row.push(w[n] * metric.distance(vk, y[n]) + best);
        }
        rows.push(row);
    }
    Ok(Tables::from_rows(&rows))
}

/// Instance used for timing: quantized piecewise-constant data with heavy noise,
/// so that all `levels` quantization levels tend to occur.
pub fn bench_instance(n: usize, levels: usize, seed: u64, metric: Metric) -> Result<Signal> {
    let segments = (n / 50).clamp(1, n);
    let spec = SynthSpec::new(n, segments, 1.0, seed, metric).with_quantization(levels);
    Ok(gen_piecewise_constant(&spec)?.1)
}

fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

/// Times `solve` for each length with `k_fixed` quantization levels.
///
/// One warm-up solve per length is discarded; the reported time is the median
/// of `repeats` further solves.
pub fn scaling_run(
    k_fixed: usize,
    lengths: &[usize],
    repeats: usize,
    seed: u64,
    metric: Metric,
    alpha: f64,
    options: SolveOptions,
) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::with_capacity(lengths.len());
    for &n in lengths {
        let signal = bench_instance(n, k_fixed, seed, metric)?;
        let warm = solve_with(&signal, alpha, options)?;
        let mut times = Vec::with_capacity(repeats.max(1));
        for _ in 0..repeats.max(1) {
            let t = Instant::now();
            let r = solve_with(&signal, alpha, options)?;
            times.push(t.elapsed().as_secs_f64());
            debug_assert_eq!(r.path, warm.path);
        }
        let e = energy(&signal, &warm.minimizer, alpha)?;
        records.push(BenchRecord {
            metric,
            n,
            k: warm.grid_size,
            alpha,
            seconds: median(&mut times),
            energy: e,
        });
    }
    Ok(records)
}

/// Least-squares slope of `ln(seconds)` against `ln(N)`.
pub fn loglog_slope(records: &[BenchRecord]) -> f64 {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .map(|r| ((r.n as f64).ln(), r.seconds.ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Writes records as CSV with header `metric,N,K,alpha,seconds,energy`.
pub fn write_csv<W: Write>(mut out: W, records: &[BenchRecord]) -> std::io::Result<()> {
    writeln!(out, "metric,N,K,alpha,seconds,energy")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{:.16e},{:.9e},{:.16e}",
            r.metric.name(),
            r.n,
            r.k,
            r.alpha,
            r.seconds,
            r.energy
        )?;
    }
    Ok(())
}
