//! Exact L1-TV minimization by dynamic programming over the candidate grid.
//!
//! The tabulation computes, for every position `n` and candidate `v_k`, the
//! least energy of a partial solution on `y_1..y_n` ending in `v_k`:
//!
//! ```text
//! B^1_k = w_1 d(v_k, y_1)
//! B^n_k = w_n d(v_k, y_n) + min_l { B^{n-1}_l + alpha d(v_k, v_l) }
//! ```
//!
//! where the inner minimum is a distance transform. Backtracking then picks
//! `l_N = argmin_k B^N_k` and `l_n = argmin_k B^n_k + alpha d(v_k, v_{l_{n+1}})`.
//! Ties go to the smallest grid index.

use std::time::{Duration, Instant};

use crate::candidates::{build_grid, CandidateGrid};
use crate::dtransform::DistanceTransform;
use crate::error::{Error, Result};
use crate::signal::{check_alpha, energy, Metric, Signal};

/// Above this many table entries `TableStorage::Auto` switches to checkpointing.
pub const FULL_TABLE_ENTRIES: usize = 1 << 25;

/// How the N cost tables are kept for backtracking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableStorage {
    /// Full when `N * K <= FULL_TABLE_ENTRIES`, checkpointed otherwise.
    #[default]
    Auto,
    /// All N tables, O(NK) memory.
    Full,
    /// Every `block`-th table is kept; the tables in between are recomputed
    /// block by block during backtracking. Same path as `Full`, about twice
    /// the tabulation work, O(K (N / block + block)) memory.
    Checkpointed { block: usize },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub storage: TableStorage,
}

/// Zero-based grid indices selecting one candidate per sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BacktrackPath(pub Vec<usize>);

impl BacktrackPath {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// `x_n = v_{l_n}`.
    pub fn values(&self, grid: &CandidateGrid) -> Vec<f64> {
        self.0.iter().map(|&l| grid.values()[l]).collect()
    }
}

/// The N cost tables of a tabulation, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Tables {
    k: usize,
    data: Vec<f64>,
}

impl Tables {
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let k = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == k), "ragged tables");
        Self {
            k,
            data: rows.concat(),
        }
    }

    /// Table `B^{n+1}` (zero-based `n`).
    pub fn table(&self, n: usize) -> &[f64] {
        &self.data[n * self.k..(n + 1) * self.k]
    }

    /// Number of tables (the signal length).
    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.k).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn grid_size(&self) -> usize {
        self.k
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.k.max(1))
    }
}

/// Result of a solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub minimizer: Vec<f64>,
    pub path: BacktrackPath,
    pub grid: CandidateGrid,
    /// Energy of `minimizer`, recomputed from the signal.
    pub energy: f64,
    pub grid_size: usize,
    pub signal_length: usize,
    pub alpha: f64,
    pub elapsed: Duration,
}

/// Forward recursion over a fixed signal and grid.
struct Recursion<'a> {
    signal: &'a Signal,
    grid: &'a [f64],
    metric: Metric,
    transform: DistanceTransform,
}

impl<'a> Recursion<'a> {
    fn new(signal: &'a Signal, grid: &'a CandidateGrid, alpha: f64) -> Result<Self> {
        if grid.metric() != signal.metric() {
            return Err(Error::InvalidSpec(format!(
                "grid metric {} does not match signal metric {}",
                grid.metric().name(),
                signal.metric().name()
            )));
        }
        let transform = DistanceTransform::new(grid.values(), alpha, grid.metric())?;
        Ok(Self {
            signal,
            grid: grid.values(),
            metric: grid.metric(),
            transform,
        })
    }

    fn add_data_term(&self, n: usize, row: &mut [f64]) {
        let y = self.signal.values()[n];
        let w = self.signal.weights()[n];
        for (b, &v) in row.iter_mut().zip(self.grid) {
            *b += w * self.metric.distance(v, y);
        }
    }

    fn first(&self, row: &mut [f64]) {
        row.fill(0.0);
        self.add_data_term(0, row);
    }

    /// `next = B^{n+1}` from `prev = B^n` (zero-based `n` of `next`).
    fn step(&mut self, n: usize, prev: &[f64], next: &mut [f64]) {
        self.transform.apply(prev, next);
        self.add_data_term(n, next);
    }
}

/// Fills all N cost tables.
pub fn tabulate(signal: &Signal, grid: &CandidateGrid, alpha: f64) -> Result<Tables> {
    let mut rec = Recursion::new(signal, grid, alpha)?;
    let k = grid.len();
    let n = signal.len();
    let mut data = vec![0.0; n * k];
    rec.first(&mut data[..k]);
    for i in 1..n {
        let (done, rest) = data.split_at_mut(i * k);
        rec.step(i, &done[(i - 1) * k..], &mut rest[..k]);
    }
    Ok(Tables { k, data })
}

#[inline]
fn argmin(values: impl Iterator<Item = f64>) -> usize {
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for (i, x) in values.enumerate() {
        if x < best_val {
            best_val = x;
            best = i;
        }
    }
    best
}

#[inline]
fn back_step(row: &[f64], grid: &[f64], metric: Metric, alpha: f64, next: usize) -> usize {
    let target = grid[next];
    argmin(
        row.iter()
            .zip(grid)
            .map(|(&b, &v)| b + alpha * metric.distance(v, target)),
    )
}

/// Recovers minimizing indices from a full tabulation.
pub fn backtrack(tables: &Tables, grid: &CandidateGrid, alpha: f64) -> BacktrackPath {
    let n = tables.len();
    assert_eq!(tables.grid_size(), grid.len(), "tables do not match grid");
    let mut path = vec![0; n];
    if n == 0 {
        return BacktrackPath(path);
    }
    path[n - 1] = argmin(tables.table(n - 1).iter().copied());
    for i in (0..n - 1).rev() {
        path[i] = back_step(tables.table(i), grid.values(), grid.metric(), alpha, path[i + 1]);
    }
    BacktrackPath(path)
}

fn checkpointed_path(
    signal: &Signal,
    grid: &CandidateGrid,
    alpha: f64,
    block: usize,
) -> Result<BacktrackPath> {
    let block = block.max(1);
    let mut rec = Recursion::new(signal, grid, alpha)?;
    let k = grid.len();
    let n = signal.len();
    let blocks = n.div_ceil(block);

    let mut checkpoints = vec![0.0; blocks * k];
    let mut prev = vec![0.0; k];
    let mut cur = vec![0.0; k];
    rec.first(&mut cur);
    for i in 0..n {
        if i > 0 {
            std::mem::swap(&mut prev, &mut cur);
            rec.step(i, &prev, &mut cur);
        }
        if i % block == 0 {
            checkpoints[(i / block) * k..(i / block + 1) * k].copy_from_slice(&cur);
        }
    }

    let mut path = vec![0; n];
    path[n - 1] = argmin(cur.iter().copied());
    let mut buf = vec![0.0; block * k];
    for b in (0..blocks).rev() {
        let start = b * block;
        let end = (start + block).min(n);
        buf[..k].copy_from_slice(&checkpoints[b * k..(b + 1) * k]);
        for t in 1..end - start {
            let (done, rest) = buf.split_at_mut(t * k);
            rec.step(start + t, &done[(t - 1) * k..], &mut rest[..k]);
        }
        for i in (start..end).rev() {
            if i == n - 1 {
                continue;
            }
            let row = &buf[(i - start) * k..(i - start + 1) * k];
            path[i] = back_step(row, grid.values(), grid.metric(), alpha, path[i + 1]);
        }
    }
    Ok(BacktrackPath(path))
}

/// Computes a global minimizer of the L1-TV energy with default options.
pub fn solve(signal: &Signal, alpha: f64) -> Result<SolveReport> {
    solve_with(signal, alpha, SolveOptions::default())
}

pub fn solve_with(signal: &Signal, alpha: f64, options: SolveOptions) -> Result<SolveReport> {
    check_alpha(alpha)?;
    let started = Instant::now();
    let grid = build_grid(signal);
    let n = signal.len();
    let k = grid.len();

    let path = if alpha == 0.0 || n == 1 {
        // every data term is minimized independently
        BacktrackPath(
            signal
                .values()
                .iter()
                .map(|&y| grid.position(y).expect("data value missing from grid"))
                .collect(),
        )
    } else {
        let storage = match options.storage {
            TableStorage::Auto if n.saturating_mul(k) <= FULL_TABLE_ENTRIES => TableStorage::Full,
            TableStorage::Auto => TableStorage::Checkpointed {
                block: (n as f64).sqrt().ceil() as usize,
            },
            s => s,
        };
        match storage {
            TableStorage::Checkpointed { block } => checkpointed_path(signal, &grid, alpha, block)?,
            _ => backtrack(&tabulate(signal, &grid, alpha)?, &grid, alpha),
        }
    };

    let minimizer = path.values(&grid);
    let energy = energy(signal, &minimizer, alpha)?;
    Ok(SolveReport {
        minimizer,
        path,
        energy,
        grid_size: k,
        signal_length: n,
        alpha,
        elapsed: started.elapsed(),
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tabulate_examples() {
        let s = Signal::real(vec![0.0, 1.0]).unwrap();
        let g = build_grid(&s);
        let t = tabulate(&s, &g, 0.5).unwrap();
        assert_eq!(t.table(0), &[0.0, 1.0]);
        assert_eq!(t.table(1), &[1.0, 0.5]);

        let s = Signal::new(vec![2.0], vec![3.0], Metric::Real).unwrap();
        let g = CandidateGrid::from_sorted(vec![0.0, 2.0, 5.0], Metric::Real).unwrap();
        let t = tabulate(&s, &g, 1.0).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.table(0), &[6.0, 0.0, 9.0]);

        let s = Signal::circular(vec![0.0, PI]).unwrap();
        let g = build_grid(&s);
        let t = tabulate(&s, &g, 2.0).unwrap();
        assert_eq!(t.table(0), &[0.0, PI]);
        assert_eq!(t.table(1), &[PI, PI]);
    }

    #[test]
    fn backtrack_examples() {
        let s = Signal::real(vec![0.0, 1.0]).unwrap();
        let g = build_grid(&s);
        let t = tabulate(&s, &g, 0.5).unwrap();
        assert_eq!(backtrack(&t, &g, 0.5), BacktrackPath(vec![0, 1]));

        let g = CandidateGrid::from_sorted(vec![0.0, 1.0], Metric::Real).unwrap();
        let t = Tables::from_rows(&[vec![3.0, 1.0]]);
        assert_eq!(backtrack(&t, &g, 1.0), BacktrackPath(vec![1]));

        let g = CandidateGrid::from_sorted(vec![0.0, 1.0, 2.0], Metric::Real).unwrap();
        let t = Tables::from_rows(&[vec![1.0; 3], vec![1.0; 3], vec![1.0; 3]]);
        assert_eq!(backtrack(&t, &g, 1.0), BacktrackPath(vec![0, 0, 0]));
    }

    #[test]
    fn solve_examples() {
        let s = Signal::real(vec![0.0, 1.0]).unwrap();
        let r = solve(&s, 0.5).unwrap();
        assert_eq!(r.minimizer, vec![0.0, 1.0]);
        assert_eq!(r.energy, 0.5);

        let r = solve(&s, 2.0).unwrap();
        assert_eq!(r.minimizer, vec![0.0, 0.0]);
        assert_eq!(r.energy, 1.0);

        let s = Signal::circular(vec![0.0, PI]).unwrap();
        let r = solve(&s, 2.0).unwrap();
        assert_eq!(r.minimizer, vec![0.0, 0.0]);
        assert_eq!(r.energy, PI);
        assert_eq!(r.grid_size, 2);
        assert_eq!(r.signal_length, 2);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            solve(&Signal::real(vec![1.0]).unwrap(), -0.1),
            Err(Error::InvalidAlpha(_))
        ));
        let s = Signal::new(vec![3.0, -1.0, 2.0], vec![1.0, 0.0, 2.0], Metric::Real).unwrap();
        let r = solve(&s, 0.0).unwrap();
        assert_eq!(r.minimizer, vec![3.0, -1.0, 2.0]);
        assert_eq!(r.energy, 0.0);
        let r = solve(&Signal::circular(vec![-2.0]).unwrap(), 5.0).unwrap();
        assert_eq!(r.minimizer, vec![-2.0]);
    }

    #[test]
    fn zero_weight_sample_follows_neighbours() {
        let s = Signal::new(vec![0.0, 5.0, 0.0], vec![1.0, 0.0, 1.0], Metric::Real).unwrap();
        let r = solve(&s, 0.1).unwrap();
        assert_eq!(r.minimizer, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn checkpointed_matches_full() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..60 {
            let n = rng.gen_range(1..80);
            let metric = if trial % 2 == 0 { Metric::Real } else { Metric::Circular };
            let alphabet: Vec<f64> = (0..rng.gen_range(1..12)).map(|_| rng.gen_range(-PI..PI)).collect();
            let values = (0..n).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect();
            let weights = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
            let s = Signal::new(values, weights, metric).unwrap();
            let alpha = rng.gen_range(0.01..3.0);
            let full = solve_with(&s, alpha, SolveOptions { storage: TableStorage::Full }).unwrap();
            for block in [1, 2, 3, 7, 100] {
                let opts = SolveOptions {
                    storage: TableStorage::Checkpointed { block },
                };
                let cp = solve_with(&s, alpha, opts).unwrap();
                assert_eq!(cp.path, full.path, "block {block}");
            }
        }
    }
}
