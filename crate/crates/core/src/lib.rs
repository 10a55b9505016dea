//! Exact L1-TV regularization of univariate signals.
//!
//! Minimizes
//!
//! ```text
//! alpha * sum_{n<N} d(x_n, x_{n+1}) + sum_n w_n d(x_n, y_n)
//! ```
//!
//! for real-valued data (`d(u, v) = |u - v|`) and for circle-valued data
//! (arc-length distance on angles in `(-pi, pi]`). Some global minimizer takes
//! its values in a finite candidate set of size K (the data values, plus their
//! antipodes on the circle). A Viterbi recursion over that set, accelerated by
//! O(K) distance transforms on the non-uniform grid, finds it in O(KN).
//!
//! ```
//! use l1tv::{solve, Signal};
//!
//! let signal = Signal::real(vec![0.0, 0.1, 5.0, 0.0, 0.2]).unwrap();
//! let report = solve(&signal, 1.5).unwrap();
//! assert_eq!(report.minimizer, vec![0.1; 5]);
//! ```

pub mod bench;
pub mod candidates;
pub mod cli;
pub mod dtransform;
pub mod error;
pub mod oracle;
pub mod signal;
pub mod solver;
pub mod synth;

pub use candidates::{antipodal, build_grid, values_of, CandidateGrid};
pub use dtransform::{dist_trans, dist_trans_circ, dist_trans_real, naive_dist_trans, DistanceTransform};
pub use error::{Error, Result};
pub use signal::{canonicalize_angle, distance, energy, Metric, RegularizationParams, Signal};
pub use solver::{
    backtrack, solve, solve_with, tabulate, BacktrackPath, SolveOptions, SolveReport, TableStorage, Tables,
};
