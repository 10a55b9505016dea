//! Times the solver over a ladder of signal lengths and prints CSV.

use std::io;
use std::process::ExitCode;

use clap::Parser;
use l1tv::bench::{loglog_slope, scaling_run, write_csv};
use l1tv::{Metric, SolveOptions};

#[derive(Debug, Parser)]
#[command(name = "l1tv-bench")]
struct Args {
    /// Quantization levels (fixed K).
    #[arg(long, default_value_t = 360)]
    levels: usize,
    /// Comma-separated signal lengths.
    #[arg(long, value_delimiter = ',', default_values_t = [10_000usize, 100_000, 1_000_000])]
    lengths: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Real-valued data instead of angles.
    #[arg(long)]
    real: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let metric = if args.real { Metric::Real } else { Metric::Circular };
    let mut lengths = args.lengths;
    lengths.sort_unstable();
    let records = match scaling_run(
        args.levels,
        &lengths,
        args.repeats,
        args.seed,
        metric,
        args.alpha,
        SolveOptions::default(),
    ) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("l1tv-bench: {e}");
            return ExitCode::FAILURE;
        }
    };
    if let Err(e) = write_csv(io::stdout().lock(), &records) {
        eprintln!("l1tv-bench: {e}");
        return ExitCode::FAILURE;
    }
    if records.len() > 1 {
        eprintln!("log-log slope: {:.3}", loglog_slope(&records));
    }
    ExitCode::SUCCESS
}
