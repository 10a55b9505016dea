use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use l1tv::cli::{run, AngleUnit, InputSource, ReportFormat, RunConfig};
use l1tv::Metric;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Kv,
    Json,
}

/// Exact L1-TV regularization of real- or circle-valued signals.
#[derive(Debug, Parser)]
#[command(name = "l1tv", version)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "synthetic"])))]
struct Args {
    /// Regularization parameter (>= 0).
    #[arg(long)]
    alpha: f64,
    /// Treat samples as angles on the circle.
    #[arg(long)]
    circular: bool,
    /// Angles in input and output files are in degrees.
    #[arg(long, requires = "circular")]
    degrees: bool,
    /// Require a weight column (`value,weight`) on every line.
    #[arg(long)]
    weights: bool,
    /// Quantize the input to this many levels before solving.
    #[arg(long, value_name = "LEVELS")]
    quantize: Option<usize>,
    /// Input file, one sample per line.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generate a piecewise-constant test signal instead of reading a file.
    #[arg(long, value_name = "N,SEGMENTS,SCALE,SEED")]
    synthetic: Option<String>,
    /// Minimizer output file (stdout if omitted).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Run report file (stderr if omitted).
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "kv")]
    report_format: Format,
    /// Also write `index,value` lines for plotting.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Also write the (generated or quantized) input signal.
    #[arg(long)]
    save_input: Option<PathBuf>,
}

fn config(args: Args) -> l1tv::Result<RunConfig> {
    let input = match (args.input, args.synthetic) {
        (Some(p), None) => InputSource::File(p),
        (None, Some(s)) => InputSource::parse_synthetic(&s)?,
        _ => unreachable!("clap enforces exactly one source"),
    };
    let metric = if args.circular { Metric::Circular } else { Metric::Real };
    let mut c = RunConfig::new(input, args.alpha, metric);
    c.unit = if args.degrees { AngleUnit::Degrees } else { AngleUnit::Radians };
    c.weights = args.weights;
    c.quantize = args.quantize;
    c.output = args.output;
    c.report = args.report;
    c.report_format = match args.report_format {
        Format::Kv => ReportFormat::KeyValue,
        Format::Json => ReportFormat::Json,
    };
    c.plot = args.plot;
    c.save_input = args.save_input;
    Ok(c)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match config(args).and_then(|c| run(&c)) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("l1tv: {e}");
            ExitCode::FAILURE
        }
    }
}
