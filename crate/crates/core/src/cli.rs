//! File formats and the end-to-end pipeline behind the `l1tv` binary.
//!
//! Input files hold one sample per line, `value` or `value,weight` (comma or
//! whitespace separated). Blank lines and lines starting with `#` are skipped.
//! Output files use the same layout with every number printed with 17
//! significant digits (`{:.16e}`), which round-trips `f64` exactly.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::{check_alpha, energy, Metric, Signal};
use crate::solver::{solve, SolveReport};
use crate::synth::{gen_piecewise_constant, quantize, SynthSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngleUnit {
    #[default]
    Radians,
    Degrees,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    /// `key=value` lines.
    #[default]
    KeyValue,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputSource {
    File(PathBuf),
    Synthetic {
        length: usize,
        segments: usize,
        scale: f64,
        seed: u64,
    },
}

impl InputSource {
    /// Parses the `N,segments,scale,seed` form of `--synthetic`.
    pub fn parse_synthetic(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let bad = |what: &str| Error::InvalidSpec(format!("--synthetic {text:?}: {what}"));
        if parts.len() != 4 {
            return Err(bad("expected N,segments,scale,seed"));
        }
        Ok(InputSource::Synthetic {
            length: parts[0].parse().map_err(|_| bad("bad N"))?,
            segments: parts[1].parse().map_err(|_| bad("bad segment count"))?,
            scale: parts[2].parse().map_err(|_| bad("bad noise scale"))?,
            seed: parts[3].parse().map_err(|_| bad("bad seed"))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: InputSource,
    pub alpha: f64,
    pub metric: Metric,
    pub unit: AngleUnit,
    /// Require a weight column on every line.
    pub weights: bool,
    pub quantize: Option<usize>,
    /// `None` writes the minimizer to stdout.
    pub output: Option<PathBuf>,
    /// `None` writes the report to stderr.
    pub report: Option<PathBuf>,
    pub report_format: ReportFormat,
    /// Optional `index,value` file for plotting.
    pub plot: Option<PathBuf>,
    /// Optional copy of the (possibly synthetic, quantized) input signal.
    pub save_input: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(input: InputSource, alpha: f64, metric: Metric) -> Self {
        Self {
            input,
            alpha,
            metric,
            unit: AngleUnit::Radians,
            weights: false,
            quantize: None,
            output: None,
            report: None,
            report_format: ReportFormat::KeyValue,
            plot: None,
            save_input: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        if self.unit == AngleUnit::Degrees && self.metric != Metric::Circular {
            return Err(Error::InvalidSpec("--degrees requires --circular".into()));
        }
        if let Some(l) = self.quantize {
            if l < 2 {
                return Err(Error::InvalidLevels(l));
            }
        }
        Ok(())
    }
}

/// A parsed input file.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalFile {
    pub signal: Signal,
    /// Whether any line carried an explicit weight.
    pub has_weights: bool,
}

/// Parses the text of a signal file.
pub fn parse_signal(text: &str, metric: Metric, unit: AngleUnit, require_weights: bool) -> Result<SignalFile> {
    let mut values = Vec::new();
    let mut weights = Vec::new();
    let mut has_weights = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        let number = |s: &str| -> Result<f64> {
            let x: f64 = s.parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid number {s:?}"),
            })?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(Error::Parse {
                    line,
                    message: format!("non-finite number {s:?}"),
                })
            }
        };
        let (value, weight) = match fields.as_slice() {
            [v] if !require_weights => (number(v)?, 1.0),
            [v, w] => {
                has_weights = true;
                (number(v)?, number(w)?)
            }
            [_] => {
                return Err(Error::Parse {
                    line,
                    message: "missing weight column".into(),
                })
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 1 or 2 fields, found {}", fields.len()),
                })
            }
        };
        if weight < 0.0 {
            return Err(Error::Parse {
                line,
                message: format!("negative weight {weight}"),
            });
        }
        values.push(match unit {
            AngleUnit::Radians => value,
            AngleUnit::Degrees => value.to_radians(),
        });
        weights.push(weight);
    }
    if values.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no samples in input".into(),
        });
    }
    Ok(SignalFile {
        signal: Signal::new(values, weights, metric)?,
        has_weights,
    })
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Reads and parses a signal file.
pub fn read_signal(path: &Path, metric: Metric, unit: AngleUnit, require_weights: bool) -> Result<SignalFile> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_signal(&text, metric, unit, require_weights)
}

fn to_unit(x: f64, unit: AngleUnit) -> f64 {
    match unit {
        AngleUnit::Radians => x,
        AngleUnit::Degrees => x.to_degrees(),
    }
}

/// Writes values (and optionally weights) in the input file format.
pub fn write_result<W: Write>(mut out: W, values: &[f64], weights: Option<&[f64]>, unit: AngleUnit) -> io::Result<()> {
    for (i, &v) in values.iter().enumerate() {
        match weights {
            Some(w) => writeln!(out, "{:.16e},{:.16e}", to_unit(v, unit), w[i])?,
            None => writeln!(out, "{:.16e}", to_unit(v, unit))?,
        }
    }
    out.flush()
}

/// Writes `index,value` lines.
pub fn write_plot<W: Write>(mut out: W, values: &[f64], unit: AngleUnit) -> io::Result<()> {
    for (i, &v) in values.iter().enumerate() {
        writeln!(out, "{i},{:.16e}", to_unit(v, unit))?;
    }
    out.flush()
}

/// Run summary as written to the report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub metric: &'static str,
    pub n: usize,
    pub k: usize,
    pub alpha: f64,
    pub energy: f64,
    pub elapsed_seconds: f64,
}

impl RunReport {
    pub fn from_solve(report: &SolveReport, metric: Metric) -> Self {
        Self {
            metric: metric.name(),
            n: report.signal_length,
            k: report.grid_size,
            alpha: report.alpha,
            energy: report.energy,
            elapsed_seconds: report.elapsed.as_secs_f64(),
        }
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::KeyValue => format!(
                "metric={}\nn={}\nk={}\nalpha={:.16e}\nenergy={:.16e}\nelapsed_seconds={:.9e}\n",
                self.metric, self.n, self.k, self.alpha, self.energy, self.elapsed_seconds
            ),
            ReportFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}

/// Parses a `key=value` report back into pairs.
pub fn parse_key_value_report(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn write_to(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let file = fs::File::create(p).map_err(io_err(p))?;
            let mut w = BufWriter::new(file);
            write(&mut w).map_err(io_err(p))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock).map_err(io_err(Path::new("<stdout>")))
        }
    }
}

/// Loads the input signal named by the config, applying quantization.
pub fn load_input(config: &RunConfig) -> Result<SignalFile> {
    let mut file = match &config.input {
        InputSource::File(path) => read_signal(path, config.metric, config.unit, config.weights)?,
        &InputSource::Synthetic {
            length,
            segments,
            scale,
            seed,
        } => {
            let spec = SynthSpec::new(length, segments, scale, seed, config.metric);
            SignalFile {
                signal: gen_piecewise_constant(&spec)?.1,
                has_weights: false,
            }
        }
    };
    if let Some(levels) = config.quantize {
        file.signal = quantize(&file.signal, levels)?;
    }
    Ok(file)
}

/// Runs the whole pipeline: load, solve, write outputs.
pub fn run(config: &RunConfig) -> Result<(SolveReport, RunReport)> {
    config.validate()?;
    let input = load_input(config)?;
    let signal = &input.signal;
    let weights = input.has_weights.then(|| signal.weights());

    if let Some(p) = &config.save_input {
        write_to(Some(p), |w| write_result(w, signal.values(), weights, config.unit))?;
    }

    let report = solve(signal, config.alpha)?;
    debug_assert_eq!(report.energy, energy(signal, &report.minimizer, config.alpha)?);

    write_to(config.output.as_deref(), |w| {
        write_result(w, &report.minimizer, weights, config.unit)
    })?;
    if let Some(p) = &config.plot {
        write_to(Some(p), |w| write_plot(w, &report.minimizer, config.unit))?;
    }

    let summary = RunReport::from_solve(&report, config.metric);
    let text = summary.render(config.report_format);
    match &config.report {
        Some(p) => fs::write(p, text).map_err(io_err(p))?,
        None => eprint!("{text}"),
    }
    Ok((report, summary))
}
