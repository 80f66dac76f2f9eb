use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use fraclap_core::fraclap::FracLapParams;
use fraclap_core::{GridSpec, C64};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Evaluate the operator once.
    Apply,
    /// Error table over lists of alpha, N and r.
    Sweep,
    /// Focusing fractional cubic Schrödinger evolution.
    Nls,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Fractional Laplacian of functions on the real line.
#[derive(Debug, Parser)]
#[command(name = "fraclap", version)]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Command,

    /// Comma-separated list for `sweep`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,

    /// Number of output nodes; comma-separated list for `sweep`.
    #[arg(long = "N", value_delimiter = ',', required = true)]
    pub n: Vec<usize>,

    /// Cell refinement factor; comma-separated list for `sweep`.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub r: Vec<usize>,

    /// Map scale in x = L cot(s).
    #[arg(long = "L", default_value_t = 1.0)]
    pub scale: f64,

    /// builtin:rational, builtin:erf, builtin:gaussian, or a file of `re im` lines.
    #[arg(long, default_value = "builtin:rational")]
    pub input: String,

    /// Output file (apply, sweep) or directory (nls). Defaults to stdout for apply and sweep.
    #[arg(long)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,

    #[arg(long = "t-end", default_value_t = 1.0)]
    pub t_end: f64,

    /// Steps between nls snapshots.
    #[arg(long = "snapshot-every", default_value_t = 100)]
    pub snapshot_every: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Rational,
    Erf,
    Gaussian,
    File(PathBuf),
}

impl Input {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "builtin:rational" => Ok(Input::Rational),
            "builtin:erf" => Ok(Input::Erf),
            "builtin:gaussian" => Ok(Input::Gaussian),
            s if s.starts_with("builtin:") => Err(CliError::Config(format!("unknown builtin input `{s}`"))),
            path => Ok(Input::File(PathBuf::from(path))),
        }
    }

    pub fn has_exact(&self) -> bool {
        matches!(self, Input::Rational | Input::Erf)
    }
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub alphas: Vec<f64>,
    pub ns: Vec<usize>,
    pub rs: Vec<usize>,
    pub scale: f64,
    pub input: Input,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub dt: f64,
    pub t_end: f64,
    pub snapshot_every: usize,
}

impl RunConfig {
    /// Checks every parameter combination before any computation starts.
    pub fn from_args(a: Args) -> Result<Self, CliError> {
        let input = Input::parse(&a.input)?;
        for &alpha in &a.alpha {
            for &n in &a.n {
                for &r in &a.r {
                    FracLapParams::new(alpha, GridSpec::new(n, r, a.scale)?)?;
                }
            }
        }
        if a.command != Command::Sweep && (a.alpha.len() != 1 || a.n.len() != 1 || a.r.len() != 1) {
            return Err(CliError::Config("apply and nls take a single alpha, N and r".into()));
        }
        match a.command {
            Command::Sweep if !input.has_exact() => {
                return Err(CliError::Config("sweep needs builtin:rational or builtin:erf".into()));
            }
            Command::Nls => {
                if !matches!(input, Input::Gaussian | Input::File(_)) {
                    return Err(CliError::Config("nls needs builtin:gaussian or a samples file".into()));
                }
                if a.output.is_none() {
                    return Err(CliError::Config("nls needs --output <directory>".into()));
                }
                if a.format != Format::Csv {
                    return Err(CliError::Config("nls writes csv only".into()));
                }
                if !(a.dt > 0.0) || !a.dt.is_finite() {
                    return Err(CliError::Config(format!("dt must be positive, got {}", a.dt)));
                }
                if !(a.t_end >= 0.0) || !a.t_end.is_finite() {
                    return Err(CliError::Config(format!("t-end must be non-negative, got {}", a.t_end)));
                }
                if a.snapshot_every == 0 {
                    return Err(CliError::Config("snapshot-every must be at least 1".into()));
                }
            }
            _ => {}
        }
        Ok(Self {
            command: a.command,
            alphas: a.alpha,
            ns: a.n,
            rs: a.r,
            scale: a.scale,
            input,
            output: a.output,
            format: a.format,
            dt: a.dt,
            t_end: a.t_end,
            snapshot_every: a.snapshot_every,
        })
    }
}

/// Reads `n` complex values, one `re im` pair per non-blank line.
pub fn read_samples(path: &PathBuf, n: usize) -> Result<Vec<C64>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::with_capacity(n);
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed = match fields.as_slice() {
            [re, im] => re.parse::<f64>().ok().zip(im.parse::<f64>().ok()),
            _ => None,
        };
        let (re, im) = parsed.ok_or_else(|| {
            CliError::Shape(format!("{}:{}: expected `re im`, got `{line}`", path.display(), i + 1))
        })?;
        out.push(C64::new(re, im));
    }
    if out.len() != n {
        return Err(CliError::Shape(format!(
            "{}: expected {n} samples, found {}",
            path.display(),
            out.len()
        )));
    }
    Ok(out)
}
