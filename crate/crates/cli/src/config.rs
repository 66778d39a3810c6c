//! Command-line parsing into a `RunConfig`.

use std::path::PathBuf;

use auxz_core::auxiliary::Rectangle;
use auxz_core::bounds::LogArg;
use auxz_core::CheckTag;
use clap::{Parser, Subcommand, ValueEnum};

use crate::axis::Axis;
use crate::checks::CheckGrid;
use crate::error::{CliError, CliResult};
use crate::report::Format;

/// Precision used when neither `--prec-bits` nor `AUXZ_PREC_BITS` is set.
pub const DEFAULT_PREC_BITS: u32 = 128;
/// Default for the threshold solver and the tight rectangle checks.
pub const HIGH_PREC_BITS: u32 = 256;
/// Default for zero scans, where only signs and arguments matter.
pub const SCAN_PREC_BITS: u32 = 64;

#[derive(Debug, Parser)]
#[command(name = "auxz", version, about = "Evaluate Riemann's auxiliary function R(s) and verify the explicit bounds that keep it from vanishing on 1 <= sigma <= 2")]
pub struct Cli {
    /// Working precision in bits (at least 64); the default depends on the command.
    #[arg(long, global = true, env = "AUXZ_PREC_BITS")]
    pub prec_bits: Option<u32>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Add the wall time to the report (makes it non-reproducible byte for byte).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Commands,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Commands {
    /// Evaluate R(s) by contour quadrature.
    EvalR {
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Cross the real axis at N + 1/2 instead of floor(sqrt(t / 2 pi)) + 1/2.
        #[arg(long)]
        crossing_n: Option<u64>,
    },
    /// Evaluate zeta(s).
    EvalZeta {
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Evaluate the finite sum over n <= x of n^-s.
    ZetaSum {
        #[arg(long)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Run one check over a grid. Axes take comma-separated lists of
    /// values or grids `min:max:count[:log]`.
    Check {
        /// rzeta, partial, rminus1, maclaurin, vdc2, vdc3, abel, lemma1, rect32, s3-boundary, domination or final.
        #[arg(long)]
        tag: CheckTag,
        #[arg(long, allow_negative_numbers = true)]
        sigma: Option<Axis>,
        #[arg(long)]
        t: Option<Axis>,
        #[arg(long)]
        tau: Option<Axis>,
        #[arg(long)]
        x: Option<Axis>,
        #[arg(long)]
        r: Option<Axis>,
        /// Argument of the logarithm in the final inequality: tau or t.
        #[arg(long, default_value = "tau")]
        log_arg: LogArg,
    },
    /// Count and locate the zeros of R(s) in a rectangle.
    ScanZeros {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        sigma_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        sigma_max: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
        t_max: f64,
    },
    /// Solve the final inequality for the threshold tau0.
    SolveThreshold {
        #[arg(long, default_value = "tau")]
        log_arg: LogArg,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    EvalR { sigma: f64, t: f64, crossing_n: Option<u64> },
    EvalZeta { sigma: f64, t: f64 },
    ZetaSum { x: f64, sigma: f64, t: f64 },
    Check { tag: CheckTag, grid: CheckGrid, log_arg: LogArg },
    ScanZeros { rect: Rectangle },
    SolveThreshold { log_arg: LogArg },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::EvalR { .. } => "eval-r",
            Command::EvalZeta { .. } => "eval-zeta",
            Command::ZetaSum { .. } => "zeta-sum",
            Command::Check { .. } => "check",
            Command::ScanZeros { .. } => "scan-zeros",
            Command::SolveThreshold { .. } => "solve-threshold",
        }
    }

    /// Precision used when none is given.
    pub fn default_prec_bits(&self) -> u32 {
        match self {
            Command::SolveThreshold { .. } => HIGH_PREC_BITS,
            Command::Check { tag: CheckTag::Rect32 | CheckTag::S3Boundary | CheckTag::Final, .. } => HIGH_PREC_BITS,
            Command::ScanZeros { .. } => SCAN_PREC_BITS,
            _ => DEFAULT_PREC_BITS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub prec_bits: u32,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub timing: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let prec_bits = command.default_prec_bits();
        Self { command, prec_bits, out: None, format: Format::Json, timing: false }
    }

    pub fn from_cli(cli: Cli) -> CliResult<Self> {
        let command = match cli.command {
            Commands::EvalR { sigma, t, crossing_n } => Command::EvalR { sigma, t, crossing_n },
            Commands::EvalZeta { sigma, t } => Command::EvalZeta { sigma, t },
            Commands::ZetaSum { x, sigma, t } => Command::ZetaSum { x, sigma, t },
            Commands::Check { tag, sigma, t, tau, x, r, log_arg } => {
                Command::Check { tag, grid: CheckGrid { sigma, t, tau, x, r }, log_arg }
            }
            Commands::ScanZeros { sigma_min, sigma_max, t_min, t_max } => {
                Command::ScanZeros { rect: Rectangle::new(sigma_min, sigma_max, t_min, t_max)? }
            }
            Commands::SolveThreshold { log_arg } => Command::SolveThreshold { log_arg },
        };
        let prec_bits = cli.prec_bits.unwrap_or_else(|| command.default_prec_bits());
        if prec_bits < 64 {
            return Err(CliError::Usage(format!("--prec-bits must be at least 64, got {prec_bits}")));
        }
        let format = match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        };
        Ok(Self { command, prec_bits, out: cli.out, format, timing: cli.timing })
    }
}
