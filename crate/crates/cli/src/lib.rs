//! Batch front end for the `auxz-core` evaluators and checkers.
//!
//! Every command produces a deterministic report. The process exits with
//! 0 when every record passes, 2 when some record fails and 1 on usage,
//! domain or evaluation errors.

pub mod axis;
pub mod checks;
pub mod config;
pub mod error;
pub mod report;
pub mod run;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

pub use axis::Axis;
pub use checks::{run_check, CheckGrid};
pub use config::{Cli, Command, RunConfig};
pub use error::{CliError, CliResult};
pub use report::{CheckReport, Format, Output, ScanReport, ThresholdReport, EXIT_ERROR, EXIT_FAIL, EXIT_PASS};
pub use run::{run, scan_zeros, threshold_report};

/// Runs a configuration and writes its report; returns the exit status.
pub fn execute(config: &RunConfig) -> CliResult<i32> {
    let start = Instant::now();
    let mut output = run(config)?;
    if config.timing {
        output.set_wall_time(start.elapsed().as_secs_f64());
    }
    match &config.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            output.write(config.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            output.write(config.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(output.exit_code())
}

/// Parses `args` (program name first) and runs them.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_ERROR,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|c| execute(&c));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("auxz: {e}");
            EXIT_ERROR
        }
    }
}
