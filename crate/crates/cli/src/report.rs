//! Report documents and their JSON and CSV renderings.

use std::collections::BTreeMap;
use std::io::Write;

use auxz_core::auxiliary::{RZero, Rectangle};
use auxz_core::CheckRecord;
use serde::Serialize;

use crate::error::CliResult;

/// Version of the JSON layout.
pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status when every record passed.
pub const EXIT_PASS: i32 = 0;
/// Exit status for usage, domain and evaluation errors.
pub const EXIT_ERROR: i32 = 1;
/// Exit status when some record failed.
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// The configuration that produced a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub command: String,
    pub prec_bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub axes: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_arg: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rect: Option<Rectangle>,
}

impl ConfigEcho {
    pub fn new(command: &str, prec_bits: u32) -> Self {
        Self { command: command.into(), prec_bits, tag: None, axes: BTreeMap::new(), log_arg: None, rect: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    /// Grid points where the check's own applicability predicate fails.
    pub skipped: usize,
    pub min_margin: Option<f64>,
}

impl Summary {
    pub fn of(records: &[CheckRecord], skipped: usize) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let min_margin = records.iter().map(|r| r.margin).min_by(f64::total_cmp);
        Self { total: records.len(), passed, failed: records.len() - passed, skipped, min_margin }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub schema: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub schema: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    /// Rectangle the count refers to, after any edge shifts.
    pub counted_rect: Rectangle,
    pub argument_principle_count: u64,
    pub census: u64,
    pub census_matches: bool,
    pub min_boundary_abs: f64,
    pub zeros: Vec<RZero>,
    /// Every located zero has `beta < 1`.
    pub conjecture_holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl ScanReport {
    pub fn all_passed(&self) -> bool {
        self.census_matches && self.conjecture_holds
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub schema: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub tau0: String,
    pub t0: String,
    pub bracket: [String; 2],
    pub published_tau0: String,
    pub digits_verified: u32,
    pub sign_changes: usize,
    pub scan_points: usize,
    pub newton_steps: u32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub schema: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub sigma: f64,
    pub t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    pub re: String,
    pub im: String,
    pub radius: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

/// Anything the CLI can emit.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Check(CheckReport),
    Scan(ScanReport),
    Threshold(ThresholdReport),
    Eval(EvalReport),
}

impl Output {
    pub fn exit_code(&self) -> i32 {
        let ok = match self {
            Output::Check(r) => r.all_passed(),
            Output::Scan(r) => r.all_passed(),
            Output::Threshold(_) | Output::Eval(_) => true,
        };
        if ok {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn set_wall_time(&mut self, secs: f64) {
        let slot = match self {
            Output::Check(r) => &mut r.wall_time_s,
            Output::Scan(r) => &mut r.wall_time_s,
            Output::Threshold(r) => &mut r.wall_time_s,
            Output::Eval(r) => &mut r.wall_time_s,
        };
        *slot = Some(secs);
    }

    pub fn write<W: Write>(&self, format: Format, mut w: W) -> CliResult<()> {
        match format {
            Format::Json => {
                match self {
                    Output::Check(r) => serde_json::to_writer_pretty(&mut w, r)?,
                    Output::Scan(r) => serde_json::to_writer_pretty(&mut w, r)?,
                    Output::Threshold(r) => serde_json::to_writer_pretty(&mut w, r)?,
                    Output::Eval(r) => serde_json::to_writer_pretty(&mut w, r)?,
                }
                writeln!(w)?;
            }
            Format::Csv => self.write_csv(w)?,
        }
        Ok(())
    }

    fn write_csv<W: Write>(&self, w: W) -> CliResult<()> {
        let mut out = csv::Writer::from_writer(w);
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        match self {
            Output::Check(r) => {
                out.write_record(["tag", "sigma", "t", "tau", "lhs", "rhs", "margin", "pass"])?;
                for rec in &r.records {
                    out.write_record([
                        rec.tag.to_string(),
                        opt(rec.sigma),
                        opt(rec.t),
                        opt(rec.tau),
                        rec.lhs.to_string(),
                        rec.rhs.to_string(),
                        rec.margin.to_string(),
                        rec.pass.to_string(),
                    ])?;
                }
            }
            Output::Scan(r) => {
                out.write_record(["beta", "gamma", "residual", "iterations", "multiplicity"])?;
                for z in &r.zeros {
                    out.write_record([
                        z.beta.to_string(),
                        z.gamma.to_string(),
                        z.residual.to_string(),
                        z.iterations.to_string(),
                        z.multiplicity.to_string(),
                    ])?;
                }
            }
            Output::Threshold(r) => {
                out.write_record(["tau0", "t0", "digits_verified", "log_arg"])?;
                let log_arg = r.config.log_arg.clone().unwrap_or_default();
                out.write_record([r.tau0.clone(), r.t0.clone(), r.digits_verified.to_string(), log_arg])?;
            }
            Output::Eval(r) => {
                out.write_record(["sigma", "t", "re", "im", "radius"])?;
                out.write_record([r.sigma.to_string(), r.t.to_string(), r.re.clone(), r.im.clone(), r.radius.to_string()])?;
            }
        }
        out.flush()?;
        Ok(())
    }
}
