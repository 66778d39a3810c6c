//! Evaluation, scan and solver commands.

use auxz_core::auxiliary::{r_eval_approx, zero_census, ContourSpec, Rectangle};
use auxz_core::bounds::{solve_threshold_with, LogArg, PUBLISHED_TAU0};
use auxz_core::numerics::complex_zeta_approx;
use auxz_core::sums::zeta_sum;
use auxz_core::{Approx, Error, MpComplex, PrecisionCtx};
use rug::Float;

use crate::checks::{run_check, INVERSE_BOUND_NOTE, R_FEASIBLE_T};
use crate::config::{Command, RunConfig};
use crate::error::CliResult;
use crate::report::{ConfigEcho, EvalReport, Output, ScanReport, ThresholdReport, SCHEMA, TOOL_VERSION};

/// Significant digits printed for values computed at `bits` of precision.
fn digits_for(bits: u32) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2).floor() as usize).max(1)
}

fn decimal(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits))
}

fn eval_report(
    config: ConfigEcho,
    sigma: f64,
    t: f64,
    x: Option<f64>,
    v: Approx<MpComplex>,
    ctx: &PrecisionCtx,
) -> CliResult<EvalReport> {
    if v.radius > ctx.target_eps {
        return Err(Error::Convergence { radius: v.radius, target: ctx.target_eps }.into());
    }
    let d = digits_for(ctx.bits);
    Ok(EvalReport {
        schema: SCHEMA,
        tool_version: TOOL_VERSION.into(),
        config,
        sigma,
        t,
        x,
        re: decimal(&v.value.re, d),
        im: decimal(&v.value.im, d),
        radius: v.radius,
        wall_time_s: None,
    })
}

/// Census of the zeros of R in `rect` with the consistency and `beta < 1` flags.
pub fn scan_zeros(rect: &Rectangle, ctx: &PrecisionCtx) -> CliResult<ScanReport> {
    if rect.t_max > R_FEASIBLE_T || rect.t_min < 0.0 {
        return Err(Error::Domain(format!("zero scans need 0 <= t <= {R_FEASIBLE_T}, got [{}, {}]", rect.t_min, rect.t_max)).into());
    }
    let census = zero_census(rect, ctx)?;
    let mut config = ConfigEcho::new("scan-zeros", ctx.bits);
    config.rect = Some(*rect);
    let mut notes = Vec::new();
    if census.count.shifts > 0 {
        notes.push(format!("boundary moved {} times to avoid zeros on the edge", census.count.shifts));
    }
    Ok(ScanReport {
        schema: SCHEMA,
        tool_version: TOOL_VERSION.into(),
        config,
        counted_rect: census.count.rect,
        argument_principle_count: census.count.count,
        census: census.located(),
        census_matches: census.is_consistent(),
        min_boundary_abs: census.count.min_abs,
        conjecture_holds: census.zeros.iter().all(|z| z.beta < 1.0),
        zeros: census.zeros,
        notes,
        wall_time_s: None,
    })
}

pub fn threshold_report(ctx: &PrecisionCtx, log_arg: LogArg) -> CliResult<ThresholdReport> {
    let r = solve_threshold_with(ctx, log_arg)?;
    let d = digits_for(ctx.bits).min(50);
    let mut config = ConfigEcho::new("solve-threshold", ctx.bits);
    config.log_arg = Some(log_arg.as_str().into());
    Ok(ThresholdReport {
        schema: SCHEMA,
        tool_version: TOOL_VERSION.into(),
        config,
        tau0: decimal(&r.tau0, d),
        t0: decimal(&r.t0, d),
        bracket: [decimal(&r.bracket.0, d), decimal(&r.bracket.1, d)],
        published_tau0: PUBLISHED_TAU0.into(),
        digits_verified: r.digits_verified,
        sign_changes: r.sign_changes,
        scan_points: r.scan_points,
        newton_steps: r.newton_steps,
        notes: vec![INVERSE_BOUND_NOTE.to_string()],
        wall_time_s: None,
    })
}

/// Executes a configuration; writing the output is left to the caller.
pub fn run(config: &RunConfig) -> CliResult<Output> {
    let ctx = PrecisionCtx::new(config.prec_bits)?;
    let echo = ConfigEcho::new(config.command.name(), ctx.bits);
    Ok(match &config.command {
        Command::EvalR { sigma, t, crossing_n } => {
            let spec = crossing_n.map(|n| ContourSpec::through(n, &ctx));
            let v = r_eval_approx(&ctx.complex(*sigma, *t), &ctx, spec.as_ref())?;
            Output::Eval(eval_report(echo, *sigma, *t, None, v, &ctx)?)
        }
        Command::EvalZeta { sigma, t } => {
            let v = complex_zeta_approx(&ctx.complex(*sigma, *t), &ctx)?;
            Output::Eval(eval_report(echo, *sigma, *t, None, v, &ctx)?)
        }
        Command::ZetaSum { x, sigma, t } => {
            let v = zeta_sum(&ctx.real(*x), &ctx.complex(*sigma, *t), &ctx)?;
            Output::Eval(eval_report(echo, *sigma, *t, Some(*x), v, &ctx)?)
        }
        Command::Check { tag, grid, log_arg } => Output::Check(run_check(*tag, grid, *log_arg, &ctx)?),
        Command::ScanZeros { rect } => Output::Scan(scan_zeros(rect, &ctx)?),
        Command::SolveThreshold { log_arg } => Output::Threshold(threshold_report(&ctx, *log_arg)?),
    })
}
