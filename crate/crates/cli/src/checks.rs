//! Grid runners for every check tag.

use std::f64::consts::PI;

use auxz_core::auxiliary::{
    partial_bound_rhs, r_minus_one_bound, rs_bound_cases, verify_partial_bound, verify_r_minus_one, verify_rzeta_all,
};
use auxz_core::bounds::{
    corollary_rhs, domination_check, final_inequality_check, mainbound_rhs, rect32_check, rect_boundary_check_s3,
    vdc_d2_bound, verify_lemma1, verify_vdc2, verify_vdc3, LogArg, VdcConstants,
};
use auxz_core::sums::{maclaurin_tail_bound, verify_abel, verify_maclaurin, SUP_SUM_CAP, ZETA_SUM_CAP};
use auxz_core::{CheckRecord, CheckTag, Error, GridSpec, PrecisionCtx, StripPoint};
use rayon::prelude::*;
use rug::Float;

use crate::axis::Axis;
use crate::error::{CliError, CliResult};
use crate::report::{CheckReport, ConfigEcho, Summary, SCHEMA, TOOL_VERSION};

/// Largest height at which checks that evaluate R(s) are accepted.
pub const R_FEASIBLE_T: f64 = 5000.0;

/// Note attached to reports that rely on the inverse zeta bound.
pub const INVERSE_BOUND_NOTE: &str =
    "1/|zeta(1+it)| <= 42.9 ln t is assumed for t >= 500; the same bound is also quoted for t >= 132.16";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AxisName {
    Sigma,
    T,
    Tau,
    X,
    R,
}

impl AxisName {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisName::Sigma => "sigma",
            AxisName::T => "t",
            AxisName::Tau => "tau",
            AxisName::X => "x",
            AxisName::R => "r",
        }
    }
}

/// User-supplied axes; missing axes fall back to the tag's defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckGrid {
    pub sigma: Option<Axis>,
    pub t: Option<Axis>,
    pub tau: Option<Axis>,
    pub x: Option<Axis>,
    pub r: Option<Axis>,
}

impl CheckGrid {
    fn get(&self, name: AxisName) -> Option<&Axis> {
        match name {
            AxisName::Sigma => self.sigma.as_ref(),
            AxisName::T => self.t.as_ref(),
            AxisName::Tau => self.tau.as_ref(),
            AxisName::X => self.x.as_ref(),
            AxisName::R => self.r.as_ref(),
        }
    }
}

/// Axes a tag is sampled over, in the order the product is formed.
pub fn axes_for(tag: CheckTag) -> &'static [AxisName] {
    use AxisName::*;
    match tag {
        CheckTag::Rzeta | CheckTag::Partial | CheckTag::Rminus1 | CheckTag::Lemma1 | CheckTag::S3Boundary => &[Sigma, T],
        CheckTag::Maclaurin => &[Sigma, T, R],
        CheckTag::Vdc2 | CheckTag::Vdc3 => &[X, T],
        CheckTag::Abel => &[X, Sigma, T],
        CheckTag::Rect32 => &[T],
        CheckTag::Domination | CheckTag::Final => &[Sigma, Tau],
    }
}

fn lin(min: f64, max: f64, count: usize) -> Axis {
    Axis::grid(GridSpec::linear(min, max, count).expect("static grid"))
}

fn log(min: f64, max: f64, count: usize) -> Axis {
    Axis::grid(GridSpec::log(min, max, count).expect("static grid"))
}

/// Default sampling of each axis.
pub fn default_axis(tag: CheckTag, name: AxisName) -> Axis {
    use AxisName::*;
    use CheckTag::*;
    match (tag, name) {
        (Rzeta | Partial, Sigma) => lin(0.0, 2.0, 9),
        (Rzeta | Partial, T) => Axis::values(&[3.0 * PI * 1.01, 15.0, 30.0, 60.0, 120.0, 250.0, 500.0]),
        (Rminus1, Sigma) => Axis::values(&[2.0, 3.0, 4.0, 6.0]),
        (Rminus1, T) => Axis::values(&[32.0 * PI, 150.0, 500.0, 1000.0]),
        (Maclaurin, Sigma) => Axis::values(&[0.5, 0.75, 1.0, 1.5, 2.0]),
        (Maclaurin, T) => Axis::values(&[4.0 * PI * 1.01, 100.0, 200.0 * PI, 2000.0]),
        (Maclaurin, R) => Axis::values(&[0.5, 1.0, 2.0]),
        (Vdc2 | Vdc3, X) => Axis::values(&[10.0, 50.0, 100.0, 500.0, 1000.0]),
        (Vdc2 | Vdc3, T) => Axis::values(&[1e3, 1e4, 1e5]),
        (Abel, X) => Axis::values(&[10.0, 55.5, 100.0, 333.3, 1000.0]),
        (Abel, Sigma) => Axis::values(&[0.25, 0.5, 1.0, 1.5, 2.0]),
        (Abel, T) => Axis::values(&[1e3, 1e5]),
        (Lemma1, Sigma) => lin(1.1, 4.0, 30),
        (Lemma1, T) => Axis::values(&[1.0, 10.0, 100.0, 1000.0]),
        (Rect32, T) => Axis::values(&[2707.0]),
        (S3Boundary, Sigma) => lin(1.5, 2.0, 6),
        (S3Boundary, T) => Axis::values(&[2707.0, 1e4]),
        (Domination, Sigma) => lin(1.0, 1.5, 6),
        (Domination, Tau) => Axis::values(&[20.1, 1e2, 1e4, 1e8, 1e16, 1e32, 1e64]),
        (Final, Sigma) => Axis::values(&[1.0, 1.5]),
        (Final, Tau) => log(1e65, 1e70, 11),
        _ => unreachable!("axis {} is not used by {}", name.as_str(), tag),
    }
}

/// One grid point; only the tag's axes are set.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Point {
    pub sigma: Option<f64>,
    pub t: Option<f64>,
    pub tau: Option<f64>,
    pub x: Option<f64>,
    pub r: Option<f64>,
}

impl Point {
    fn set(&mut self, name: AxisName, v: f64) {
        let slot = match name {
            AxisName::Sigma => &mut self.sigma,
            AxisName::T => &mut self.t,
            AxisName::Tau => &mut self.tau,
            AxisName::X => &mut self.x,
            AxisName::R => &mut self.r,
        };
        *slot = Some(v);
    }

    fn sigma(&self) -> f64 {
        self.sigma.expect("sigma axis")
    }

    fn t(&self) -> f64 {
        self.t.expect("t axis")
    }

    fn tau(&self) -> f64 {
        self.tau.expect("tau axis")
    }

    fn x(&self) -> f64 {
        self.x.expect("x axis")
    }

    fn strip(&self) -> Result<StripPoint, Error> {
        StripPoint::new(self.sigma(), self.t())
    }
}

/// Effective axes of a run, defaults filled in. Axes the tag does not use
/// are a usage error.
pub fn resolve_axes(tag: CheckTag, grid: &CheckGrid) -> CliResult<Vec<(AxisName, Axis)>> {
    let used = axes_for(tag);
    for name in [AxisName::Sigma, AxisName::T, AxisName::Tau, AxisName::X, AxisName::R] {
        if grid.get(name).is_some() && !used.contains(&name) {
            return Err(CliError::Usage(format!("--{} is not an axis of check '{tag}'", name.as_str())));
        }
    }
    Ok(used
        .iter()
        .map(|&n| (n, grid.get(n).cloned().unwrap_or_else(|| default_axis(tag, n))))
        .collect())
}

/// Cartesian product of the axes, first axis slowest.
pub fn grid_points(axes: &[(AxisName, Axis)]) -> Vec<Point> {
    let mut pts = vec![Point::default()];
    for (name, axis) in axes {
        let values = axis.points();
        pts = pts
            .iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = *p;
                    q.set(*name, v);
                    q
                })
            })
            .collect();
    }
    pts
}

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), Error> {
    if ok {
        Ok(())
    } else {
        Err(domain(msg()))
    }
}

fn require_r_feasible(p: &Point) -> Result<(), Error> {
    require(p.t() <= R_FEASIBLE_T, || format!("R(s) is evaluated for t <= {R_FEASIBLE_T}, got {}", p.t()))
}

fn require_block(x: f64) -> Result<(), Error> {
    require(x > 0.0 && x.is_finite(), || format!("sup-sums need X > 0, got {x}"))?;
    require(x <= SUP_SUM_CAP as f64, || format!("X = {x} exceeds the sup-sum cap of {SUP_SUM_CAP} terms"))
}

/// Preconditions of a point, checked for the whole grid before any
/// evaluation starts.
pub fn validate(tag: CheckTag, p: &Point, ctx: &PrecisionCtx) -> Result<(), Error> {
    let wp = ctx.working_prec();
    let f = |x: f64| Float::with_val(wp, x);
    match tag {
        CheckTag::Rzeta => {
            p.strip()?;
            require_r_feasible(p)
        }
        CheckTag::Partial => {
            let sp = p.strip()?;
            require_r_feasible(p)?;
            require((0.0..=2.0).contains(&p.sigma()), || format!("bracket bound needs 0 <= sigma <= 2, got {}", p.sigma()))?;
            partial_bound_rhs(&f(p.sigma()), &f(sp.tau.sqrt())).map(drop)
        }
        CheckTag::Rminus1 => {
            let sp = p.strip()?;
            require_r_feasible(p)?;
            r_minus_one_bound(&f(p.sigma()), &sp.tau_mp(wp)).map(drop)
        }
        CheckTag::Maclaurin => {
            let sp = p.strip()?;
            let r = p.r.expect("r axis");
            maclaurin_tail_bound(&f(p.sigma()), &sp.tau_mp(wp), &f(r))?;
            let terms = sp.tau.powf(r);
            require(terms <= ZETA_SUM_CAP as f64, || format!("tau^r = {terms:e} exceeds the zeta-sum cap"))
        }
        CheckTag::Vdc2 => {
            require_block(p.x())?;
            vdc_d2_bound(&f(p.x()), &f(p.t()), &VdcConstants::constants_default(wp)).map(drop)
        }
        CheckTag::Vdc3 => {
            require_block(p.x())?;
            require(p.t() >= 0.0, || format!("sup-sums need t >= 0, got {}", p.t()))
        }
        CheckTag::Abel => {
            require_block(p.x())?;
            require(p.sigma() > 0.0, || format!("partial summation needs sigma > 0, got {}", p.sigma()))?;
            require(p.t() >= 0.0, || format!("sup-sums need t >= 0, got {}", p.t()))
        }
        CheckTag::Lemma1 => {
            p.strip()?;
            require(p.sigma() > 1.0, || format!("lower bound needs sigma > 1, got {}", p.sigma()))
        }
        CheckTag::Rect32 => require(p.t() > 0.0, || format!("rect32 needs t > 0, got {}", p.t())),
        CheckTag::S3Boundary => require((1.5..=2.0).contains(&p.sigma()) && p.t() >= 2707.0, || {
            format!("boundary check needs 3/2 <= sigma <= 2 and t >= 2707, got ({}, {})", p.sigma(), p.t())
        }),
        CheckTag::Domination => {
            mainbound_rhs(&f(p.sigma()), &f(p.tau()), &VdcConstants::constants_default(wp))?;
            corollary_rhs(&f(p.tau())).map(drop)
        }
        CheckTag::Final => {
            require(p.sigma() >= 1.0, || format!("final inequality needs sigma >= 1, got {}", p.sigma()))?;
            corollary_rhs(&f(p.tau())).map(drop)
        }
    }
}

/// Records for one point; an empty vector marks a skipped point.
pub fn evaluate(tag: CheckTag, p: &Point, log_arg: LogArg, ctx: &PrecisionCtx) -> Result<Vec<CheckRecord>, Error> {
    let wp = ctx.working_prec();
    Ok(match tag {
        CheckTag::Rzeta => {
            let sp = p.strip()?;
            if rs_bound_cases(&Float::with_val(wp, sp.sigma), &sp.tau_mp(wp)).is_empty() {
                return Ok(Vec::new());
            }
            verify_rzeta_all(&sp, ctx)?.into_iter().filter(|r| r.tag == CheckTag::Rzeta).collect()
        }
        CheckTag::Partial => vec![verify_partial_bound(&p.strip()?, ctx)?],
        CheckTag::Rminus1 => verify_r_minus_one(&p.strip()?, ctx)?,
        CheckTag::Maclaurin => vec![verify_maclaurin(p.strip()?, p.r.expect("r axis"), ctx)?],
        CheckTag::Vdc2 => vec![verify_vdc2(p.x(), p.t(), ctx)?],
        CheckTag::Vdc3 => verify_vdc3(p.x(), p.t(), ctx)?.into_iter().collect(),
        CheckTag::Abel => vec![verify_abel(p.x(), p.sigma(), p.t(), ctx)?],
        CheckTag::Lemma1 => vec![verify_lemma1(&p.strip()?, ctx)?],
        CheckTag::Rect32 => vec![rect32_check(p.t(), ctx)?],
        CheckTag::S3Boundary => rect_boundary_check_s3(p.t(), p.sigma(), ctx)?,
        CheckTag::Domination => vec![domination_check(p.sigma(), p.tau(), ctx)?],
        CheckTag::Final => vec![final_inequality_check(&Float::with_val(wp, p.tau()), p.sigma(), log_arg, ctx)?],
    })
}

/// Validates the grid, evaluates every point and assembles the report.
pub fn run_check(tag: CheckTag, grid: &CheckGrid, log_arg: LogArg, ctx: &PrecisionCtx) -> CliResult<CheckReport> {
    let axes = resolve_axes(tag, grid)?;
    let points = grid_points(&axes);
    for p in &points {
        validate(tag, p, ctx)?;
    }
    let per_point: Vec<Vec<CheckRecord>> =
        points.par_iter().map(|p| evaluate(tag, p, log_arg, ctx)).collect::<Result<_, Error>>()?;
    let skipped = per_point.iter().filter(|v| v.is_empty()).count();
    let mut records: Vec<CheckRecord> = per_point.into_iter().flatten().collect();
    auxz_core::check::sort_records(&mut records);

    let mut config = ConfigEcho::new("check", ctx.bits);
    config.tag = Some(tag.to_string());
    for (name, axis) in &axes {
        config.axes.insert(name.as_str().into(), axis.to_string());
    }
    let mut notes = Vec::new();
    if tag == CheckTag::Final {
        config.log_arg = Some(log_arg.as_str().into());
        notes.push(INVERSE_BOUND_NOTE.to_string());
    }
    if skipped > 0 {
        let why = match tag {
            CheckTag::Rzeta => "no bound case covers the point",
            CheckTag::Vdc3 => "the third-derivative bound is not valid at the point",
            _ => "not applicable",
        };
        notes.push(format!("{skipped} grid points skipped: {why}"));
    }
    let summary = Summary::of(&records, skipped);
    Ok(CheckReport {
        schema: SCHEMA,
        tool_version: TOOL_VERSION.into(),
        config,
        records,
        summary,
        notes,
        wall_time_s: None,
    })
}
