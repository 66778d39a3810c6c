//! Zero counting by the argument principle and zero location by
//! quadrisection plus Newton refinement.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_4, TAU};
use std::sync::Mutex;

use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::contour::r_eval_approx;
use crate::error::{Error, Result};
use crate::numerics::{MpComplex, PrecisionCtx};

/// Closed box `[sigma_min, sigma_max] x [t_min, t_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Rectangle {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64) -> Result<Self> {
        let all_finite = [sigma_min, sigma_max, t_min, t_max].iter().all(|v| v.is_finite());
        if !all_finite || sigma_min >= sigma_max || t_min >= t_max {
            return Err(Error::Parameter(format!(
                "invalid rectangle [{sigma_min}, {sigma_max}] x [{t_min}, {t_max}]"
            )));
        }
        Ok(Self { sigma_min, sigma_max, t_min, t_max })
    }

    pub fn width(&self) -> f64 {
        self.sigma_max - self.sigma_min
    }

    pub fn height(&self) -> f64 {
        self.t_max - self.t_min
    }

    pub fn center(&self) -> (f64, f64) {
        (0.5 * (self.sigma_min + self.sigma_max), 0.5 * (self.t_min + self.t_max))
    }

    pub fn contains(&self, sigma: f64, t: f64) -> bool {
        (self.sigma_min..=self.sigma_max).contains(&sigma) && (self.t_min..=self.t_max).contains(&t)
    }

    /// Moves every edge outward by `d` (inward for negative `d`).
    pub fn grown(&self, d: f64) -> Self {
        Self {
            sigma_min: self.sigma_min - d,
            sigma_max: self.sigma_max + d,
            t_min: self.t_min - d,
            t_max: self.t_max + d,
        }
    }

    /// The four sub-boxes cut at the given fractions of width and height.
    pub fn split(&self, fs: f64, ft: f64) -> [Rectangle; 4] {
        let sm = self.sigma_min + fs * self.width();
        let tm = self.t_min + ft * self.height();
        [
            Rectangle { sigma_max: sm, t_max: tm, ..*self },
            Rectangle { sigma_min: sm, t_max: tm, ..*self },
            Rectangle { sigma_max: sm, t_min: tm, ..*self },
            Rectangle { sigma_min: sm, t_min: tm, ..*self },
        ]
    }

    pub fn quadrants(&self) -> [Rectangle; 4] {
        self.split(0.5, 0.5)
    }

    /// Corners in counterclockwise order starting bottom-left.
    fn corners(&self) -> [(f64, f64); 4] {
        [
            (self.sigma_min, self.t_min),
            (self.sigma_max, self.t_min),
            (self.sigma_max, self.t_max),
            (self.sigma_min, self.t_max),
        ]
    }
}

/// Result of one argument-principle count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCount {
    pub count: u64,
    /// Rectangle actually used, after any edge shifts.
    pub rect: Rectangle,
    pub min_abs: f64,
    pub samples: usize,
    pub shifts: u32,
}

#[derive(Clone, Copy)]
struct Sample {
    re: f64,
    im: f64,
    radius: f64,
}

impl Sample {
    fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Memoised low-cost evaluations of R on boundary points.
struct BoundaryEvaluator<'a> {
    ctx: &'a PrecisionCtx,
    cache: Mutex<HashMap<(u64, u64), Sample>>,
}

impl<'a> BoundaryEvaluator<'a> {
    fn new(ctx: &'a PrecisionCtx) -> Self {
        Self { ctx, cache: Mutex::new(HashMap::new()) }
    }

    fn eval(&self, sigma: f64, t: f64) -> Result<Sample> {
        let key = (sigma.to_bits(), t.to_bits());
        if let Some(s) = self.cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(*s);
        }
        let a = r_eval_approx(&self.ctx.complex(sigma, t), self.ctx, None)?;
        let (re, im) = a.value.to_f64_pair();
        let s = Sample { re, im, radius: a.radius };
        self.cache.lock().unwrap_or_else(|e| e.into_inner()).insert(key, s);
        Ok(s)
    }

    fn eval_many(&self, pts: &[(f64, f64)]) -> Result<Vec<Sample>> {
        pts.par_iter().map(|&(s, t)| self.eval(s, t)).collect()
    }
}

/// Argument increment from `a` to `b` in `(-pi, pi]`.
fn darg(a: &Sample, b: &Sample) -> f64 {
    // arg(b / a) = arg(b conj(a))
    let re = b.re * a.re + b.im * a.im;
    let im = b.im * a.re - b.re * a.im;
    im.atan2(re)
}

const MAX_STEP: f64 = FRAC_PI_4;
const MIN_SEGMENT: f64 = 1e-9;
/// Initial sample spacing along an edge.
const BASE_SPACING: f64 = 0.25;

struct EdgeWalk {
    winding: f64,
    min_abs: f64,
    max_radius: f64,
    samples: usize,
}

/// Accumulates the argument change along the segment `p0 -> p1`, bisecting
/// until each step stays below `MAX_STEP`.
fn walk_edge(ev: &BoundaryEvaluator, p0: (f64, f64), p1: (f64, f64)) -> Result<EdgeWalk> {
    let len = (p1.0 - p0.0).hypot(p1.1 - p0.1);
    let n = ((len / BASE_SPACING).ceil() as usize).max(4);
    let pts: Vec<(f64, f64)> = (0..=n)
        .map(|k| {
            let f = k as f64 / n as f64;
            (p0.0 + f * (p1.0 - p0.0), p0.1 + f * (p1.1 - p0.1))
        })
        .collect();
    let vals = ev.eval_many(&pts)?;
    let mut walk = EdgeWalk { winding: 0.0, min_abs: f64::INFINITY, max_radius: 0.0, samples: pts.len() };
    for v in &vals {
        walk.min_abs = walk.min_abs.min(v.abs());
        walk.max_radius = walk.max_radius.max(v.radius);
    }
    // explicit stack of segments still to refine, processed left to right
    let mut stack: Vec<((f64, f64), Sample, (f64, f64), Sample)> =
        (0..n).rev().map(|k| (pts[k], vals[k], pts[k + 1], vals[k + 1])).collect();
    while let Some((a, fa, b, fb)) = stack.pop() {
        let d = darg(&fa, &fb);
        if d.abs() < MAX_STEP {
            walk.winding += d;
            continue;
        }
        let seg = (b.0 - a.0).hypot(b.1 - a.1);
        if seg < MIN_SEGMENT {
            return Err(Error::BoundaryZero { min_abs: fa.abs().min(fb.abs()) });
        }
        let m = (0.5 * (a.0 + b.0), 0.5 * (a.1 + b.1));
        let fm = ev.eval(m.0, m.1)?;
        walk.samples += 1;
        walk.min_abs = walk.min_abs.min(fm.abs());
        walk.max_radius = walk.max_radius.max(fm.radius);
        stack.push((m, fm, b, fb));
        stack.push((a, fa, m, fm));
    }
    Ok(walk)
}

fn count_once(ev: &BoundaryEvaluator, rect: &Rectangle) -> Result<ZeroCount> {
    let c = rect.corners();
    let mut total = 0.0;
    let mut min_abs = f64::INFINITY;
    let mut max_radius: f64 = 0.0;
    let mut samples = 0;
    for k in 0..4 {
        let w = walk_edge(ev, c[k], c[(k + 1) % 4])?;
        total += w.winding;
        min_abs = min_abs.min(w.min_abs);
        max_radius = max_radius.max(w.max_radius);
        samples += w.samples;
    }
    if !(min_abs > 10.0 * max_radius) {
        return Err(Error::BoundaryZero { min_abs });
    }
    let turns = total / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() > 0.05 || rounded < 0.0 {
        return Err(Error::NoConvergence(format!("winding number {turns} is not a nonnegative integer")));
    }
    Ok(ZeroCount { count: rounded as u64, rect: *rect, min_abs, samples, shifts: 0 })
}

/// Edge shifts tried when a zero sits on or near the boundary.
const SHIFTS: [f64; 3] = [1e-3, -1e-3, 2e-3];

fn count_with_retry(ev: &BoundaryEvaluator, rect: &Rectangle) -> Result<ZeroCount> {
    match count_once(ev, rect) {
        Err(Error::BoundaryZero { mut min_abs }) => {
            for (k, d) in SHIFTS.iter().enumerate() {
                match count_once(ev, &rect.grown(*d)) {
                    Ok(mut c) => {
                        c.shifts = k as u32 + 1;
                        return Ok(c);
                    }
                    Err(Error::BoundaryZero { min_abs: m }) => min_abs = min_abs.min(m),
                    Err(e) => return Err(e),
                }
            }
            Err(Error::BoundaryZero { min_abs })
        }
        other => other,
    }
}

/// Number of zeros of R inside `rect`, with the boundary diagnostics.
pub fn zero_count_detail(rect: &Rectangle, ctx: &PrecisionCtx) -> Result<ZeroCount> {
    let ev = BoundaryEvaluator::new(ctx);
    count_with_retry(&ev, rect)
}

/// Number of zeros of R inside `rect`, counted with multiplicity.
pub fn zero_count(rect: &Rectangle, ctx: &PrecisionCtx) -> Result<u64> {
    Ok(zero_count_detail(rect, ctx)?.count)
}

/// A located zero of R.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RZero {
    pub beta: f64,
    pub gamma: f64,
    /// `|R(beta + i gamma)|` at the final iterate.
    pub residual: f64,
    pub iterations: u32,
    pub multiplicity: u32,
    /// Cell the zero was isolated in.
    pub rect: Rectangle,
}

/// Residual below which a Newton iterate is accepted as a zero.
pub fn zero_tolerance(ctx: &PrecisionCtx) -> f64 {
    ctx.target_eps.sqrt()
}

/// Newton's method on R with a central-difference derivative, step
/// `2^{-bits/3}`.
fn newton(rect: &Rectangle, ctx: &PrecisionCtx) -> Result<RZero> {
    let p = ctx.working_prec();
    let h = Float::with_val(p, Float::i_exp(1, -(ctx.bits as i32 / 3)));
    let two_h = Float::with_val(p, &h * 2u32);
    let (s0, t0) = rect.center();
    let mut z = ctx.complex(s0, t0);
    let eval = |z: &MpComplex| -> Result<MpComplex> { Ok(r_eval_approx(z, ctx, None)?.value) };
    let tol = zero_tolerance(ctx);
    let mut fz = eval(&z)?;
    let mut iterations = 0;
    let hr = MpComplex::from_real(h.clone());
    let step_floor = 2f64.powi(-(ctx.bits as i32) / 2);
    for _ in 0..60 {
        iterations += 1;
        // R' along the real direction; R is holomorphic so either direction works
        let d = (&eval(&(&z + &hr))? - &eval(&(&z - &hr))?).scale(&(Float::with_val(p, 1) / &two_h));
        let step = &fz / &d;
        z = &z - &step;
        fz = eval(&z)?;
        let (zs, zt) = z.to_f64_pair();
        if !rect.grown(0.5 * rect.width().max(rect.height())).contains(zs, zt) {
            return Err(Error::NoConvergence(format!("Newton left the cell near ({s0}, {t0})")));
        }
        if fz.abs_f64() <= ctx.target_eps || step.abs_f64() < step_floor {
            break;
        }
    }
    let residual = fz.abs_f64();
    let (beta, gamma) = z.to_f64_pair();
    if !(residual <= tol) || !rect.contains(beta, gamma) {
        return Err(Error::NoConvergence(format!(
            "Newton from ({s0}, {t0}) ended at ({beta}, {gamma}) with residual {residual:e}"
        )));
    }
    Ok(RZero { beta, gamma, residual, iterations, multiplicity: 1, rect: *rect })
}

/// Largest cell side at which Newton is started.
const NEWTON_CELL: f64 = 0.25;
const MIN_CELL: f64 = 1e-6;
/// Cut fractions tried when a cut line runs through a zero.
const CUTS: [f64; 4] = [0.5, 0.4871, 0.5237, 0.4593];

fn locate(ev: &BoundaryEvaluator, rect: &Rectangle, count: u64, out: &mut Vec<RZero>) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    let small = rect.width().max(rect.height()) <= NEWTON_CELL;
    if count == 1 && small {
        if let Ok(z) = newton(rect, ev.ctx) {
            out.push(z);
            return Ok(());
        }
    }
    if rect.width().max(rect.height()) < MIN_CELL {
        let mut z = newton(rect, ev.ctx)?;
        z.multiplicity = count as u32;
        out.push(z);
        return Ok(());
    }
    let mut last_err = None;
    for &f in &CUTS {
        let cells = if rect.height() > 4.0 * rect.width() {
            // long thin cells are cut across t only
            let tm = rect.t_min + f * rect.height();
            vec![Rectangle { t_max: tm, ..*rect }, Rectangle { t_min: tm, ..*rect }]
        } else {
            rect.split(f, f).to_vec()
        };
        let counts: Result<Vec<u64>> = cells.iter().map(|c| count_once(ev, c).map(|z| z.count)).collect();
        match counts {
            Ok(counts) if counts.iter().sum::<u64>() == count => {
                for (c, n) in cells.iter().zip(counts) {
                    locate(ev, c, n, out)?;
                }
                return Ok(());
            }
            Ok(counts) => {
                last_err = Some(Error::NoConvergence(format!(
                    "sub-cell counts {counts:?} do not add up to {count}"
                )))
            }
            Err(e @ Error::BoundaryZero { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or(Error::NoConvergence("cell could not be split".into())))
}

/// Argument-principle count of a rectangle together with the zeros located
/// inside it by subdivision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroCensus {
    pub count: ZeroCount,
    /// Sorted by height and then by real part.
    pub zeros: Vec<RZero>,
}

impl ZeroCensus {
    /// Zeros located, with multiplicity.
    pub fn located(&self) -> u64 {
        self.zeros.iter().map(|z| z.multiplicity as u64).sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.located() == self.count.count
    }
}

/// Counts and locates the zeros of R in `rect` without requiring the two
/// tallies to agree.
pub fn zero_census(rect: &Rectangle, ctx: &PrecisionCtx) -> Result<ZeroCensus> {
    let ev = BoundaryEvaluator::new(ctx);
    let count = count_with_retry(&ev, rect)?;
    let mut zeros = Vec::new();
    locate(&ev, &count.rect, count.count, &mut zeros)?;
    zeros.sort_by(|a, b| a.gamma.total_cmp(&b.gamma).then(a.beta.total_cmp(&b.beta)));
    Ok(ZeroCensus { count, zeros })
}

/// Zeros of R in `rect`, sorted by height and then by real part.
pub fn find_zeros(rect: &Rectangle, ctx: &PrecisionCtx) -> Result<Vec<RZero>> {
    let census = zero_census(rect, ctx)?;
    if !census.is_consistent() {
        return Err(Error::NoConvergence(format!(
            "located {} zeros, argument principle gives {}",
            census.located(),
            census.count.count
        )));
    }
    Ok(census.zeros)
}
