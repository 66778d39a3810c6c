//! Explicit bounds for `R(s) - sum_{n <= sqrt(tau)} n^-s` and `R(s) - 1`.

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::contour::r_eval_approx;
use crate::check::{CheckRecord, CheckTag};
use crate::error::{Error, Result};
use crate::numerics::{Approx, MpComplex, PrecisionCtx, StripPoint};
use crate::sums::zeta_sum;

/// Which of the three power bounds applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RsBoundCase {
    /// `0 <= sigma <= 1`, `t >= 3 pi`: `tau^{-sigma/2}`.
    Strip,
    /// `1 <= sigma <= 2`, `t >= 8 pi`: `tau^{-sigma/2}`.
    Band,
    /// `sigma >= 1`, `t >= 16 pi`: `tau^{-1/2}`.
    Right,
}

impl RsBoundCase {
    pub fn number(&self) -> u8 {
        match self {
            RsBoundCase::Strip => 1,
            RsBoundCase::Band => 2,
            RsBoundCase::Right => 3,
        }
    }

    /// Whether the case covers `(sigma, tau)`; the height conditions read
    /// `tau >= 3/2, 4, 8`.
    pub fn applies(&self, sigma: &Float, tau: &Float) -> bool {
        match self {
            RsBoundCase::Strip => *sigma >= 0 && *sigma <= 1 && *tau >= 1.5,
            RsBoundCase::Band => *sigma >= 1 && *sigma <= 2 && *tau >= 4,
            RsBoundCase::Right => *sigma >= 1 && *tau >= 8,
        }
    }

    pub fn value(&self, sigma: &Float, tau: &Float) -> Float {
        let p = sigma.prec().max(tau.prec());
        let e = match self {
            RsBoundCase::Strip | RsBoundCase::Band => Float::with_val(p, -sigma) / 2u32,
            RsBoundCase::Right => Float::with_val(p, -0.5),
        };
        Float::with_val(p, tau.pow(&e))
    }
}

/// Every applicable case with its bound, in case order.
pub fn rs_bound_cases(sigma: &Float, tau: &Float) -> Vec<(RsBoundCase, Float)> {
    [RsBoundCase::Strip, RsBoundCase::Band, RsBoundCase::Right]
        .into_iter()
        .filter(|c| c.applies(sigma, tau))
        .map(|c| (c, c.value(sigma, tau)))
        .collect()
}

/// The smallest applicable bound; ties go to the lower-numbered case.
pub fn rs_bound_rhs(sigma: &Float, tau: &Float) -> Result<(Float, RsBoundCase)> {
    let mut best: Option<(Float, RsBoundCase)> = None;
    for (case, v) in rs_bound_cases(sigma, tau) {
        if best.as_ref().map_or(true, |(b, _)| v < *b) {
            best = Some((v, case));
        }
    }
    best.ok_or_else(|| {
        Error::Domain(format!(
            "no bound case covers sigma = {}, tau = {}",
            sigma.to_f64(),
            tau.to_f64()
        ))
    })
}

/// `a^-sigma (1/2 + 1/(6 pi a) + |sigma - 1/2|/(2 pi a) + 2^{3 sigma/2}/7 (11/(10 a))^2)`.
pub fn partial_bound_rhs(sigma: &Float, a: &Float) -> Result<Float> {
    if !(*a > 0) {
        return Err(Error::Domain(format!("partial bound needs a > 0, got {}", a.to_f64())));
    }
    let p = sigma.prec().max(a.prec());
    let pi = Float::with_val(p, Constant::Pi);
    let pi_a = Float::with_val(p, &pi * a);
    let mut bracket = Float::with_val(p, 0.5);
    bracket += Float::with_val(p, 1) / Float::with_val(p, &pi_a * 6u32);
    let dev = Float::with_val(p, sigma - 0.5f64).abs();
    bracket += dev / Float::with_val(p, &pi_a * 2u32);
    let two_pow = Float::with_val(p, 2).pow(Float::with_val(p, sigma * 1.5f64));
    let ratio = Float::with_val(p, 11) / Float::with_val(p, a * 10u32);
    bracket += two_pow / 7u32 * Float::with_val(p, ratio.square_ref());
    let scale = Float::with_val(p, a.pow(Float::with_val(p, -sigma)));
    Ok(bracket * scale)
}

/// `3 2^-sigma + tau^{-1/2}`, valid for `sigma >= 2`, `t > 16 pi`.
pub fn r_minus_one_bound(sigma: &Float, tau: &Float) -> Result<Float> {
    if *sigma < 2 || *tau <= 8 {
        return Err(Error::Domain(format!(
            "bound for |R - 1| needs sigma >= 2 and t > 16 pi; got sigma = {}, tau = {}",
            sigma.to_f64(),
            tau.to_f64()
        )));
    }
    let p = sigma.prec().max(tau.prec());
    let a = Float::with_val(p, 2).pow(Float::with_val(p, -sigma)) * 3u32;
    let b = Float::with_val(p, tau.pow(-0.5f64));
    Ok(a + b)
}

/// `|R(s) - sum_{n <= sqrt(tau)} n^-s|` with its error radius.
fn short_sum_gap(p: &StripPoint, ctx: &PrecisionCtx) -> Result<(Approx<Float>, Float, Float)> {
    let wp = ctx.working_prec();
    let s = p.s(ctx);
    let tau = p.tau_mp(wp);
    let a = Float::with_val(wp, tau.sqrt_ref());
    let r = r_eval_approx(&s, ctx, None)?;
    let sum = zeta_sum(&a, &s, ctx)?;
    let gap = (&r.value - &sum.value).abs();
    Ok((Approx { value: gap, radius: r.radius + sum.radius }, tau, a))
}

fn rzeta_record(p: &StripPoint, gap: &Approx<Float>, case: RsBoundCase, rhs: &Float) -> CheckRecord {
    CheckRecord::from_sides(CheckTag::Rzeta, &gap.value, rhs, gap.radius)
        .at(Some(p.sigma), Some(p.t))
        .param("case", case.number() as f64)
}

fn partial_record(p: &StripPoint, gap: &Approx<Float>, a: &Float) -> Result<CheckRecord> {
    let sigma = Float::with_val(a.prec(), p.sigma);
    let rhs = partial_bound_rhs(&sigma, a)?;
    Ok(CheckRecord::from_sides(CheckTag::Partial, &gap.value, &rhs, gap.radius).at(Some(p.sigma), Some(p.t)))
}

/// The three-case bound at `p`, using the smallest applicable case.
pub fn verify_rzeta_bound(p: &StripPoint, ctx: &PrecisionCtx) -> Result<CheckRecord> {
    let wp = ctx.working_prec();
    let (rhs, case) = rs_bound_rhs(&Float::with_val(wp, p.sigma), &p.tau_mp(wp))?;
    let (gap, _, _) = short_sum_gap(p, ctx)?;
    Ok(rzeta_record(p, &gap, case, &rhs))
}

/// The refined bracket bound at `p`.
pub fn verify_partial_bound(p: &StripPoint, ctx: &PrecisionCtx) -> Result<CheckRecord> {
    let (gap, _, a) = short_sum_gap(p, ctx)?;
    partial_record(p, &gap, &a)
}

/// One record per applicable case, followed by the bracket bound when
/// `0 <= sigma <= 2`; `R(s)` is evaluated once.
pub fn verify_rzeta_all(p: &StripPoint, ctx: &PrecisionCtx) -> Result<Vec<CheckRecord>> {
    let wp = ctx.working_prec();
    let sigma = Float::with_val(wp, p.sigma);
    let tau = p.tau_mp(wp);
    let cases = rs_bound_cases(&sigma, &tau);
    if cases.is_empty() {
        return Err(Error::Domain(format!("no bound case covers sigma = {}, t = {}", p.sigma, p.t)));
    }
    let (gap, _, a) = short_sum_gap(p, ctx)?;
    let mut out: Vec<CheckRecord> = cases.iter().map(|(c, rhs)| rzeta_record(p, &gap, *c, rhs)).collect();
    if (0.0..=2.0).contains(&p.sigma) {
        out.push(partial_record(p, &gap, &a)?);
    }
    Ok(out)
}

/// `|R(s) - 1|` against `3 2^-sigma + tau^{-1/2}`; when `t >= 32 pi` a
/// second record checks it against 1.
pub fn verify_r_minus_one(p: &StripPoint, ctx: &PrecisionCtx) -> Result<Vec<CheckRecord>> {
    let wp = ctx.working_prec();
    let sigma = Float::with_val(wp, p.sigma);
    let tau = p.tau_mp(wp);
    let rhs = r_minus_one_bound(&sigma, &tau)?;
    let r = r_eval_approx(&p.s(ctx), ctx, None)?;
    let lhs = (&r.value - &MpComplex::one(wp)).abs();
    let mut out = vec![CheckRecord::from_sides(CheckTag::Rminus1, &lhs, &rhs, r.radius)
        .at(Some(p.sigma), Some(p.t))
        .param("rhs_kind", 0.0)];
    // compared in f64 so that the literal t = 32 pi qualifies
    if p.t >= 32.0 * std::f64::consts::PI {
        out.push(
            CheckRecord::from_sides(CheckTag::Rminus1, &lhs, &Float::with_val(wp, 1), r.radius)
                .at(Some(p.sigma), Some(p.t))
                .param("rhs_kind", 1.0),
        );
    }
    Ok(out)
}
