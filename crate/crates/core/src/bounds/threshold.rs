use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::vdc::{COEF_1, COEF_2, COEF_3, COEF_4};
use crate::check::{CheckRecord, CheckTag};
use crate::error::{Error, Result};
use crate::numerics::PrecisionCtx;

/// Published threshold for the final inequality, 48 significant digits.
pub const PUBLISHED_TAU0: &str = "6.24072032490448651663628063807879324939223120097e64";

const INVERSE_BOUND: &str = "42.9";
const SCAN_POINTS: usize = 140;
const SCAN_LO_EXP: f64 = 2.0;
const SCAN_HI_EXP: f64 = 70.0;

/// Argument of the logarithm in the inverse-zeta bound `42.9 ln(.)`.
///
/// `Tau` reproduces the published threshold to all of its digits; `T` is
/// the literal reading `ln t = ln(2 pi tau)` and gives a larger threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogArg {
    #[default]
    Tau,
    T,
}

impl std::str::FromStr for LogArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tau" => Ok(LogArg::Tau),
            "t" => Ok(LogArg::T),
            _ => Err(Error::Parameter(format!("log argument must be 'tau' or 't', got '{s}'"))),
        }
    }
}

impl LogArg {
    pub fn as_str(&self) -> &'static str {
        match self {
            LogArg::Tau => "tau",
            LogArg::T => "t",
        }
    }

    fn ln(&self, tau: &Float) -> Float {
        let p = tau.prec();
        match self {
            LogArg::Tau => Float::with_val(p, tau.ln_ref()),
            LogArg::T => {
                let t = Float::with_val(p, Constant::Pi) * 2u32 * tau;
                t.ln()
            }
        }
    }
}

fn dec(prec: u32, s: &str) -> Float {
    Float::with_val(prec, Float::parse(s).expect("valid decimal literal"))
}

/// Terms `(coefficient, exponent of tau)` of the corollary bound, apart from
/// the logarithmic term `30.400 tau^{-1/2} ln tau`.
fn power_terms(p: u32) -> [(Float, Float); 4] {
    let third = |n: i32, d: u32| Float::with_val(p, n) / d;
    [
        (dec(p, COEF_1), third(-1, 12)),
        (dec(p, COEF_2), third(-1, 6)),
        (dec(p, COEF_4), third(-1, 2)),
        (Float::with_val(p, 8), Float::with_val(p, -1)),
    ]
}

/// `39.209 tau^{-1/12} + 24.447 tau^{-1/6} + 30.400 tau^{-1/2} ln tau + 15.804 tau^{-1/2} + 8/tau`.
pub fn corollary_rhs(tau: &Float) -> Result<Float> {
    if !(*tau > 20) {
        return Err(Error::Domain(format!("corollary bound needs tau > 20, got {}", tau.to_f64())));
    }
    let p = tau.prec();
    let mut acc = Float::with_val(p, 0);
    for (c, e) in power_terms(p) {
        acc += c * Float::with_val(p, tau.pow(&e));
    }
    let root = Float::with_val(p, tau.sqrt_ref());
    acc += dec(p, COEF_3) * Float::with_val(p, tau.ln_ref()) / root;
    Ok(acc)
}

/// `tau d/dtau` of `corollary_rhs`.
fn corollary_log_derivative(tau: &Float) -> Float {
    let p = tau.prec();
    let mut acc = Float::with_val(p, 0);
    for (c, e) in power_terms(p) {
        acc += c * &e * Float::with_val(p, tau.pow(&e));
    }
    let ln = Float::with_val(p, tau.ln_ref());
    let root = Float::with_val(p, tau.sqrt_ref());
    acc += dec(p, COEF_3) * (1 - ln / 2u32) / root;
    acc
}

/// Both sides of `tau^{-sigma/2} + corollary_rhs(tau) < 1 / (42.9 ln L)`.
pub fn final_inequality_gap(tau: &Float, sigma: &Float, log_arg: LogArg) -> Result<(Float, Float)> {
    if *sigma < 1 {
        return Err(Error::Domain(format!("final inequality needs sigma >= 1, got {}", sigma.to_f64())));
    }
    let p = tau.prec();
    let first = Float::with_val(p, tau.pow(Float::with_val(p, -sigma) / 2u32));
    let lhs = first + corollary_rhs(tau)?;
    let rhs = Float::with_val(p, 1) / (dec(p, INVERSE_BOUND) * log_arg.ln(tau));
    Ok((lhs, rhs))
}

pub fn final_inequality_check(tau: &Float, sigma: f64, log_arg: LogArg, ctx: &PrecisionCtx) -> Result<CheckRecord> {
    let p = ctx.working_prec().max(tau.prec());
    let tau = Float::with_val(p, tau);
    let (lhs, rhs) = final_inequality_gap(&tau, &Float::with_val(p, sigma), log_arg)?;
    let err = 16.0 * ctx.ulp() * rhs.to_f64();
    Ok(CheckRecord::from_sides(CheckTag::Final, &lhs, &rhs, err)
        .at(Some(sigma), None)
        .with_tau(tau.to_f64())
        .param("log_arg_t", if log_arg == LogArg::T { 1.0 } else { 0.0 }))
}

/// `G(tau) = 42.9 ln L (tau^{-1/2} + corollary_rhs(tau)) - 1`; the final
/// inequality at `sigma = 1` is `G < 0`.
fn g(tau: &Float, log_arg: LogArg) -> Float {
    let p = tau.prec();
    let f = Float::with_val(p, tau.pow(-0.5f64)) + corollary_rhs(tau).expect("tau > 20 on the scan range");
    dec(p, INVERSE_BOUND) * log_arg.ln(tau) * f - 1u32
}

/// `dG / d(ln tau)`.
fn g_log_derivative(tau: &Float, log_arg: LogArg) -> Float {
    let p = tau.prec();
    let root_inv = Float::with_val(p, tau.pow(-0.5f64));
    let f = Float::with_val(p, &root_inv) + corollary_rhs(tau).expect("tau > 20");
    let df = corollary_log_derivative(tau) - root_inv / 2u32;
    dec(p, INVERSE_BOUND) * (f + log_arg.ln(tau) * df)
}

/// Root of the final inequality at `sigma = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    pub tau0: Float,
    pub t0: Float,
    /// Bracket left by bisection before the Newton polish.
    pub bracket: (Float, Float),
    /// Leading significant digits shared with the published value.
    pub digits_verified: u32,
    pub log_arg: LogArg,
    pub sign_changes: usize,
    pub scan_points: usize,
    pub newton_steps: u32,
}

/// Number of leading significant decimal digits on which `a` and `b` agree
/// after rounding both to that many digits.
pub fn agreeing_digits(a: &Float, b: &Float, max: u32) -> u32 {
    let mut best = 0;
    for n in 1..=max as usize {
        let sa = a.to_string_radix_round(10, Some(n), Round::Nearest);
        let sb = b.to_string_radix_round(10, Some(n), Round::Nearest);
        if sa == sb {
            best = n as u32;
        }
    }
    best
}

/// `solve_threshold_with` using the default logarithm convention.
pub fn solve_threshold(ctx: &PrecisionCtx) -> Result<ThresholdResult> {
    solve_threshold_with(ctx, LogArg::default())
}

/// Finds the unique sign change of `G` on `[1e2, 1e70]`: a 140-point log
/// scan, bisection in `ln tau`, then Newton in `ln tau`.
pub fn solve_threshold_with(ctx: &PrecisionCtx, log_arg: LogArg) -> Result<ThresholdResult> {
    if ctx.bits < 200 {
        return Err(Error::Parameter(format!("threshold solver needs at least 200 bits, got {}", ctx.bits)));
    }
    let p = ctx.working_prec();
    let ten = Float::with_val(p, 10);
    let tau_at = |e: f64| Float::with_val(p, (&ten).pow(&Float::with_val(p, e)));

    let exps: Vec<f64> = (0..SCAN_POINTS)
        .map(|k| SCAN_LO_EXP + (SCAN_HI_EXP - SCAN_LO_EXP) * k as f64 / (SCAN_POINTS - 1) as f64)
        .collect();
    let signs: Vec<bool> = exps.iter().map(|&e| g(&tau_at(e), log_arg).is_sign_positive()).collect();
    let changes: Vec<usize> = (1..signs.len()).filter(|&k| signs[k] != signs[k - 1]).collect();
    match changes.len() {
        0 => return Err(Error::NoCrossing),
        1 => {}
        n => return Err(Error::MultipleCrossings(n)),
    }
    let k = changes[0];
    let mut lo = Float::with_val(p, tau_at(exps[k - 1]).ln());
    let mut hi = Float::with_val(p, tau_at(exps[k]).ln());
    let lo_positive = signs[k - 1];

    // bisection on u = ln tau down to ~2^-40 relative width
    for _ in 0..200 {
        let width = Float::with_val(p, &hi - &lo);
        if width < Float::with_val(p, &hi * 1e-12f64) {
            break;
        }
        let mid = Float::with_val(p, &lo + &hi) / 2u32;
        let gm = g(&Float::with_val(p, mid.exp_ref()), log_arg);
        if gm.is_sign_positive() == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let bracket = (Float::with_val(p, lo.exp_ref()), Float::with_val(p, hi.exp_ref()));

    let mut u = Float::with_val(p, &lo + &hi) / 2u32;
    let tol = Float::with_val(p, Float::i_exp(1, -(ctx.bits as i32) + 4)) * Float::with_val(p, &u).abs();
    let mut newton_steps = 0;
    for _ in 0..100 {
        newton_steps += 1;
        let tau = Float::with_val(p, u.exp_ref());
        let step = g(&tau, log_arg) / g_log_derivative(&tau, log_arg);
        u -= &step;
        if u < lo || u > hi {
            return Err(Error::NoConvergence("Newton step left the bisection bracket".into()));
        }
        if step.abs() <= tol {
            break;
        }
    }
    let tau0 = Float::with_val(p, u.exp_ref());
    let t0 = Float::with_val(p, Constant::Pi) * 2u32 * &tau0;
    let published = dec(p, PUBLISHED_TAU0);
    let digits_verified = agreeing_digits(&tau0, &published, 48);
    Ok(ThresholdResult {
        tau0,
        t0,
        bracket,
        digits_verified,
        log_arg,
        sign_changes: changes.len(),
        scan_points: SCAN_POINTS,
        newton_steps,
    })
}
