use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::check::{CheckRecord, CheckTag};
use crate::error::{Error, Result};
use crate::numerics::PrecisionCtx;
use crate::sums::{sup_sum, ExponentAlpha};

/// Decimal coefficients of the numeric corollary, treated as exact.
pub(crate) const COEF_1: &str = "39.209";
pub(crate) const COEF_2: &str = "24.447";
pub(crate) const COEF_3: &str = "30.400";
pub(crate) const COEF_4: &str = "15.804";
/// `(C3_hat / A3_hat)^12`.
pub(crate) const RATIO_12: &str = "19.2088";

fn dec(prec: u32, s: &str) -> Float {
    Float::with_val(prec, Float::parse(s).expect("valid decimal literal"))
}

/// Constants of the explicit van der Corput estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct VdcConstants {
    pub a: Float,
    pub a3_hat: Float,
    pub c3_hat: Float,
    /// Multiplier in the third-derivative bound; taken equal to `a3_hat`.
    pub m: Float,
}

impl VdcConstants {
    /// Constants recovered from the corollary coefficients:
    /// `A = 15.804 / (4 sqrt 2)`, `A3_hat = 39.209 (2 - sqrt 2) / 2`,
    /// `C3_hat = A3_hat 19.2088^{1/12}`, `M = A3_hat`.
    pub fn constants_default(prec: u32) -> Self {
        let sqrt2 = Float::with_val(prec, 2).sqrt();
        let a = dec(prec, COEF_4) / (Float::with_val(prec, &sqrt2 * 4u32));
        let a3_hat = dec(prec, COEF_1) * Float::with_val(prec, 2 - &sqrt2) / 2u32;
        let root = dec(prec, RATIO_12).pow(Float::with_val(prec, 1) / 12u32);
        let c3_hat = Float::with_val(prec, &a3_hat * &root);
        Self { m: a3_hat.clone(), a, a3_hat, c3_hat }
    }

    /// `A` recovered separately from the coefficients `15.804`, `24.447` and
    /// `30.400`.
    pub fn three_inversions(prec: u32) -> [Float; 3] {
        let sqrt2 = Float::with_val(prec, 2).sqrt();
        let ln2 = Float::with_val(prec, Constant::Log2);
        let from_4 = dec(prec, COEF_4) / Float::with_val(prec, &sqrt2 * 4u32);
        let from_2 = dec(prec, COEF_2) * (Float::with_val(prec, &sqrt2 * 2u32) - 1u32) / 16u32;
        let from_3 = dec(prec, COEF_3) * ln2 * 3u32 / Float::with_val(prec, &sqrt2 * 16u32);
        [from_4, from_2, from_3]
    }

    /// `(C3_hat / A3_hat)^12`.
    pub fn ratio_12(&self) -> Float {
        let r = Float::with_val(self.a.prec(), &self.c3_hat / &self.a3_hat);
        r.pow(12u32)
    }

    pub fn prec(&self) -> u32 {
        self.a.prec()
    }
}

fn tau_of_t(t: &Float) -> Float {
    let p = t.prec();
    Float::with_val(p, t / Float::with_val(p, Constant::Pi)) / 2u32
}

/// Second-derivative bound `2A (tau^{1/2} + 2 X tau^{-1/2})` for `S(X, t)`.
pub fn vdc_d2_bound(x: &Float, t: &Float, consts: &VdcConstants) -> Result<Float> {
    let p = consts.prec().max(t.prec());
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    if *t <= two_pi || *x < 1 {
        return Err(Error::Domain(format!(
            "second-derivative bound needs t > 2 pi and X >= 1, got t = {}, X = {}",
            t.to_f64(),
            x.to_f64()
        )));
    }
    let tau = tau_of_t(&Float::with_val(p, t));
    let root = Float::with_val(p, tau.sqrt_ref());
    let inner = Float::with_val(p, &root + Float::with_val(p, x * 2u32) / &root);
    Ok(inner * &consts.a * 2u32)
}

/// Third-derivative bound together with its validity predicate.
#[derive(Debug, Clone, PartialEq)]
pub struct D3Bound {
    pub value: Float,
    pub valid: bool,
    /// Least `tau` for which the bound holds at this `alpha`.
    pub tau_min: Option<Float>,
}

/// `M tau^{alpha + (1 - 3 alpha)/6}`, valid for `0 < alpha < 2/3` and
/// `tau >= tau0_conditions(3, alpha, M)`. The value is returned even when
/// the predicate fails.
pub fn vdc_d3_bound(alpha: &Float, tau: &Float, consts: &VdcConstants) -> D3Bound {
    let p = consts.prec().max(alpha.prec());
    let e = Float::with_val(p, alpha / 2u32) + Float::with_val(p, 1) / 6u32;
    let value = Float::with_val(p, tau.pow(&e)) * &consts.m;
    let in_range = *alpha > 0 && Float::with_val(p, alpha * 3u32) < 2;
    let tau_min = if in_range { tau0_conditions(3, alpha, &consts.m, consts).ok() } else { None };
    let valid = tau_min.as_ref().is_some_and(|m| tau >= m);
    D3Bound { value, valid, tau_min }
}

/// Least `tau` satisfying `tau^e >= ratio`; `None` when no `tau >= 1` does.
fn least_power_threshold(e: &Float, ratio: &Float) -> Option<Float> {
    if *e > 0 {
        let p = e.prec();
        Some(Float::with_val(p, ratio.pow(Float::with_val(p, 1) / e)))
    } else if *ratio <= 1 {
        Some(Float::with_val(e.prec(), 1))
    } else {
        None
    }
}

/// The least `tau_0` with `tau_0 >= d^{D/(alpha(D-2))}`,
/// `tau_0^{2/D + (1 - alpha d)/(D-2)} >= C_d/M` and
/// `tau_0^{2 alpha/D + (1 - alpha d)/(D-2)} >= A_d/M`, `D = 2^d`.
/// Only `d = 3` has known constants.
pub fn tau0_conditions(d: u32, alpha: &Float, m: &Float, consts: &VdcConstants) -> Result<Float> {
    if d != 3 {
        return Err(Error::Unsupported(format!("third-derivative constants are only known for d = 3, got d = {d}")));
    }
    if !(*alpha > 0) || !(*m > 0) {
        return Err(Error::Domain("tau0 conditions need alpha > 0 and M > 0".into()));
    }
    let p = consts.prec().max(alpha.prec());
    let big_d = Float::with_val(p, 8);
    let dm2 = Float::with_val(p, &big_d - 2u32);
    let first = Float::with_val(p, 3).pow(Float::with_val(p, &big_d / Float::with_val(p, alpha * &dm2)));
    let common = Float::with_val(p, 1 - Float::with_val(p, alpha * 3u32)) / &dm2;
    let e2 = Float::with_val(p, 2) / &big_d + &common;
    let e3 = Float::with_val(p, alpha * 2u32) / &big_d + &common;
    let second = least_power_threshold(&e2, &Float::with_val(p, &consts.c3_hat / m))
        .ok_or_else(|| Error::Domain("no tau satisfies the C_d condition".into()))?;
    let third = least_power_threshold(&e3, &Float::with_val(p, &consts.a3_hat / m))
        .ok_or_else(|| Error::Domain("no tau satisfies the A_d condition".into()))?;
    Ok(first.max(&second).max(&third).clone())
}

/// Threshold that serves every dyadic block `1/2 <= alpha < 2/3` at once when
/// `M = A3_hat`: `max(3^{8/3}, (C3_hat/A3_hat)^12)`.
pub fn tau0_uniform_floor(consts: &VdcConstants) -> Float {
    let p = consts.prec();
    let first = Float::with_val(p, 3).pow(Float::with_val(p, 8) / 3u32);
    first.max(&consts.ratio_12()).clone()
}

fn two_pow(p: u32, e: &Float) -> Float {
    Float::with_val(p, 2).pow(e)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}

/// First term shared by the short-sum bounds:
/// `A3_hat 2^{sigma-1/2} / (2^{sigma-1/2} - 1) tau^{(5/6 - sigma)/2}`.
fn third_derivative_term(sigma: &Float, tau: &Float, c: &VdcConstants) -> Float {
    let p = c.prec();
    let q = two_pow(p, &Float::with_val(p, sigma - 0.5f64));
    let coef = Float::with_val(p, &c.a3_hat * &q) / Float::with_val(p, &q - 1u32);
    let e = (Float::with_val(p, 5) / 6u32 - sigma) / 2u32;
    coef * Float::with_val(p, tau.pow(&e))
}

/// `2^{1+sigma} A / (1 - 2^-sigma) tau^{(2/3)(3/4 - sigma)}`.
fn second_derivative_term(sigma: &Float, tau: &Float, c: &VdcConstants) -> Float {
    let p = c.prec();
    let num = two_pow(p, &Float::with_val(p, sigma + 1u32)) * &c.a;
    let den = 1 - two_pow(p, &Float::with_val(p, -sigma));
    let e = (Float::with_val(p, 0.75) - sigma) * 2u32 / 3u32;
    num / den * Float::with_val(p, tau.pow(&e))
}

/// `8 tau^{2(1/2 - sigma)}`.
fn tail_term(sigma: &Float, tau: &Float) -> Float {
    let p = sigma.prec().max(tau.prec());
    let e = (Float::with_val(p, 0.5) - sigma) * 2u32;
    Float::with_val(p, tau.pow(&e)) * 8u32
}

/// Short-sum bound for `1/2 < sigma < 1`, `tau >= 20`.
pub fn van1_rhs(sigma: &Float, tau: &Float, c: &VdcConstants) -> Result<Float> {
    require(*sigma > 0.5 && *sigma < 1 && *tau >= 20, || {
        format!("needs 1/2 < sigma < 1 and tau >= 20, got ({}, {})", sigma.to_f64(), tau.to_f64())
    })?;
    let p = c.prec();
    let ln_tau = Float::with_val(p, tau.ln_ref());
    let ln2 = Float::with_val(p, Constant::Log2);
    let log_factor = 1 + ln_tau * 4u32 / (ln2 * 3u32);
    let e = (Float::with_val(p, 0.75) - sigma) * 2u32;
    let third = Float::with_val(p, &c.a * 4u32) * log_factor * Float::with_val(p, tau.pow(&e));
    Ok(third_derivative_term(sigma, tau, c) + second_derivative_term(sigma, tau, c) + third + tail_term(sigma, tau))
}

/// Short-sum bound for `sigma >= 1`, `tau > 20`.
pub fn mainbound_rhs(sigma: &Float, tau: &Float, c: &VdcConstants) -> Result<Float> {
    require(*sigma >= 1 && *tau > 20, || {
        format!("needs sigma >= 1 and tau > 20, got ({}, {})", sigma.to_f64(), tau.to_f64())
    })?;
    let p = c.prec();
    let ln_tau = Float::with_val(p, tau.ln_ref());
    let ln2 = Float::with_val(p, Constant::Log2);
    let e = (Float::with_val(p, 0.25) - sigma) * 2u32 / 3u32;
    let pw = Float::with_val(p, tau.pow(&e));
    let k = two_pow(p, &Float::with_val(p, sigma + 1u32)) * &c.a;
    let log_term = Float::with_val(p, &k * 4u32) / (ln2 * 3u32) * &pw * ln_tau;
    let plain = k * pw;
    Ok(third_derivative_term(sigma, tau, c) + second_derivative_term(sigma, tau, c) + log_term + plain + tail_term(sigma, tau))
}

/// `mainbound_rhs(sigma, tau) <= corollary_rhs(tau)` as a record.
pub fn domination_check(sigma: f64, tau: f64, ctx: &PrecisionCtx) -> Result<CheckRecord> {
    let p = ctx.working_prec();
    let c = VdcConstants::constants_default(p);
    let s = Float::with_val(p, sigma);
    let tf = Float::with_val(p, tau);
    let lhs = mainbound_rhs(&s, &tf, &c)?;
    let rhs = super::corollary_rhs(&tf)?;
    Ok(CheckRecord::from_sides(CheckTag::Domination, &lhs, &rhs, 0.0).at(Some(sigma), None).with_tau(tau))
}

/// Brute-force `S(X, t)` against the second-derivative bound.
pub fn verify_vdc2(x: f64, t: f64, ctx: &PrecisionCtx) -> Result<CheckRecord> {
    let p = ctx.working_prec();
    let c = VdcConstants::constants_default(p);
    let xf = Float::with_val(p, x);
    let tf = Float::with_val(p, t);
    let rhs = vdc_d2_bound(&xf, &tf, &c)?;
    let s = sup_sum(&xf, &tf, ctx)?;
    let err = 4.0 * s.terms as f64 * ctx.ulp();
    Ok(CheckRecord::from_sides(CheckTag::Vdc2, &s.value, &rhs, err)
        .at(None, Some(t))
        .param("X", x)
        .param("argmax_Z", s.argmax_z as f64))
}

/// Brute-force `S(X, t)` against the third-derivative bound; `None` when the
/// bound's validity predicate fails at `(X, t)`.
pub fn verify_vdc3(x: f64, t: f64, ctx: &PrecisionCtx) -> Result<Option<CheckRecord>> {
    let p = ctx.working_prec();
    let c = VdcConstants::constants_default(p);
    let xf = Float::with_val(p, x);
    let tf = Float::with_val(p, t);
    let tau = tau_of_t(&tf);
    if xf <= 1 || tau <= 1 {
        return Ok(None);
    }
    let alpha = ExponentAlpha::alpha_mp(&xf, &tau);
    let bound = vdc_d3_bound(&alpha, &tau, &c);
    if !bound.valid {
        return Ok(None);
    }
    let s = sup_sum(&xf, &tf, ctx)?;
    let err = 4.0 * s.terms as f64 * ctx.ulp();
    Ok(Some(
        CheckRecord::from_sides(CheckTag::Vdc3, &s.value, &bound.value, err)
            .at(None, Some(t))
            .param("X", x)
            .param("alpha", alpha.to_f64()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 256;

    fn f(x: f64) -> Float {
        Float::with_val(P, x)
    }

    fn close(a: &Float, b: f64, rel: f64) -> bool {
        ((a.to_f64() - b) / b).abs() < rel
    }

    #[test]
    fn constants_registry() {
        let c = VdcConstants::constants_default(P);
        assert!(close(&c.a, 2.793_778_892_468_049, 1e-14));
        assert!(close(&c.a3_hat, 11.484_050_216_456_658, 1e-14));
        assert!(close(&c.c3_hat, 14.691_070_260_466_227, 1e-13));
        assert!(close(&c.ratio_12(), 19.2088, 1e-12));
        assert_eq!(c.m, c.a3_hat);
        let inv = VdcConstants::three_inversions(P);
        for a in &inv {
            for b in &inv {
                let rel = Float::with_val(P, a - b).abs() / b;
                assert!(rel < 1e-3);
            }
        }
        // 2 A3_hat / (2 - sqrt 2) gives back the leading coefficient
        let sqrt2 = f(2.0).sqrt();
        let back = Float::with_val(P, &c.a3_hat * 2u32) / (2 - sqrt2);
        assert!(Float::with_val(P, back - dec(P, COEF_1)).abs() < 1e-60);
    }

    #[test]
    fn d2_examples() {
        let c = VdcConstants::constants_default(P);
        // X = tau^{1/2} at tau = 100: 2A (10 + 2) = 24 A
        let t = f(200.0) * Float::with_val(P, Constant::Pi);
        let v = vdc_d2_bound(&f(10.0), &t, &c).unwrap();
        assert!((v - Float::with_val(P, &c.a * 24u32)).abs() < 1e-60);
        // X = tau: 6 A tau^{1/2}
        let v = vdc_d2_bound(&f(100.0), &t, &c).unwrap();
        assert!((v - Float::with_val(P, &c.a * 60u32)).abs() < 1e-60);
        assert!(vdc_d2_bound(&f(10.0), &f(6.0), &c).is_err());
        assert!(vdc_d2_bound(&f(0.5), &f(100.0), &c).is_err());
    }

    #[test]
    fn d3_examples_and_validity() {
        let c = VdcConstants::constants_default(P);
        let b = vdc_d3_bound(&f(0.5), &f(100.0), &c);
        let expect = Float::with_val(P, &c.a3_hat * f(100.0).pow(Float::with_val(P, 5) / 12u32));
        assert!((b.value.clone() - expect).abs() < 1e-60);
        assert!(close(&b.value, 78.24, 1e-4));
        assert!(b.valid);
        let two_thirds = Float::with_val(P, 2) / 3u32;
        assert!(!vdc_d3_bound(&two_thirds, &f(1e6), &c).valid);
        assert!(!vdc_d3_bound(&f(0.5), &f(18.0), &c).valid);
        assert!(vdc_d3_bound(&f(0.5), &f(18.73), &c).valid);
    }

    #[test]
    fn tau0_conditions_examples() {
        let c = VdcConstants::constants_default(P);
        let first = f(3.0).pow(Float::with_val(P, 8) / 3u32);
        assert!(close(&first, 18.720_754_407_467_1, 1e-12));
        let t = tau0_conditions(3, &f(0.5), &c.m, &c).unwrap();
        assert_eq!(t, first, "at alpha = 1/2 the first condition dominates");
        // with M = C3_hat the C condition collapses to tau >= 1
        let t = tau0_conditions(3, &f(0.5), &c.c3_hat, &c).unwrap();
        assert_eq!(t, first);
        // the worst dyadic block alpha -> 2/3 needs (C/A)^12
        let near = Float::with_val(P, 2) / 3u32 - f(1e-30);
        let t = tau0_conditions(3, &near, &c.m, &c).unwrap();
        assert!(close(&t, 19.2088, 1e-9));
        assert!(close(&tau0_uniform_floor(&c), 19.2088, 1e-12));
        assert!(matches!(tau0_conditions(2, &f(0.5), &c.m, &c), Err(Error::Unsupported(_))));
    }

    #[test]
    fn van1_third_term_at_three_quarters() {
        let c = VdcConstants::constants_default(P);
        let sigma = f(0.75);
        let tau = f(20.0);
        let full = van1_rhs(&sigma, &tau, &c).unwrap();
        let rest = third_derivative_term(&sigma, &tau, &c) + second_derivative_term(&sigma, &tau, &c) + tail_term(&sigma, &tau);
        let third = Float::with_val(P, &full - rest);
        let ln20 = f(20.0).ln();
        let expect = Float::with_val(P, &c.a * 4u32) * (1 + ln20 * 4u32 / (Float::with_val(P, Constant::Log2) * 3u32));
        assert!(Float::with_val(P, &third - &expect).abs() < 1e-60);
        assert!(close(&third, 75.58, 1e-3));
        assert!(van1_rhs(&f(0.9), &f(1000.0), &c).unwrap() < van1_rhs(&f(0.9), &f(20.0), &c).unwrap());
        assert!(van1_rhs(&f(0.5), &f(100.0), &c).is_err());
        assert!(van1_rhs(&f(0.75), &f(19.0), &c).is_err());
    }

    #[test]
    fn mainbound_leading_coefficient_and_monotonicity() {
        let c = VdcConstants::constants_default(P);
        let t1 = third_derivative_term(&f(1.0), &f(1.0), &c);
        assert!((t1 - dec(P, COEF_1)).abs() < 1e-60);
        let a = mainbound_rhs(&f(1.0), &f(100.0), &c).unwrap();
        let b = mainbound_rhs(&f(1.5), &f(100.0), &c).unwrap();
        assert!(b < a);
        assert!(mainbound_rhs(&f(0.99), &f(100.0), &c).is_err());
        assert!(mainbound_rhs(&f(1.0), &f(20.0), &c).is_err());
    }
}
