use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::check::{CheckRecord, CheckTag};
use crate::error::{Error, Result};
use crate::numerics::{complex_zeta_approx, real_zeta_approx, Approx, PrecisionCtx, StripPoint};

/// Smallest height accepted by `zeta_inverse_bound`. The source result is
/// also quoted with `t >= 132.16`; the larger value is used.
pub const ZETA_INVERSE_T_MIN: f64 = 500.0;

/// `zeta(2 sigma) / zeta(sigma)`, a lower bound for `|zeta(sigma + it)|`.
pub fn zeta_lower_bound_approx(sigma: &Float, ctx: &PrecisionCtx) -> Result<Approx<Float>> {
    if *sigma <= 1 {
        return Err(Error::Domain(format!("zeta lower bound needs sigma > 1, got {}", sigma.to_f64())));
    }
    let p = ctx.working_prec();
    let num = real_zeta_approx(&Float::with_val(p, sigma * 2u32), ctx)?;
    let den = real_zeta_approx(&Float::with_val(p, sigma), ctx)?;
    let value = Float::with_val(p, &num.value / &den.value);
    let d = den.value.to_f64();
    let radius = num.radius / d + value.to_f64() * den.radius / d;
    Ok(Approx { value, radius })
}

pub fn zeta_lower_bound(sigma: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    let a = zeta_lower_bound_approx(sigma, ctx)?;
    if a.radius > ctx.target_eps {
        return Err(Error::Convergence { radius: a.radius, target: ctx.target_eps });
    }
    Ok(a.value)
}

/// `zeta(2 sigma) / zeta(sigma) <= |zeta(sigma + it)|`, as `lhs < rhs`.
pub fn verify_lemma1(p: &StripPoint, ctx: &PrecisionCtx) -> Result<CheckRecord> {
    let prec = ctx.working_prec();
    let lower = zeta_lower_bound_approx(&Float::with_val(prec, p.sigma), ctx)?;
    let z = complex_zeta_approx(&p.s(ctx), ctx)?;
    let err = lower.radius + z.radius;
    Ok(CheckRecord::from_sides(CheckTag::Lemma1, &lower.value, &z.value.abs(), err).at(Some(p.sigma), Some(p.t)))
}

/// `42.9 ln t`, the assumed bound for `1 / |zeta(sigma + it)|`, `sigma >= 1`.
pub fn zeta_inverse_bound(t: &Float) -> Result<Float> {
    if *t < ZETA_INVERSE_T_MIN {
        return Err(Error::Domain(format!(
            "inverse zeta bound is used for t >= {ZETA_INVERSE_T_MIN}, got {}",
            t.to_f64()
        )));
    }
    let p = t.prec();
    let c = Float::with_val(p, Float::parse("42.9").expect("literal"));
    Ok(c * Float::with_val(p, t.ln_ref()))
}

fn tau_of(t: f64, p: u32) -> Float {
    Float::with_val(p, t) / (Float::with_val(p, Constant::Pi) * 2u32)
}

/// `2 tau^{-3/4} + 2 tau^{-1/4} < zeta(3) / zeta(3/2)`.
pub fn rect32_check(t: f64, ctx: &PrecisionCtx) -> Result<CheckRecord> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("rect32 check needs t > 0, got {t}")));
    }
    let p = ctx.working_prec();
    let tau = tau_of(t, p);
    let lhs = Float::with_val(p, (&tau).pow(-0.75f64)) * 2u32 + Float::with_val(p, (&tau).pow(-0.25f64)) * 2u32;
    let rhs = zeta_lower_bound_approx(&Float::with_val(p, 1.5), ctx)?;
    Ok(CheckRecord::from_sides(CheckTag::Rect32, &lhs, &rhs.value, rhs.radius).at(Some(1.5), Some(t)))
}

/// Least integer `t` passing `rect32_check`. The left side decreases in
/// `t`, so the pass set is a half line; a few larger heights are sampled to
/// confirm it.
pub fn minimal_t_rect32(ctx: &PrecisionCtx) -> Result<u64> {
    let pass = |t: u64| rect32_check(t as f64, ctx).map(|r| r.pass);
    let mut hi = 2u64;
    while !pass(hi)? {
        hi *= 2;
        if hi > 1 << 40 {
            return Err(Error::NoCrossing);
        }
    }
    let mut lo = hi / 2; // fails
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pass(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    for k in [1, 2, 3, 10, 100, 1000, 1_000_000] {
        if !pass(hi + k)? {
            return Err(Error::MultipleCrossings(2));
        }
    }
    Ok(hi)
}

/// On `3/2 <= sigma <= 2`:
/// `2 tau^{-sigma/2} + tau^{(1-sigma)/2} / (sigma - 1) < zeta(2 sigma) / zeta(sigma)`.
/// A second record checks the sigma-free form `2 tau^{-3/4} + 2 tau^{-1/4} < zeta(3)/zeta(3/2)`.
pub fn rect_boundary_check_s3(t: f64, sigma: f64, ctx: &PrecisionCtx) -> Result<Vec<CheckRecord>> {
    if !(1.5..=2.0).contains(&sigma) || !(t >= 2707.0) {
        return Err(Error::Domain(format!(
            "boundary check needs 3/2 <= sigma <= 2 and t >= 2707, got ({sigma}, {t})"
        )));
    }
    let p = ctx.working_prec();
    let tau = tau_of(t, p);
    let s = Float::with_val(p, sigma);
    let half = Float::with_val(p, -&s) / 2u32;
    let a = Float::with_val(p, (&tau).pow(&half)) * 2u32;
    let e = Float::with_val(p, 1 - &s) / 2u32;
    let b = Float::with_val(p, (&tau).pow(&e)) / Float::with_val(p, &s - 1u32);
    let lhs = a + b;
    let rhs = zeta_lower_bound_approx(&s, ctx)?;
    let exact = CheckRecord::from_sides(CheckTag::S3Boundary, &lhs, &rhs.value, rhs.radius)
        .at(Some(sigma), Some(t))
        .param("form", 0.0);
    let weak = rect32_check(t, ctx)?;
    let weak = CheckRecord { tag: CheckTag::S3Boundary, ..weak }.at(Some(sigma), Some(t)).param("form", 1.0);
    Ok(vec![exact, weak])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(256).unwrap()
    }

    #[test]
    fn lower_bound_values() {
        let ctx = ctx();
        let p = ctx.working_prec();
        let v = zeta_lower_bound(&Float::with_val(p, 1.5), &ctx).unwrap();
        // zeta(3)/zeta(3/2), mpmath at 80 digits
        let exact = Float::with_val(p, Float::parse("0.46013942972033208376891829637467990487933758320370488327866519").unwrap());
        assert!((v - exact).abs() < 1e-60);
        let far = zeta_lower_bound(&Float::with_val(p, 60.0), &ctx).unwrap();
        assert!((far - 1u32).abs() < 1e-17);
        assert!(zeta_lower_bound(&Float::with_val(p, 1.0), &ctx).is_err());
    }

    #[test]
    fn lemma1_points() {
        let ctx = PrecisionCtx::new(128).unwrap();
        for (sigma, t) in [(1.1, 1.0), (1.5, 100.0), (4.0, 1000.0)] {
            let r = verify_lemma1(&StripPoint::new(sigma, t).unwrap(), &ctx).unwrap();
            assert!(r.pass, "{r:?}");
        }
        assert!(verify_lemma1(&StripPoint::new(0.5, 14.0).unwrap(), &ctx).is_err());
    }

    #[test]
    fn inverse_bound_domain() {
        let v = zeta_inverse_bound(&Float::with_val(128, 500)).unwrap().to_f64();
        assert!((v - 42.9 * 500f64.ln()).abs() < 1e-12);
        assert!((v - 266.6).abs() < 0.1);
        assert!(zeta_inverse_bound(&Float::with_val(128, std::f64::consts::E)).is_err());
        assert!(zeta_inverse_bound(&Float::with_val(128, 499.9)).is_err());
    }

    #[test]
    fn rect32_margins() {
        let ctx = ctx();
        let r = rect32_check(2707.0, &ctx).unwrap();
        assert!(r.pass);
        assert!((r.margin - 1.745_063_232_001_494_6e-6).abs() < 1e-20);
        let r = rect32_check(2706.0, &ctx).unwrap();
        assert!(!r.pass);
        assert!((r.margin + 4.466_779_667_245_372e-5).abs() < 1e-18);
        let r = rect32_check(2700.0, &ctx).unwrap();
        assert!(!r.pass);
        assert!((r.margin + 3.236_187_341_136_442_4e-4).abs() < 1e-17);
        assert!(rect32_check(1e12, &ctx).unwrap().pass);
        assert_eq!(minimal_t_rect32(&ctx).unwrap(), 2707);
    }

    #[test]
    fn s3_boundary_monotone_in_sigma() {
        let ctx = ctx();
        let a = rect_boundary_check_s3(2707.0, 1.5, &ctx).unwrap();
        let b = rect_boundary_check_s3(2707.0, 2.0, &ctx).unwrap();
        assert!(a.iter().all(|r| r.pass) && b.iter().all(|r| r.pass));
        assert!(b[0].lhs < a[0].lhs);
        let c = rect_boundary_check_s3(1e4, 2.0, &ctx).unwrap();
        assert!(c[0].margin > a[0].margin);
        assert!(rect_boundary_check_s3(2706.0, 1.5, &ctx).is_err());
        assert!(rect_boundary_check_s3(3000.0, 1.4, &ctx).is_err());
    }
}
