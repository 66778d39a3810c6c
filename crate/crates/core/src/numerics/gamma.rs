use rug::{Float, Integer, Rational};

use super::zeta::bernoulli_b2k;
use super::{MpComplex, PrecisionCtx};
use crate::error::{Error, Result};

fn is_nonpositive_integer(z: &MpComplex) -> bool {
    z.im.is_zero() && z.re.is_integer() && z.re <= 0
}

/// log Gamma(s) on the branch that is real for s > 0 and continuous off the
/// negative real axis. Stirling series after shifting `Re s` past a
/// precision-dependent threshold.
pub fn log_gamma(s: &MpComplex, ctx: &PrecisionCtx) -> Result<MpComplex> {
    let p = ctx.working_prec();
    let s = s.with_prec(p);
    if !s.is_finite() {
        return Err(Error::Domain("non-finite argument".into()));
    }
    if is_nonpositive_integer(&s) {
        return Err(Error::Pole(format!("Gamma at {}", s.re.to_f64())));
    }

    let threshold = (0.12 * p as f64).max(10.0);
    let shift = (threshold - s.re.to_f64()).ceil().max(0.0) as u64;

    let mut correction = MpComplex::zero(p);
    for k in 0..shift {
        let sk = &s + &MpComplex::from_f64(p, k as f64, 0.0);
        correction = &correction + &sk.ln();
    }
    let z = &s + &MpComplex::from_f64(p, shift as f64, 0.0);

    // (z - 1/2) ln z - z + ln(2 pi)/2
    let half = MpComplex::from_f64(p, 0.5, 0.0);
    let ln_z = z.ln();
    let two_pi = ctx.pi() * 2u32;
    let half_ln_two_pi = MpComplex::from_real(two_pi.ln() / 2u32);
    let mut acc = &(&(&z - &half) * &ln_z) - &z;
    acc = &acc + &half_ln_two_pi;

    let inv_z = z.recip();
    let inv_z2 = &inv_z * &inv_z;
    let mut zpow = inv_z.clone(); // z^{-(2k-1)}
    let eps_w = ctx.target_eps * 1e-3;
    for k in 1..(4 * p as usize) {
        let b = bernoulli_b2k(k);
        let denom = Integer::from(2 * k as u64) * Integer::from(2 * k as u64 - 1);
        let coef = Float::with_val(p, b / Rational::from(denom));
        let term = zpow.scale(&coef);
        let small = term.abs_f64() < eps_w;
        acc = &acc + &term;
        if small {
            break;
        }
        zpow = &zpow * &inv_z2;
    }
    Ok(&acc - &correction)
}

/// chi(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2), the factor in
/// zeta(s) = chi(s) zeta(1-s).
pub fn chi(s: &MpComplex, ctx: &PrecisionCtx) -> Result<MpComplex> {
    let p = ctx.working_prec();
    let s = s.with_prec(p);
    let half = Float::with_val(p, 0.5);
    let one = MpComplex::one(p);
    let a = (&one - &s).scale(&half);
    let b = s.scale(&half);
    if is_nonpositive_integer(&a) {
        return Err(Error::Pole(format!("chi at s = {}", s.re.to_f64())));
    }
    if is_nonpositive_integer(&b) {
        // 1/Gamma(s/2) vanishes
        return Ok(MpComplex::zero(p));
    }
    let ln_pi = MpComplex::from_real(ctx.pi().ln());
    let exponent = &(&(&s - &MpComplex::from_f64(p, 0.5, 0.0)) * &ln_pi) + &(&log_gamma(&a, ctx)? - &log_gamma(&b, ctx)?);
    Ok(exponent.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(128).unwrap()
    }

    #[test]
    fn small_integer_values() {
        let ctx = ctx();
        let l1 = log_gamma(&ctx.complex(1.0, 0.0), &ctx).unwrap();
        assert!(l1.abs() < ctx.target_eps);
        let l5 = log_gamma(&ctx.complex(5.0, 0.0), &ctx).unwrap();
        let ln24 = ctx.real(24.0).ln();
        assert!((l5.re - ln24).abs() < ctx.target_eps);
        assert!(l5.im.is_zero() || l5.im.clone().abs() < ctx.target_eps);
    }

    #[test]
    fn poles() {
        let ctx = ctx();
        assert!(matches!(log_gamma(&ctx.complex(0.0, 0.0), &ctx), Err(Error::Pole(_))));
        assert!(matches!(log_gamma(&ctx.complex(-3.0, 0.0), &ctx), Err(Error::Pole(_))));
        assert!(log_gamma(&ctx.complex(-3.0, 1e-9), &ctx).is_ok());
        assert!(matches!(chi(&ctx.complex(1.0, 0.0), &ctx), Err(Error::Pole(_))));
        assert!(chi(&ctx.complex(-2.0, 0.0), &ctx).unwrap().abs() < 1e-300);
    }

    #[test]
    fn reflection_formula() {
        let ctx = ctx();
        let p = ctx.working_prec();
        let s = ctx.complex(0.5, 10.0);
        let one = MpComplex::one(p);
        let g = log_gamma(&s, &ctx).unwrap().exp();
        let g1 = log_gamma(&(&one - &s), &ctx).unwrap().exp();
        let lhs = &g * &g1;
        // pi / sin(pi s), sin(z) = (e^{iz} - e^{-iz}) / 2i
        let w = s.exp_i_pi();
        let sin = (&w - &w.recip()).scale(&Float::with_val(p, 0.5)).mul_i().mul_i().mul_i();
        let rhs = MpComplex::from_real(ctx.pi()) / sin;
        assert!((&lhs - &rhs).abs() / rhs.abs() < 1e-33);
    }

    #[test]
    fn matches_mpfr_lngamma_on_positive_reals() {
        let ctx = ctx();
        for &x in &[0.25, 1.5, 7.0, 33.3] {
            let ours = log_gamma(&ctx.complex(x, 0.0), &ctx).unwrap();
            let mpfr = ctx.real(x).ln_gamma();
            assert!((ours.re - mpfr).abs() < 1e-35, "x = {x}");
        }
    }

    #[test]
    fn chi_symmetry_point_and_product() {
        let ctx = ctx();
        let c = chi(&ctx.complex(0.5, 0.0), &ctx).unwrap();
        assert!((c.re - 1f64).abs() < 1e-35 && c.im.clone().abs() < 1e-35);
        let one = MpComplex::one(ctx.working_prec());
        for &(re, im) in &[(0.3, 2.0), (2.0, 50.0), (-1.0, 7.5)] {
            let s = ctx.complex(re, im);
            let prod = &chi(&s, &ctx).unwrap() * &chi(&(&one - &s), &ctx).unwrap();
            assert!((&prod - &one).abs() < 4.0 * ctx.target_eps, "s = {re}+{im}i");
        }
    }
}
