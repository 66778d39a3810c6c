use std::sync::Mutex;

use rug::{Float, Integer, Rational};

use super::{Approx, MpComplex, PrecisionCtx};
use crate::error::{Error, Result};

/// `n^-s = exp(-s ln n)`.
pub fn dirichlet_term(n: u64, s: &MpComplex, ctx: &PrecisionCtx) -> Result<MpComplex> {
    if n == 0 {
        return Err(Error::Domain("dirichlet_term needs n >= 1".into()));
    }
    let p = ctx.working_prec();
    if n == 1 {
        return Ok(MpComplex::one(p));
    }
    let ln_n = Float::with_val(p, n).ln();
    Ok(MpComplex::new(-Float::with_val(p, &s.re * &ln_n), -Float::with_val(p, &s.im * &ln_n)).exp())
}

// B_{2j} for j = 0, 1, 2, ...
static BERNOULLI_EVEN: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Exact Bernoulli number `B_{2k}`, from the binomial recurrence.
pub fn bernoulli_b2k(k: usize) -> Rational {
    let mut cache = BERNOULLI_EVEN.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= k {
        let m = 2 * cache.len() as u32;
        // sum_{j=0}^{m} C(m+1, j) B_j = 0, with B_1 = -1/2 and odd B_j = 0 otherwise
        let mut acc = Rational::from(1) - Rational::from((m + 1, 2));
        for (j, b) in cache.iter().enumerate().skip(1) {
            let c = Integer::from(Integer::binomial_u(m + 1, 2 * j as u32));
            acc += Rational::from(c) * b;
        }
        let b_m = -acc / Rational::from(m + 1);
        cache.push(b_m);
    }
    cache[k].clone()
}

/// `B_{2k} / (2k)!` rounded to `prec` bits.
fn bernoulli_over_factorial(k: usize, prec: u32) -> Float {
    let b = bernoulli_b2k(k);
    let f = Integer::from(Integer::factorial(2 * k as u32));
    Float::with_val(prec, b / Rational::from(f))
}

/// Cutoff used by the automatic evaluator. With `pi N >= |s| + bits` the
/// ratio of consecutive correction terms stays below 1/4 for the first
/// `bits / 2` terms, which is more than the target needs.
fn default_cutoff(s: &MpComplex, ctx: &PrecisionCtx) -> u64 {
    let size = s.abs_f64();
    let n = ((size + ctx.working_prec() as f64) / std::f64::consts::PI).ceil() as u64 + 1;
    n.max(20)
}

/// Euler-Maclaurin evaluation of zeta(s) with explicit cutoff `n`:
/// `sum_{m<n} m^-s + n^{1-s}/(s-1) + n^-s/2 + sum_k B_2k/(2k)! (s)_{2k-1} n^{-s-2k+1}`.
/// The radius covers the first omitted correction term plus rounding.
pub fn complex_zeta_with_cutoff(s: &MpComplex, n: u64, ctx: &PrecisionCtx) -> Result<Approx<MpComplex>> {
    let p = ctx.working_prec();
    let s = s.with_prec(p);
    if s.re == 1 && s.im.is_zero() {
        return Err(Error::Pole("s = 1".into()));
    }
    if !s.is_finite() {
        return Err(Error::Domain("non-finite argument".into()));
    }
    if n < 2 {
        return Err(Error::Parameter("Euler-Maclaurin cutoff must be at least 2".into()));
    }
    let sigma = s.re.to_f64();
    let mut sum = MpComplex::zero(p);
    for m in 1..n {
        sum = &sum + &dirichlet_term(m, &s, ctx)?;
    }
    let n_pow = dirichlet_term(n, &s, ctx)?; // n^-s
    let nf = Float::with_val(p, n);
    let one = MpComplex::one(p);
    let s_minus_1 = &s - &one;
    sum = &sum + &(&n_pow.scale(&nf) / &s_minus_1);
    sum = &sum + &n_pow.scale(&Float::with_val(p, 0.5));

    // correction terms
    let inv_n2 = Float::with_val(p, 1) / Float::with_val(p, nf.square_ref());
    let mut poch = s.clone(); // (s)_{2k-1}
    let mut npow = n_pow.scale(&(Float::with_val(p, 1) / &nf)); // n^{-s-2k+1}
    let eps_w = ctx.target_eps * 1e-3;
    let mut radius = f64::INFINITY;
    let mut prev_abs = f64::INFINITY;
    let max_terms = 4 * ctx.working_prec() as usize + 64;
    for k in 1..=max_terms {
        let coef = bernoulli_over_factorial(k, p);
        let term = (&poch * &npow).scale(&coef);
        let term_abs = term.abs_f64();
        let kf = k as f64;
        // bound for the tail that starts with this term
        let shift = MpComplex::from_f64(p, 2.0 * kf - 1.0, 0.0);
        let denom = sigma + 2.0 * kf - 1.0;
        if denom > 0.0 {
            let tail = term_abs * (&s + &shift).abs_f64() / denom;
            if tail < eps_w || term_abs == 0.0 {
                radius = tail;
                break;
            }
        }
        if term_abs > prev_abs && k > 3 {
            // asymptotic series has started to diverge
            radius = prev_abs;
            break;
        }
        prev_abs = term_abs;
        sum = &sum + &term;
        let a = &s + &MpComplex::from_f64(p, 2.0 * kf - 1.0, 0.0);
        let b = &s + &MpComplex::from_f64(p, 2.0 * kf, 0.0);
        poch = &poch * &(&a * &b);
        npow = npow.scale(&inv_n2);
    }
    let growth = (n as f64).powf((-sigma).max(0.0)).max(1.0);
    radius += 8.0 * n as f64 * growth * ctx.ulp();
    Ok(Approx { value: sum, radius })
}

/// zeta(s) with the automatic cutoff and an error radius.
pub fn complex_zeta_approx(s: &MpComplex, ctx: &PrecisionCtx) -> Result<Approx<MpComplex>> {
    complex_zeta_with_cutoff(s, default_cutoff(s, ctx), ctx)
}

/// zeta(s), failing when the estimated error exceeds `ctx.target_eps`.
pub fn complex_zeta(s: &MpComplex, ctx: &PrecisionCtx) -> Result<MpComplex> {
    let a = complex_zeta_approx(s, ctx)?;
    if a.radius > ctx.target_eps {
        return Err(Error::Convergence { radius: a.radius, target: ctx.target_eps });
    }
    Ok(a.value)
}

pub fn real_zeta_approx(sigma: &Float, ctx: &PrecisionCtx) -> Result<Approx<Float>> {
    if *sigma <= 1 {
        return Err(Error::Domain(format!("real_zeta needs sigma > 1, got {}", sigma.to_f64())));
    }
    let p = ctx.working_prec();
    let s = MpComplex::from_real(Float::with_val(p, sigma));
    let a = complex_zeta_approx(&s, ctx)?;
    Ok(Approx { value: a.value.re, radius: a.radius })
}

/// zeta(sigma) for real sigma > 1.
pub fn real_zeta(sigma: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    let a = real_zeta_approx(sigma, ctx)?;
    if a.radius > ctx.target_eps {
        return Err(Error::Convergence { radius: a.radius, target: ctx.target_eps });
    }
    Ok(a.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(128).unwrap()
    }

    #[test]
    fn dirichlet_term_examples() {
        let ctx = ctx();
        let any = ctx.complex(0.3, 17.0);
        assert_eq!(dirichlet_term(1, &any, &ctx).unwrap().to_f64_pair(), (1.0, 0.0));
        assert_eq!(dirichlet_term(2, &ctx.complex(0.0, 0.0), &ctx).unwrap().to_f64_pair(), (1.0, 0.0));
        let half = dirichlet_term(4, &ctx.complex(0.5, 0.0), &ctx).unwrap();
        assert!((half.re - 0.5f64).abs() < 1e-40 && half.im.is_zero());
        assert!(dirichlet_term(0, &any, &ctx).is_err());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_b2k(0), Rational::from(1));
        assert_eq!(bernoulli_b2k(1), Rational::from((1, 6)));
        assert_eq!(bernoulli_b2k(2), Rational::from((-1, 30)));
        assert_eq!(bernoulli_b2k(6), Rational::from((-691, 2730)));
        assert_eq!(bernoulli_b2k(10), Rational::from((-174611, 330)));
        assert_eq!(bernoulli_b2k(12), Rational::from((-236364091, 2730)));
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let ctx = ctx();
        let z = real_zeta(&ctx.real(2.0), &ctx).unwrap();
        let pi = ctx.pi();
        let exact = Float::with_val(ctx.working_prec(), pi.square_ref()) / 6u32;
        assert!((z - exact).abs() < ctx.target_eps);
    }

    #[test]
    fn zeta_matches_mpfr_on_reals() {
        let ctx = ctx();
        for &x in &[1.5, 3.0, 1.1, 4.25, 10.0] {
            let ours = real_zeta(&ctx.real(x), &ctx).unwrap();
            let mpfr = Float::with_val(ctx.working_prec(), x).zeta();
            assert!((ours - mpfr).abs() < 2.0 * ctx.target_eps, "x = {x}");
        }
    }

    #[test]
    fn real_zeta_domain() {
        let ctx = ctx();
        assert!(matches!(real_zeta(&ctx.real(1.0), &ctx), Err(Error::Domain(_))));
        assert!(matches!(complex_zeta(&ctx.complex(1.0, 0.0), &ctx), Err(Error::Pole(_))));
    }

    #[test]
    fn cutoff_independence() {
        let ctx = ctx();
        for &(re, im) in &[(0.5, 14.134725141734693), (2.0, 50.0), (-0.5, 3.0), (1.0, 300.0)] {
            let s = ctx.complex(re, im);
            let n0 = default_cutoff(&s, &ctx);
            let a = complex_zeta_with_cutoff(&s, n0, &ctx).unwrap();
            let b = complex_zeta_with_cutoff(&s, n0 + 13, &ctx).unwrap();
            assert!(a.radius <= ctx.target_eps && b.radius <= ctx.target_eps);
            assert!((&a.value - &b.value).abs() < 2.0 * ctx.target_eps, "s = {re}+{im}i");
        }
    }

    #[test]
    fn near_first_zero() {
        let ctx = ctx();
        let z = complex_zeta(&ctx.complex(0.5, 14.1347251417), &ctx).unwrap();
        assert!(z.abs() < 1e-6);
        // the imaginary part of the first zero to 30 digits
        let p = ctx.working_prec();
        let gamma = Float::with_val(p, Float::parse("14.134725141734693790457251983562").unwrap());
        let s = MpComplex::new(Float::with_val(p, 0.5), gamma);
        assert!(complex_zeta(&s, &ctx).unwrap().abs() < 1e-29);
    }

    #[test]
    fn zeta_at_zero_and_negative() {
        let ctx = ctx();
        let z0 = complex_zeta(&ctx.complex(0.0, 0.0), &ctx).unwrap();
        assert!((z0.re + 0.5f64).abs() < 1e-30);
        let zm = complex_zeta(&ctx.complex(-0.5, 0.0), &ctx).unwrap();
        // zeta(-1/2), reference value from mpmath at 40 digits
        let exact = Float::with_val(ctx.working_prec(), Float::parse("-0.2078862249773545660173067253970493022263").unwrap());
        assert!((zm.re.clone() - &exact).abs() < 1e-29, "{} vs {}", zm.re, exact);
    }
}
