//! Finite zeta sums, the dyadic suprema S(X, t) and S_sigma(X, t), and the
//! long-sum tail bound.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::check::{CheckRecord, CheckTag};
use crate::error::{Error, Result};
use crate::numerics::{complex_zeta_approx, dirichlet_term, Approx, MpComplex, PrecisionCtx, StripPoint};

/// Largest number of terms `zeta_sum` will add.
pub const ZETA_SUM_CAP: u64 = 100_000_000;
/// Largest number of integers in `(X, 2X]` the sup-sums will scan.
pub const SUP_SUM_CAP: u64 = 10_000_000;

const CHUNK: u64 = 4096;

/// `floor(x)` as an integer, for `x >= 0`.
fn floor_u64(x: &Float) -> Result<u64> {
    if x.is_sign_negative() && !x.is_zero() {
        return Err(Error::Domain(format!("expected a nonnegative bound, got {}", x.to_f64())));
    }
    let f = Float::with_val(x.prec(), x.floor_ref());
    f.to_integer()
        .and_then(|i| i.to_u64())
        .ok_or_else(|| Error::Size { terms: u64::MAX, cap: ZETA_SUM_CAP })
}

/// `sum_{n <= count} n^-s`, summed in fixed chunks so the rounding pattern
/// does not depend on the thread count.
pub fn zeta_sum_terms(count: u64, s: &MpComplex, ctx: &PrecisionCtx) -> Result<Approx<MpComplex>> {
    if count > ZETA_SUM_CAP {
        return Err(Error::Size { terms: count, cap: ZETA_SUM_CAP });
    }
    let p = ctx.working_prec();
    let chunks: Vec<(u64, u64)> = (0..count.div_ceil(CHUNK))
        .map(|c| (c * CHUNK + 1, ((c + 1) * CHUNK).min(count)))
        .collect();
    let partials: Vec<MpComplex> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut acc = MpComplex::zero(p);
            for n in lo..=hi {
                acc = &acc + &dirichlet_term(n, s, ctx)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let value = partials.iter().fold(MpComplex::zero(p), |a, b| &a + b);
    let sigma = s.re.to_f64();
    let biggest = if sigma >= 0.0 { 1.0 } else { (count.max(1) as f64).powf(-sigma) };
    let radius = 4.0 * count as f64 * biggest * ctx.ulp();
    Ok(Approx { value, radius })
}

/// `sum_{n <= x} n^-s`; the empty sum is zero.
pub fn zeta_sum(x: &Float, s: &MpComplex, ctx: &PrecisionCtx) -> Result<Approx<MpComplex>> {
    zeta_sum_terms(floor_u64(x)?, s, ctx)
}

/// `8 tau^{1 - r sigma}`, the bound for `|zeta(s) - sum_{n <= tau^r} n^-s|`
/// when `sigma >= 1/2`, `tau > 1` and `0 < r <= 2`.
pub fn maclaurin_tail_bound(sigma: &Float, tau: &Float, r: &Float) -> Result<Float> {
    if *sigma < 0.5 || *tau <= 1 || *r <= 0 || *r > 2 {
        return Err(Error::Domain(format!(
            "tail bound needs sigma >= 1/2, tau > 1, 0 < r <= 2; got ({}, {}, {})",
            sigma.to_f64(),
            tau.to_f64(),
            r.to_f64()
        )));
    }
    let p = sigma.prec().max(tau.prec());
    let exponent = Float::with_val(p, 1) - Float::with_val(p, r * sigma);
    Ok(Float::with_val(p, tau.pow(&exponent)) * 8u32)
}

/// Evaluates both sides of the long-sum tail bound at `s`.
pub fn verify_maclaurin(s: StripPoint, r: f64, ctx: &PrecisionCtx) -> Result<CheckRecord> {
    let p = ctx.working_prec();
    let sigma = ctx.real(s.sigma);
    let tau = s.tau_mp(p);
    let rf = ctx.real(r);
    let rhs = maclaurin_tail_bound(&sigma, &tau, &rf)?;
    let x = Float::with_val(p, tau.pow(&rf));
    let z = s.s(ctx);
    let zeta = complex_zeta_approx(&z, ctx)?;
    let partial = zeta_sum(&x, &z, ctx)?;
    let lhs = (&zeta.value - &partial.value).abs();
    let err = zeta.radius + partial.radius;
    Ok(CheckRecord::from_sides(CheckTag::Maclaurin, &lhs, &rhs, err)
        .at(Some(s.sigma), Some(s.t))
        .param("r", r))
}

/// Brute-force supremum over the integer endpoints of a dyadic block.
#[derive(Debug, Clone, PartialEq)]
pub struct SupSumResult {
    pub value: Float,
    /// Endpoint `Z` achieving the supremum; smallest such `Z` on ties.
    pub argmax_z: u64,
    /// Number of integers in `(X, 2X]`.
    pub terms: u64,
}

/// The exponent `alpha` with `X = tau^alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentAlpha {
    pub alpha: f64,
}

impl ExponentAlpha {
    pub fn of(x: &Float, tau: &Float) -> Result<Self> {
        if *x <= 0 || *tau <= 1 {
            return Err(Error::Domain("alpha needs X > 0 and tau > 1".into()));
        }
        let p = x.prec().max(tau.prec());
        let a = Float::with_val(p, x.ln_ref()) / Float::with_val(p, tau.ln_ref());
        Ok(Self { alpha: a.to_f64() })
    }

    pub fn alpha_mp(x: &Float, tau: &Float) -> Float {
        let p = x.prec().max(tau.prec());
        Float::with_val(p, x.ln_ref()) / Float::with_val(p, tau.ln_ref())
    }
}

fn block_range(x: &Float) -> Result<(u64, u64)> {
    if *x <= 0 {
        return Err(Error::Domain(format!("sup-sum needs X > 0, got {}", x.to_f64())));
    }
    let lo = floor_u64(x)? + 1;
    let two_x = Float::with_val(x.prec(), x * 2u32);
    let hi = floor_u64(&two_x)?;
    let terms = (hi + 1).saturating_sub(lo);
    if terms > SUP_SUM_CAP {
        return Err(Error::Size { terms, cap: SUP_SUM_CAP });
    }
    Ok((lo, hi))
}

fn sup_over_block(x: &Float, s: &MpComplex, ctx: &PrecisionCtx) -> Result<SupSumResult> {
    let (lo, hi) = block_range(x)?;
    let p = ctx.working_prec();
    let mut acc = MpComplex::zero(p);
    let mut best = Float::new(p);
    let mut argmax_z = 0;
    for n in lo..=hi {
        acc = &acc + &dirichlet_term(n, s, ctx)?;
        let a = acc.abs();
        if argmax_z == 0 || a > best {
            best = a;
            argmax_z = n;
        }
    }
    Ok(SupSumResult { value: best, argmax_z, terms: (hi + 1).saturating_sub(lo) })
}

/// `S(X, t) = sup_{X < Z <= 2X} |sum_{X < n <= Z} n^{-it}|`. The partial
/// sum is constant between integers, so only integer `Z` are visited.
pub fn sup_sum(x: &Float, t: &Float, ctx: &PrecisionCtx) -> Result<SupSumResult> {
    let p = ctx.working_prec();
    let s = MpComplex::new(Float::new(p), Float::with_val(p, t));
    sup_over_block(x, &s, ctx)
}

/// `S_sigma(X, t)`, as `sup_sum` with terms `n^{-sigma-it}`.
pub fn sup_sum_sigma(x: &Float, sigma: &Float, t: &Float, ctx: &PrecisionCtx) -> Result<SupSumResult> {
    let p = ctx.working_prec();
    let s = MpComplex::new(Float::with_val(p, sigma), Float::with_val(p, t));
    sup_over_block(x, &s, ctx)
}

/// Checks `S_sigma(X, t) <= X^-sigma S(X, t)`.
pub fn verify_abel(x: f64, sigma: f64, t: f64, ctx: &PrecisionCtx) -> Result<CheckRecord> {
    let p = ctx.working_prec();
    let xf = ctx.real(x);
    let sf = ctx.real(sigma);
    let tf = ctx.real(t);
    let lhs = sup_sum_sigma(&xf, &sf, &tf, ctx)?;
    let plain = sup_sum(&xf, &tf, ctx)?;
    let scale = Float::with_val(p, xf.pow(&Float::with_val(p, -&sf)));
    let rhs = plain.value * scale;
    let err = 8.0 * (lhs.terms as f64 + 1.0) * ctx.ulp();
    // equality is possible when the block holds a single integer
    let mut rec = CheckRecord::from_sides(CheckTag::Abel, &lhs.value, &rhs, err)
        .at(Some(sigma), Some(t))
        .param("X", x);
    if lhs.terms <= 1 && rec.margin >= 0.0 {
        rec.pass = true;
        rec = rec.note("single-term block: non-strict");
    }
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(128).unwrap()
    }

    #[test]
    fn zeta_sum_examples() {
        let ctx = ctx();
        let any = ctx.complex(0.7, 3.0);
        assert!(zeta_sum(&ctx.real(0.9), &any, &ctx).unwrap().value.abs() == 0);
        let two = zeta_sum(&ctx.real(2.0), &ctx.complex(0.0, 0.0), &ctx).unwrap().value;
        assert_eq!(two.to_f64_pair(), (2.0, 0.0));
        let h = zeta_sum(&ctx.real(3.7), &ctx.complex(1.0, 0.0), &ctx).unwrap().value;
        let exact = Float::with_val(ctx.working_prec(), 11) / 6u32;
        assert!((h.re - exact).abs() < 1e-40);
    }

    #[test]
    fn zeta_sum_cap() {
        let ctx = ctx();
        let s = ctx.complex(1.0, 0.0);
        assert!(matches!(zeta_sum_terms(ZETA_SUM_CAP + 1, &s, &ctx), Err(Error::Size { .. })));
        assert!(zeta_sum(&ctx.real(-1.0), &s, &ctx).is_err());
    }

    #[test]
    fn zeta_sum_chunking_is_exact_across_boundaries() {
        let ctx = ctx();
        let s = ctx.complex(0.5, 40.0);
        let chunked = zeta_sum_terms(CHUNK + 17, &s, &ctx).unwrap().value;
        let mut direct = MpComplex::zero(ctx.working_prec());
        for n in 1..=CHUNK + 17 {
            direct = &direct + &dirichlet_term(n, &s, &ctx).unwrap();
        }
        assert!((&chunked - &direct).abs() < 1e-35);
    }

    #[test]
    fn maclaurin_bound_examples() {
        let f = |x: f64| Float::with_val(128, x);
        assert_eq!(maclaurin_tail_bound(&f(0.5), &f(4.0), &f(2.0)).unwrap(), 8);
        let b = maclaurin_tail_bound(&f(1.0), &f(100.0), &f(2.0)).unwrap();
        assert!((b - Float::with_val(128, 8) / 100u32).abs() < 1e-35);
        // 8 * 430.83^(1/4), evaluated independently in f64
        let b = maclaurin_tail_bound(&f(1.5), &f(430.83), &f(0.5)).unwrap();
        assert!((b.to_f64() - 8.0 * 430.83f64.powf(0.25)).abs() < 1e-12);
        assert!((b.to_f64() - 36.45).abs() < 0.01);
        assert!(maclaurin_tail_bound(&f(0.4), &f(4.0), &f(1.0)).is_err());
        assert!(maclaurin_tail_bound(&f(1.0), &f(1.0), &f(1.0)).is_err());
        assert!(maclaurin_tail_bound(&f(1.0), &f(4.0), &f(2.5)).is_err());
    }

    #[test]
    fn verify_maclaurin_examples() {
        let ctx = ctx();
        let pi = std::f64::consts::PI;
        for (sigma, t, r) in [(1.0, 200.0 * pi, 2.0), (0.5, 4.0 * pi * 1.01, 1.0), (1.0, 2.0 * pi * 1e4, 0.5)] {
            let rec = verify_maclaurin(StripPoint::new(sigma, t).unwrap(), r, &ctx).unwrap();
            assert!(rec.pass, "{rec:?}");
        }
    }

    #[test]
    fn sup_sum_examples() {
        let ctx = ctx();
        // (1.2, 2.4] holds the single integer 2
        let one = sup_sum(&ctx.real(1.2), &ctx.real(123.0), &ctx).unwrap();
        assert!((one.value - 1f64).abs() < 1e-40);
        assert_eq!((one.argmax_z, one.terms), (2, 1));
        let flat = sup_sum(&ctx.real(3.5), &ctx.real(0.0), &ctx).unwrap();
        assert_eq!(flat.value, 4);
        assert_eq!(flat.argmax_z, 7);
        let single = sup_sum_sigma(&ctx.real(1.2), &ctx.real(1.0), &ctx.real(0.0), &ctx).unwrap();
        assert!((single.value - 0.5f64).abs() < 1e-40);
        let h = sup_sum_sigma(&ctx.real(3.5), &ctx.real(1.0), &ctx.real(0.0), &ctx).unwrap();
        let exact = Float::with_val(ctx.working_prec(), 319) / 420u32;
        assert!((h.value - exact).abs() < 1e-40);
    }

    #[test]
    fn sup_sum_matches_f64_brute_force() {
        // independent oracle: running partial sums in f64
        let ctx = ctx();
        let t = 1e4f64;
        let mut re = 0.0;
        let mut im = 0.0;
        let mut best = 0.0f64;
        let mut arg = 0;
        for n in 101..=200u64 {
            let ph = -t * (n as f64).ln();
            re += ph.cos();
            im += ph.sin();
            let a = re.hypot(im);
            if a > best {
                best = a;
                arg = n;
            }
        }
        let r = sup_sum(&ctx.real(100.0), &ctx.real(t), &ctx).unwrap();
        assert!((r.value.to_f64() - best).abs() < 1e-9);
        assert_eq!(r.argmax_z, arg);
        assert_eq!(r.terms, 100);
        let rs = sup_sum_sigma(&ctx.real(100.0), &ctx.real(1.0), &ctx.real(t), &ctx).unwrap();
        assert!(rs.value.to_f64() <= r.value.to_f64() / 100.0);
    }

    #[test]
    fn fractional_endpoints_do_not_change_the_supremum() {
        // |partial sum| is constant on [n, n+1); sampling fractional Z agrees
        let ctx = ctx();
        let t = 777.0f64;
        let r = sup_sum(&ctx.real(20.0), &ctx.real(t), &ctx).unwrap();
        let mut best = 0.0f64;
        for k in 0..400 {
            let z = 20.0 + 0.05 * (k as f64 + 0.5);
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for n in 21..=(z.floor() as u64) {
                let ph = -t * (n as f64).ln();
                re += ph.cos();
                im += ph.sin();
            }
            best = best.max(re.hypot(im));
        }
        assert!((r.value.to_f64() - best).abs() < 1e-10);
    }

    #[test]
    fn abel_inequality_sample() {
        let ctx = ctx();
        for &(x, sigma, t) in &[(10.0, 1.0, 1e3), (37.5, 0.5, 2e4), (100.0, 2.0, 1e4)] {
            assert!(verify_abel(x, sigma, t, &ctx).unwrap().pass);
        }
    }

    #[test]
    fn alpha_of_block() {
        let tau = Float::with_val(128, 100.0);
        let a = ExponentAlpha::of(&Float::with_val(128, 10.0), &tau).unwrap();
        assert!((a.alpha - 0.5).abs() < 1e-15);
        assert!(ExponentAlpha::of(&Float::with_val(128, 10.0), &Float::with_val(128, 1.0)).is_err());
    }
}
