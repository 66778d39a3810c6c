use auxz_core::bounds::corollary_rhs;
use auxz_core::numerics::chi;
use auxz_core::sums::{sup_sum, sup_sum_sigma, verify_abel, zeta_sum, ExponentAlpha};
use auxz_core::{GridSpec, MpComplex, PrecisionCtx};
use proptest::prelude::*;
use rug::ops::Pow;
use rug::Float;

fn ctx() -> PrecisionCtx {
    PrecisionCtx::new(64).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sup_sum_at_zero_height_counts_integers(x in 0.3f64..400.0) {
        let ctx = ctx();
        let r = sup_sum(&ctx.real(x), &ctx.real(0.0), &ctx).unwrap();
        let expect = (2.0 * x).floor() - x.floor();
        prop_assert_eq!(r.value.to_f64(), expect);
        prop_assert_eq!(r.terms as f64, expect);
    }

    #[test]
    fn sup_sum_within_triangle_bound(x in 1.0f64..300.0, t in 0.0f64..1e5) {
        let ctx = ctx();
        let r = sup_sum(&ctx.real(x), &ctx.real(t), &ctx).unwrap();
        prop_assert!(r.value.to_f64() <= r.terms as f64 * (1.0 + 1e-12));
        prop_assert!((r.argmax_z as f64) > x && (r.argmax_z as f64) <= 2.0 * x);
    }

    #[test]
    fn abel_inequality(x in 1.0f64..300.0, sigma in 0.05f64..2.0, t in 0.0f64..1e5) {
        let rec = verify_abel(x, sigma, t, &ctx()).unwrap();
        prop_assert!(rec.pass, "{:?}", rec);
    }

    #[test]
    fn sigma_sum_never_exceeds_plain_sum(x in 1.0f64..100.0, sigma in 0.0f64..2.0, t in 0.0f64..1e4) {
        let ctx = ctx();
        let a = sup_sum_sigma(&ctx.real(x), &ctx.real(sigma), &ctx.real(t), &ctx).unwrap();
        let b = sup_sum(&ctx.real(x), &ctx.real(t), &ctx).unwrap();
        prop_assert!(a.value.to_f64() <= b.value.to_f64() * (1.0 + 1e-12));
    }

    #[test]
    fn zeta_sum_constant_between_integers(n in 0u64..500, a in 0.0f64..1.0, b in 0.0f64..1.0, sigma in -1.0f64..2.0, t in -100.0f64..100.0) {
        let ctx = ctx();
        let s = ctx.complex(sigma, t);
        let u = zeta_sum(&ctx.real(n as f64 + a), &s, &ctx).unwrap();
        let v = zeta_sum(&ctx.real(n as f64 + b), &s, &ctx).unwrap();
        prop_assert_eq!(u.value, v.value);
    }

    #[test]
    fn chi_reflection(sigma in -1.0f64..2.0, t in 1.0f64..500.0) {
        let ctx = PrecisionCtx::new(128).unwrap();
        let p = ctx.working_prec();
        let s = ctx.complex(sigma, t);
        let w = (&MpComplex::one(p) - &s).with_prec(p);
        let prod = &chi(&s, &ctx).unwrap() * &chi(&w, &ctx).unwrap();
        prop_assert!((&prod - &MpComplex::one(p)).abs_f64() < 1e-30);
    }

    #[test]
    fn alpha_inverts_the_power(x in 1.5f64..1e6, tau in 2.0f64..1e12) {
        let p = 128;
        let xf = Float::with_val(p, x);
        let tf = Float::with_val(p, tau);
        let a = ExponentAlpha::alpha_mp(&xf, &tf);
        let back = Float::with_val(p, (&tf).pow(&a));
        prop_assert!(((back - xf) / x).abs() < 1e-30);
    }

    #[test]
    fn corollary_decreasing(lo in 1.4f64..60.0, gap in 0.01f64..5.0) {
        let p = 128;
        let a = Float::with_val(p, 10f64.powf(lo));
        let b = Float::with_val(p, 10f64.powf(lo + gap));
        prop_assert!(corollary_rhs(&b).unwrap() < corollary_rhs(&a).unwrap());
    }

    #[test]
    fn grid_points_ordered_with_exact_ends(min in 0.1f64..100.0, span in 0.1f64..1e4, count in 2usize..200, log in any::<bool>()) {
        let g = if log { GridSpec::log(min, min + span, count) } else { GridSpec::linear(min, min + span, count) }.unwrap();
        let pts = g.points();
        prop_assert_eq!(pts.len(), count);
        prop_assert_eq!(pts[0], min);
        prop_assert_eq!(pts[count - 1], min + span);
        prop_assert!(pts.windows(2).all(|w| w[0] < w[1]));
    }
}
