//! Riemann's auxiliary function R(s), its explicit bounds, and its zeros.

mod bounds;
mod contour;
mod zeros;

pub use bounds::{
    partial_bound_rhs, r_minus_one_bound, rs_bound_cases, rs_bound_rhs, verify_partial_bound, verify_r_minus_one,
    verify_rzeta_all, verify_rzeta_bound, RsBoundCase,
};
pub use contour::{r_eval, r_eval_approx, ContourSpec};
pub use zeros::{
    find_zeros, zero_census, zero_count, zero_count_detail, zero_tolerance, RZero, Rectangle, ZeroCensus, ZeroCount,
};

use crate::error::{Error, Result};
use crate::numerics::{chi, complex_zeta, MpComplex, PrecisionCtx};

/// Residual of `zeta(s) = R(s) + chi(s) conj(R(1 - conj s))` at `s`.
pub fn functional_equation_residual(s: &MpComplex, ctx: &PrecisionCtx) -> Result<f64> {
    let p = ctx.working_prec();
    let one = MpComplex::one(p);
    let z = complex_zeta(s, ctx)?;
    let r = r_eval(s, ctx, None)?;
    let mirror = (&one - &s.conj()).with_prec(p);
    let r_mirror = r_eval(&mirror, ctx, None)?.conj();
    let res = &(&z - &r) - &(&chi(s, ctx)? * &r_mirror);
    Ok(res.abs_f64())
}

/// Checks the orientation and residue convention of the evaluator: the
/// functional equation must close, and `|R(s) - 1| < 1` far to the right.
pub fn convention_self_test(ctx: &PrecisionCtx) -> Result<()> {
    let tol = (ctx.target_eps * 1e6).max(1e-12);
    for &(sigma, t) in &[(0.7, 40.0), (1.5, 120.0)] {
        let res = functional_equation_residual(&ctx.complex(sigma, t), ctx)?;
        if !(res < tol) {
            return Err(Error::NoConvergence(format!(
                "functional equation residual {res:e} at {sigma}+{t}i exceeds {tol:e}"
            )));
        }
    }
    let s = ctx.complex(2.0, 100.0 * std::f64::consts::PI);
    let r = r_eval(&s, ctx, None)?;
    let d = (&r - &MpComplex::one(ctx.working_prec())).abs_f64();
    if !(d < 1.0) {
        return Err(Error::NoConvergence(format!("|R(s) - 1| = {d} at sigma = 2")));
    }
    Ok(())
}
