//! Quadrature of the defining integral of R(s),
//!
//! `R(s) = int_{0 \ 1} x^-s e^{pi i x^2} / (e^{pi i x} - e^{-pi i x}) dx`,
//!
//! taken along the slope-1 line through the real point `c`, traversed from
//! upper right to lower left. Moving the line from `1/2` across the poles
//! `x = 1, ..., N` picks up exactly `sum_{n <= N} n^-s`, so the line is
//! placed at `N + 1/2` next to the saddle point `sqrt(t / 2 pi)`.

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Approx, MpComplex, PrecisionCtx};
use crate::sums::zeta_sum_terms;

/// Integration line and trapezoid parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    /// Real point where the slope-1 line crosses the axis.
    pub crossing: f64,
    /// Truncation `U` of the line parameter `u in [-U, U]`.
    pub half_length: f64,
    /// Number of trapezoid intervals on `[-U, U]` (rounded up to even).
    pub nodes: usize,
    /// Residue terms `sum_{n <= N} n^-s` added to the line integral.
    pub base_terms: u64,
}

impl ContourSpec {
    pub fn validate(&self) -> Result<()> {
        let n = self.base_terms as f64;
        if !(self.crossing > n && self.crossing < n + 1.0) {
            return Err(Error::Parameter(format!(
                "crossing {} must lie strictly between N = {} and N + 1",
                self.crossing, self.base_terms
            )));
        }
        if !(self.half_length > 0.0) || self.nodes < 2 {
            return Err(Error::Parameter("contour needs half_length > 0 and at least 2 nodes".into()));
        }
        Ok(())
    }

    /// Line through `N + 1/2` with `N = floor(sqrt(t / 2 pi))`.
    pub fn auto(t: f64, ctx: &PrecisionCtx) -> Self {
        let tau = t.max(0.0) / std::f64::consts::TAU;
        let n = tau.sqrt().floor() as u64;
        let (u, h) = default_geometry(ctx);
        Self { crossing: n as f64 + 0.5, half_length: u, nodes: (2.0 * u / h).ceil() as usize, base_terms: n }
    }

    /// Line through `N + 1/2` for an explicit `N`.
    pub fn through(n: u64, ctx: &PrecisionCtx) -> Self {
        let (u, h) = default_geometry(ctx);
        Self { crossing: n as f64 + 0.5, half_length: u, nodes: (2.0 * u / h).ceil() as usize, base_terms: n }
    }
}

/// Truncation length and final step for a target accuracy.
fn default_geometry(ctx: &PrecisionCtx) -> (f64, f64) {
    let ln_inv = (10.0 / ctx.target_eps).ln();
    let u = (ln_inv / std::f64::consts::PI).sqrt() + 1.5;
    // poles of the integrand sit 1/(2 sqrt 2) off the line; keep 0.3 as strip half-width
    let h = 2.0 * std::f64::consts::PI * 0.3 / (ln_inv + 5.0);
    (u, h)
}

/// Per-evaluation constants.
struct Integrand {
    s: MpComplex,
    c: Float,
    omega: MpComplex,
    pi_i: MpComplex,
}

impl Integrand {
    fn new(s: &MpComplex, crossing: f64, prec: u32) -> Self {
        let half_sqrt2 = Float::with_val(prec, 2).sqrt() / 2u32;
        let pi = Float::with_val(prec, rug::float::Constant::Pi);
        Self {
            s: s.with_prec(prec),
            c: Float::with_val(prec, crossing),
            omega: MpComplex::new(half_sqrt2.clone(), half_sqrt2),
            pi_i: MpComplex::new(Float::new(prec), pi),
        }
    }

    /// `f(x(u)) x'(u)` at `x(u) = c + u e^{i pi/4}`.
    fn at(&self, u: &Float) -> MpComplex {
        let x = &MpComplex::from_real(self.c.clone()) + &self.omega.scale(u);
        let x2 = &x * &x;
        let h = &(&self.pi_i * &x2) - &(&self.s * &x.ln());
        let num = h.exp();
        let w = (&self.pi_i * &x).exp();
        let den = &w - &w.recip();
        &(&num / &den) * &self.omega
    }
}

/// Trapezoid sum of the line integral with refinement by step halving.
/// Returns `int_line` in the upper-right to lower-left direction.
fn line_integral(
    s: &MpComplex,
    crossing: f64,
    half_length: f64,
    intervals: usize,
    adaptive: bool,
    ctx: &PrecisionCtx,
) -> Result<Approx<MpComplex>> {
    let p = ctx.working_prec();
    let f = Integrand::new(s, crossing, p);
    let target = ctx.target_eps;

    // grow the truncation until the integrand is negligible at both ends
    let mut u_max = half_length;
    if adaptive {
        let mut tries = 0;
        loop {
            let lo = f.at(&Float::with_val(p, -u_max)).abs_f64();
            let hi = f.at(&Float::with_val(p, u_max)).abs_f64();
            if lo.max(hi) < target * 1e-3 {
                break;
            }
            tries += 1;
            if tries > 40 {
                return Err(Error::Convergence { radius: lo.max(hi), target });
            }
            u_max += 1.0;
        }
    }
    let tail = {
        let lo = f.at(&Float::with_val(p, -u_max)).abs_f64();
        let hi = f.at(&Float::with_val(p, u_max)).abs_f64();
        lo.max(hi)
    };

    // coarse level: half the final number of intervals, scaled by any growth of U
    let final_intervals = ((intervals as f64) * u_max / half_length).ceil() as usize;
    let mut m = (final_intervals / 4).max(4); // intervals per half line at the coarsest level
    if !adaptive {
        m = (final_intervals / 2).max(1);
    }
    let mut step = Float::with_val(p, u_max) / m as u32;
    let mut sum = MpComplex::zero(p);
    let mut max_abs = 0.0f64;
    for j in -(m as i64)..=(m as i64) {
        let u = Float::with_val(p, &step * j);
        let v = f.at(&u);
        max_abs = max_abs.max(v.abs_f64());
        let v = if j.unsigned_abs() as usize == m { v.scale(&Float::with_val(p, 0.5)) } else { v };
        sum = &sum + &v;
    }
    let mut prev = sum.scale(&step);
    let mut nodes = 2 * m + 1;
    let max_levels = if adaptive { 10 } else { 1 };
    let mut diff = f64::INFINITY;
    let mut result = prev.clone();
    for level in 0..max_levels {
        // add the midpoints
        let half = Float::with_val(p, &step / 2u32);
        for j in 0..(2 * m as i64) {
            let u = Float::with_val(p, &step * (j - m as i64)) + &half;
            let v = f.at(&u);
            max_abs = max_abs.max(v.abs_f64());
            sum = &sum + &v;
        }
        nodes += 2 * m;
        step = half;
        m *= 2;
        result = sum.scale(&step);
        diff = (&result - &prev).abs_f64();
        prev = result.clone();
        if adaptive && diff < target * 0.1 && level >= 1 {
            break;
        }
    }
    let rounding = 8.0 * nodes as f64 * max_abs * step.to_f64() * ctx.ulp();
    let radius = diff + tail * 10.0 + rounding;
    // x'(u) du runs from +inf to -inf
    Ok(Approx { value: -result, radius })
}

/// R(s) with an error radius, along `contour` or the automatic line.
pub fn r_eval_approx(s: &MpComplex, ctx: &PrecisionCtx, contour: Option<&ContourSpec>) -> Result<Approx<MpComplex>> {
    if !s.is_finite() {
        return Err(Error::Domain("non-finite argument".into()));
    }
    let t = s.im.to_f64();
    let (spec, adaptive) = match contour {
        Some(c) => {
            c.validate()?;
            (*c, false)
        }
        None => (ContourSpec::auto(t, ctx), true),
    };
    let line = line_integral(s, spec.crossing, spec.half_length, spec.nodes, adaptive, ctx)?;
    let residues = zeta_sum_terms(spec.base_terms, s, ctx)?;
    Ok(Approx { value: &line.value + &residues.value, radius: line.radius + residues.radius })
}

/// R(s), failing when the estimated error exceeds `ctx.target_eps`.
pub fn r_eval(s: &MpComplex, ctx: &PrecisionCtx, contour: Option<&ContourSpec>) -> Result<MpComplex> {
    let a = r_eval_approx(s, ctx, contour)?;
    if a.radius > ctx.target_eps {
        return Err(Error::Convergence { radius: a.radius, target: ctx.target_eps });
    }
    Ok(a.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxiliary::functional_equation_residual;

    #[test]
    fn orientation_via_functional_equation() {
        let ctx = PrecisionCtx::new(128).unwrap();
        let start = std::time::Instant::now();
        let r = r_eval_approx(&ctx.complex(2.0, 10.0), &ctx, None).unwrap();
        eprintln!("R(2+10i) = {} radius {:e} in {:?}", r.value, r.radius, start.elapsed());
        let res = functional_equation_residual(&ctx.complex(2.0, 10.0), &ctx).unwrap();
        eprintln!("residual {res:e}");
        assert!(res < 1e-20);
    }
}
