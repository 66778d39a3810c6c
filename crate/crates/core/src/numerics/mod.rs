//! Multiprecision arithmetic layer: precision contexts, complex numbers,
//! the reference zeta evaluator and the Gamma-factor machinery.

mod complex;
mod gamma;
mod zeta;

pub use complex::MpComplex;
pub use gamma::{chi, log_gamma};
pub use zeta::{
    bernoulli_b2k, complex_zeta, complex_zeta_approx, complex_zeta_with_cutoff, dirichlet_term,
    real_zeta, real_zeta_approx,
};

use rug::float::Constant;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Extra mantissa bits carried internally on top of the requested precision.
pub const GUARD_BITS: u32 = 32;

/// Working precision and requested absolute accuracy, threaded through
/// every evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionCtx {
    pub bits: u32,
    pub target_eps: f64,
}

impl PrecisionCtx {
    /// Context with the default target `2^-(0.9 bits)`.
    pub fn new(bits: u32) -> Result<Self> {
        let eps = 2f64.powi(-((bits as f64 * 0.9).floor() as i32).min(1000));
        Self::with_eps(bits, eps)
    }

    pub fn with_eps(bits: u32, target_eps: f64) -> Result<Self> {
        if bits < 64 {
            return Err(Error::Parameter(format!("precision must be at least 64 bits, got {bits}")));
        }
        if !(target_eps > 0.0) || !target_eps.is_finite() {
            return Err(Error::Parameter(format!("target_eps must be positive, got {target_eps}")));
        }
        Ok(Self { bits, target_eps })
    }

    /// Same context at twice the precision, with the target squared
    /// (clamped to the smallest normal f64).
    pub fn doubled(&self) -> Self {
        let eps = (self.target_eps * self.target_eps).max(f64::MIN_POSITIVE);
        Self { bits: self.bits * 2, target_eps: eps }
    }

    /// Mantissa bits used for intermediate quantities.
    pub fn working_prec(&self) -> u32 {
        self.bits + GUARD_BITS
    }

    pub fn real(&self, x: f64) -> Float {
        Float::with_val(self.working_prec(), x)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.working_prec(), Constant::Pi)
    }

    pub fn complex(&self, re: f64, im: f64) -> MpComplex {
        MpComplex::from_f64(self.working_prec(), re, im)
    }

    /// Unit roundoff at working precision.
    pub fn ulp(&self) -> f64 {
        2f64.powi(-(self.working_prec() as i32).min(1000))
    }
}

/// A value together with an estimated absolute error radius.
#[derive(Debug, Clone)]
pub struct Approx<T> {
    pub value: T,
    pub radius: f64,
}

/// A point `sigma + i t` of the upper half plane with its normalised height
/// `tau = t / 2 pi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripPoint {
    pub sigma: f64,
    pub t: f64,
    pub tau: f64,
}

impl StripPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() || !sigma.is_finite() {
            return Err(Error::Domain(format!("strip point needs finite sigma and t > 0, got ({sigma}, {t})")));
        }
        Ok(Self { sigma, t, tau: t / std::f64::consts::TAU })
    }

    pub fn s(&self, ctx: &PrecisionCtx) -> MpComplex {
        ctx.complex(self.sigma, self.t)
    }

    /// `t / 2 pi` at `prec` bits.
    pub fn tau_mp(&self, prec: u32) -> Float {
        let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
        Float::with_val(prec, self.t) / two_pi
    }
}

/// `x` as a float of `prec` bits.
pub fn real(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x)
}

/// Parses a decimal string at `prec` bits.
pub fn parse_real(prec: u32, s: &str) -> Result<Float> {
    Float::parse(s)
        .map(|p| Float::with_val(prec, p))
        .map_err(|e| Error::Parameter(format!("cannot parse '{s}' as a real: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ctx_rejects_low_precision() {
        assert!(PrecisionCtx::new(63).is_err());
        assert!(PrecisionCtx::with_eps(128, 0.0).is_err());
        let ctx = PrecisionCtx::new(128).unwrap();
        assert!(ctx.target_eps < 1e-30);
        assert_eq!(ctx.doubled().bits, 256);
    }

    #[test]
    fn strip_point_tau() {
        let p = StripPoint::new(1.0, 200.0 * std::f64::consts::PI).unwrap();
        assert!((p.tau - 100.0).abs() < 1e-12);
        let tau = p.tau_mp(256);
        let back = tau * 2u32 * Float::with_val(256, Constant::Pi);
        assert!((back - p.t).abs() < 1e-60);
        assert!(StripPoint::new(0.5, 0.0).is_err());
    }
}
