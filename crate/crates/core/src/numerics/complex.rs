use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

/// Complex number with MPFR real and imaginary parts of equal precision.
#[derive(Debug, Clone, PartialEq)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Rounds both parts to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self { re: -self.im.clone(), im: self.re.clone() }
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Self { re: Float::with_val(self.prec(), &self.re / &d), im: -Float::with_val(self.prec(), &self.im / &d) }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self { re: c * &m, im: s * m }
    }

    /// Principal logarithm, `arg` in `(-pi, pi]`.
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.hypot_ref(&self.im));
        Self { re: r.ln(), im: self.arg() }
    }

    /// `self^w` on the principal branch.
    pub fn pow(&self, w: &MpComplex) -> Self {
        (w * &self.ln()).exp()
    }

    /// `exp(i pi z)`.
    pub fn exp_i_pi(&self) -> Self {
        let pi = Float::with_val(self.prec(), Constant::Pi);
        self.scale(&pi).mul_i().exp()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(
            f,
            "{} {} {}i",
            self.re.to_string_radix(10, Some(digits)),
            if self.im.is_sign_negative() { "-" } else { "+" },
            Float::with_val(self.im.prec(), self.im.abs_ref()).to_string_radix(10, Some(digits))
        )
    }
}

impl Add<&MpComplex> for &MpComplex {
    type Output = MpComplex;
    fn add(self, o: &MpComplex) -> MpComplex {
        let p = self.prec().max(o.prec());
        MpComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl Sub<&MpComplex> for &MpComplex {
    type Output = MpComplex;
    fn sub(self, o: &MpComplex) -> MpComplex {
        let p = self.prec().max(o.prec());
        MpComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl Mul<&MpComplex> for &MpComplex {
    type Output = MpComplex;
    fn mul(self, o: &MpComplex) -> MpComplex {
        let p = self.prec().max(o.prec());
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        MpComplex { re: ac - bd, im: ad + bc }
    }
}

impl Div<&MpComplex> for &MpComplex {
    type Output = MpComplex;
    fn div(self, o: &MpComplex) -> MpComplex {
        self * &o.recip()
    }
}

impl Neg for MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        MpComplex { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MpComplex> for MpComplex {
            type Output = MpComplex;
            fn $m(self, o: MpComplex) -> MpComplex {
                (&self).$m(&o)
            }
        }
        impl $tr<&MpComplex> for MpComplex {
            type Output = MpComplex;
            fn $m(self, o: &MpComplex) -> MpComplex {
                (&self).$m(o)
            }
        }
        impl $tr<MpComplex> for &MpComplex {
            type Output = MpComplex;
            fn $m(self, o: MpComplex) -> MpComplex {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
