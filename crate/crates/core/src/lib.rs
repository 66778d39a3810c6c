//! Multiprecision evaluation of Riemann's auxiliary function R(s), the zeta
//! sums that approximate it, and the explicit inequalities that keep R(s)
//! away from zero in the strip 1 <= sigma <= 2.

pub mod auxiliary;
pub mod bounds;
pub mod check;
pub mod error;
pub mod grid;
pub mod numerics;
pub mod sums;

pub use check::{CheckRecord, CheckTag};
pub use error::{Error, Result};
pub use grid::{GridSpec, Spacing};
pub use numerics::{Approx, MpComplex, PrecisionCtx, StripPoint};
