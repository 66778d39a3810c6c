//! Verified inequality instances and their collection into reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Inequalities the checkers know how to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckTag {
    /// |R(s) - short zeta sum| against the three-case power bound.
    Rzeta,
    /// |R(s) - short zeta sum| against the refined bracket bound.
    Partial,
    /// |R(s) - 1| against 3 2^-sigma + tau^-1/2, and against 1.
    Rminus1,
    /// Long-sum Euler-Maclaurin tail bound.
    Maclaurin,
    /// Second-derivative exponential sum bound, by brute force.
    Vdc2,
    /// Third-derivative exponential sum bound, by brute force.
    Vdc3,
    /// Partial summation S_sigma <= X^-sigma S.
    Abel,
    /// |zeta(s)| >= zeta(2 sigma) / zeta(sigma).
    Lemma1,
    /// The t = 2707 constant for the rectangle [3/2, 2].
    Rect32,
    /// Boundary inequality on [3/2, 2] at a given sigma.
    S3Boundary,
    /// Main van der Corput bound dominated by its numeric corollary.
    Domination,
    /// Final inequality fixing the threshold.
    Final,
}

impl CheckTag {
    pub const ALL: [CheckTag; 12] = [
        CheckTag::Rzeta,
        CheckTag::Partial,
        CheckTag::Rminus1,
        CheckTag::Maclaurin,
        CheckTag::Vdc2,
        CheckTag::Vdc3,
        CheckTag::Abel,
        CheckTag::Lemma1,
        CheckTag::Rect32,
        CheckTag::S3Boundary,
        CheckTag::Domination,
        CheckTag::Final,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckTag::Rzeta => "rzeta",
            CheckTag::Partial => "partial",
            CheckTag::Rminus1 => "rminus1",
            CheckTag::Maclaurin => "maclaurin",
            CheckTag::Vdc2 => "vdc2",
            CheckTag::Vdc3 => "vdc3",
            CheckTag::Abel => "abel",
            CheckTag::Lemma1 => "lemma1",
            CheckTag::Rect32 => "rect32",
            CheckTag::S3Boundary => "s3-boundary",
            CheckTag::Domination => "domination",
            CheckTag::Final => "final",
        }
    }
}

impl fmt::Display for CheckTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        CheckTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown check tag '{s}'")))
    }
}

/// Safety factor between a passing margin and the evaluation error.
pub const MARGIN_FACTOR: f64 = 10.0;

/// One evaluated inequality `lhs < rhs`.
///
/// `pass` requires `margin > MARGIN_FACTOR * err`; a positive margin that
/// is not separated from the error radius is reported as a failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub tag: CheckTag,
    pub sigma: Option<f64>,
    pub t: Option<f64>,
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub err: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    /// Builds a record from both sides; the margin is formed at full precision.
    pub fn from_sides(tag: CheckTag, lhs: &Float, rhs: &Float, err: f64) -> Self {
        let prec = lhs.prec().max(rhs.prec());
        let margin = Float::with_val(prec, rhs - lhs);
        let pass = margin.is_finite() && margin > MARGIN_FACTOR * err && margin > 0;
        Self {
            tag,
            sigma: None,
            t: None,
            tau: None,
            params: BTreeMap::new(),
            lhs: lhs.to_f64(),
            rhs: rhs.to_f64(),
            margin: margin.to_f64(),
            err,
            pass,
            note: None,
        }
    }

    pub fn at(mut self, sigma: Option<f64>, t: Option<f64>) -> Self {
        self.sigma = sigma;
        self.t = t;
        self.tau = t.map(|t| t / std::f64::consts::TAU);
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = Some(tau);
        self
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Key used to order records in reports.
    pub fn sort_key(&self) -> (f64, f64, f64) {
        let t = self.t.or(self.tau.map(|x| x * std::f64::consts::TAU)).unwrap_or(0.0);
        let x = self.params.get("X").copied().unwrap_or(0.0);
        (t, self.sigma.unwrap_or(0.0), x)
    }
}

/// Orders records by `(t, sigma)` and then by the `X` parameter.
pub fn sort_records(records: &mut [CheckRecord]) {
    records.sort_by(|a, b| {
        let (ka, kb) = (a.sort_key(), b.sort_key());
        ka.0.total_cmp(&kb.0)
            .then(ka.1.total_cmp(&kb.1))
            .then(ka.2.total_cmp(&kb.2))
            .then(a.tag.cmp(&b.tag))
    });
}
