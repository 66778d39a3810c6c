//! Deterministic sampling grids for inequality sweeps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// `count` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(min: f64, max: f64, count: usize, spacing: Spacing) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() || count == 0 || max < min || (count > 1 && max == min) {
            return Err(Error::Parameter(format!("invalid grid {min}:{max}:{count}")));
        }
        if spacing == Spacing::Log && min <= 0.0 {
            return Err(Error::Parameter(format!("log grid needs min > 0, got {min}")));
        }
        Ok(Self { min, max, count, spacing })
    }

    pub fn single(x: f64) -> Self {
        Self { min: x, max: x, count: 1, spacing: Spacing::Linear }
    }

    pub fn linear(min: f64, max: f64, count: usize) -> Result<Self> {
        Self::new(min, max, count, Spacing::Linear)
    }

    pub fn log(min: f64, max: f64, count: usize) -> Result<Self> {
        Self::new(min, max, count, Spacing::Log)
    }

    /// Grid points; the first and last equal `min` and `max` exactly.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k == 0 {
                    return self.min;
                }
                if k == self.count - 1 {
                    return self.max;
                }
                let f = k as f64 / n;
                match self.spacing {
                    Spacing::Linear => self.min + f * (self.max - self.min),
                    Spacing::Log => (self.min.ln() + f * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.count == 1 {
            return write!(f, "{}", self.min);
        }
        write!(f, "{}:{}:{}", self.min, self.max, self.count)?;
        if self.spacing == Spacing::Log {
            f.write_str(":log")?;
        }
        Ok(())
    }
}

/// Parses `x`, `min:max:count` or `min:max:count:log`.
impl FromStr for GridSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| -> Result<f64> {
            p.trim().parse::<f64>().map_err(|_| Error::Parameter(format!("bad number '{p}' in grid '{s}'")))
        };
        match parts.as_slice() {
            [x] => Ok(Self::single(num(x)?)),
            [a, b, n] | [a, b, n, _] => {
                let count = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parameter(format!("bad count '{n}' in grid '{s}'")))?;
                let spacing = match parts.get(3).map(|x| x.trim()) {
                    None | Some("linear") | Some("lin") => Spacing::Linear,
                    Some("log") => Spacing::Log,
                    Some(other) => return Err(Error::Parameter(format!("unknown spacing '{other}'"))),
                };
                Self::new(num(a)?, num(b)?, count, spacing)
            }
            _ => Err(Error::Parameter(format!("cannot parse grid '{s}'"))),
        }
    }
}
