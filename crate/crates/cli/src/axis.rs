use std::fmt;
use std::str::FromStr;

use auxz_core::{Error, GridSpec};

/// One sampled axis: grid specs joined by commas, such as `0:2:9` or
/// `15,30,60:480:4:log`. Points are merged, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    parts: Vec<GridSpec>,
}

impl Axis {
    pub fn values(values: &[f64]) -> Self {
        Self { parts: values.iter().map(|&v| GridSpec::single(v)).collect() }
    }

    pub fn grid(spec: GridSpec) -> Self {
        Self { parts: vec![spec] }
    }

    pub fn points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.parts.iter().flat_map(|g| g.points()).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let parts = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<GridSpec>, Error>>()?;
        if parts.is_empty() {
            return Err(Error::Parameter(format!("empty axis '{s}'")));
        }
        Ok(Self { parts })
    }
}
