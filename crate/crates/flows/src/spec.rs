use crate::Error;
use std::fmt;
use std::str::FromStr;

/// Flow type with 0-based anchors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FlowKind {
    Eruption(usize, usize, usize),
    Shear(usize, usize),
    Bulge(usize, usize),
}

/// A flow with its time. Text form is 1-based: `eruption:1,4,7@0.5`, `shear:1,3@-2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowSpec {
    pub kind: FlowKind,
    pub time: f64,
}

impl FlowSpec {
    pub fn new(kind: FlowKind, time: f64) -> Self {
        FlowSpec { kind, time }
    }

    /// Same anchors, opposite time.
    pub fn inverse(&self) -> Self {
        FlowSpec::new(self.kind, -self.time)
    }
}

impl fmt::Display for FlowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FlowKind::Eruption(a, b, c) => write!(f, "eruption:{},{},{}", a + 1, b + 1, c + 1)?,
            FlowKind::Shear(i, j) => write!(f, "shear:{},{}", i + 1, j + 1)?,
            FlowKind::Bulge(i, j) => write!(f, "bulge:{},{}", i + 1, j + 1)?,
        }
        write!(f, "@{}", self.time)
    }
}

impl FromStr for FlowSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(s.to_string());
        let (kind, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let (idx, time) = rest.split_once('@').ok_or_else(bad)?;
        let time: f64 = time.trim().parse().map_err(|_| bad())?;
        if !time.is_finite() {
            return Err(bad());
        }
        let idx = idx
            .split(',')
            .map(|x| match x.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let kind = match (kind.trim(), idx.as_slice()) {
            ("eruption", [a, b, c]) => FlowKind::Eruption(*a, *b, *c),
            ("shear", [i, j]) => FlowKind::Shear(*i, *j),
            ("bulge", [i, j]) => FlowKind::Bulge(*i, *j),
            _ => return Err(bad()),
        };
        Ok(FlowSpec { kind, time })
    }
}
