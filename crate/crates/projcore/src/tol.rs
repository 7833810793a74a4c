use crate::error::{Error, Result};
use std::sync::RwLock;

/// Every numerical threshold used by the workspace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Equality of projective objects and incidence.
    pub eq: f64,
    /// Singularity of normalized determinants.
    pub sing: f64,
    /// Minimal log-gap between eigenvalues.
    pub gap: f64,
    /// Positivity threshold for triple ratios.
    pub pos: f64,
    /// Residual allowed in closed-leaf equalities.
    pub cl: f64,
    /// Convergence of period-sampled sequences.
    pub conv: f64,
    /// Largest ratio of consecutive differences still counted as geometric decay.
    pub ratio: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eq: 1e-9,
            sing: 1e-12,
            gap: 1e-8,
            pos: 1e-12,
            cl: 1e-9,
            conv: 1e-6,
            ratio: 0.9,
        }
    }
}

impl Tolerances {
    /// Apply overrides written as `key=value` pairs separated by commas,
    /// e.g. `eq=1e-10,conv=1e-7`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::BadTolerance(item.to_string()))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::BadTolerance(item.to_string()))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::BadTolerance(item.to_string()));
            }
            let slot = match k.trim() {
                "eq" => &mut self.eq,
                "sing" => &mut self.sing,
                "gap" => &mut self.gap,
                "pos" => &mut self.pos,
                "cl" => &mut self.cl,
                "conv" => &mut self.conv,
                "ratio" => &mut self.ratio,
                _ => return Err(Error::BadTolerance(item.to_string())),
            };
            *slot = v;
        }
        Ok(self)
    }

    /// Defaults overridden by the `PROJFLOW_TOL` environment variable, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var("PROJFLOW_TOL") {
            Ok(s) => Tolerances::default().with_overrides(&s),
            Err(_) => Ok(Tolerances::default()),
        }
    }
}

static GLOBAL: RwLock<Option<Tolerances>> = RwLock::new(None);

/// Current global tolerances. Initialized lazily from the environment;
/// a malformed `PROJFLOW_TOL` falls back to the defaults here (the CLI
/// reports it as an input error before anything runs).
pub fn tol() -> Tolerances {
    if let Some(t) = *GLOBAL.read().unwrap() {
        return t;
    }
    let t = Tolerances::from_env().unwrap_or_default();
    *GLOBAL.write().unwrap() = Some(t);
    t
}

pub fn set_tolerances(t: Tolerances) {
    *GLOBAL.write().unwrap() = Some(t);
}
