use crate::bd::{pants_coords, require_valid, BDCoords};
use crate::complex::SurfaceComplex;
use crate::engine::{converge, Enumeration, PantsFlow};
use crate::fan::{Elem, FanFrame};
use crate::{Error, Result};
use projcore::tol;
use std::fmt;
use std::str::FromStr;

/// Flows on the coordinate polytope. Curve and pants indices are 0-based;
/// the text form is 1-based (`shear:C1`, `eruption:P2`, …).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceFlow {
    Shear(usize),
    Bulge(usize),
    Eruption(usize),
    InternalBulge(usize),
}

impl fmt::Display for SurfaceFlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SurfaceFlow::Shear(c) => write!(f, "shear:C{}", c + 1),
            SurfaceFlow::Bulge(c) => write!(f, "bulge:C{}", c + 1),
            SurfaceFlow::Eruption(p) => write!(f, "eruption:P{}", p + 1),
            SurfaceFlow::InternalBulge(p) => write!(f, "internal_bulge:P{}", p + 1),
        }
    }
}

impl FromStr for SurfaceFlow {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("bad surface flow '{s}'"));
        let (kind, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let arg = arg.trim();
        let (prefix, num) = arg.split_at(arg.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let n: usize = num.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let want = match kind {
            "shear" | "bulge" => ["C", "c", ""],
            "eruption" | "internal_bulge" => ["P", "p", ""],
            _ => return Err(bad()),
        };
        if !want.contains(&prefix) {
            return Err(bad());
        }
        Ok(match kind {
            "shear" => SurfaceFlow::Shear(n - 1),
            "bulge" => SurfaceFlow::Bulge(n - 1),
            "eruption" => SurfaceFlow::Eruption(n - 1),
            _ => SurfaceFlow::InternalBulge(n - 1),
        })
    }
}

/// Fan limit on one cuff, with the Cauchy check for the iterated version.
fn fan_limit(frame: &FanFrame, e: Elem, t: f64) -> Result<(f64, f64)> {
    if e == Elem::Eruption {
        return frame.closed_form(e, t);
    }
    let tl = tol();
    let seq = frame.iterate(e, t, 64, 1e-13)?;
    let n = seq.len();
    let d = |i: usize| {
        (seq[i].0 - seq[i - 1].0)
            .abs()
            .max((seq[i].1 - seq[i - 1].1).abs())
    };
    if n < 3 {
        return Ok(seq[n - 1]);
    }
    let (last, prev) = (d(n - 1), d(n - 2));
    if last >= tl.conv || (prev > 1e-12 && last > tl.ratio * prev) {
        return Err(Error::ConvergenceFailure(format!(
            "period differences {prev:e} then {last:e} after {n} periods"
        )));
    }
    Ok(seq[n - 1])
}

pub fn flow_coords(
    s: &SurfaceComplex,
    c: &BDCoords,
    flow: SurfaceFlow,
    t: f64,
) -> Result<BDCoords> {
    require_valid(s, c)?;
    let mut out = c.clone();
    if t == 0.0 {
        return Ok(out);
    }
    let (p, pf) = match flow {
        SurfaceFlow::Shear(k) | SurfaceFlow::Bulge(k) => {
            if k >= s.n_closed() {
                return Err(Error::Invalid(format!("no curve {k}")));
            }
            let sgn = if matches!(flow, SurfaceFlow::Shear(_)) {
                -1.0
            } else {
                1.0
            };
            out.sigma_x[k] += sgn * t;
            out.sigma_y[k] -= t;
            return Ok(out);
        }
        SurfaceFlow::Eruption(p) => (p, PantsFlow::Eruption(p)),
        SurfaceFlow::InternalBulge(p) => (p, PantsFlow::InternalBulge(p)),
    };
    if p >= s.n_pants() {
        return Err(Error::Invalid(format!("no pants {p}")));
    }
    let pc = pants_coords(s, c, p);
    let mut done = Vec::new();
    for a in 0..3 {
        let curve = s.curve_at(p, a);
        if done.contains(&curve) {
            continue;
        }
        done.push(curve);
        let cv = s.curves()[curve];
        let pair = if cv.self_glued() {
            let rep = converge(s, c, pf, t, 8, Enumeration::Standard)?;
            let r = rep.into_iter().find(|r| r.curve == curve).unwrap();
            if !r.cauchy {
                return Err(Error::ConvergenceFailure(format!(
                    "curve {curve}: last difference {:e}",
                    r.last_diff
                )));
            }
            r.limit
        } else {
            let swapped = cv.a != (p, a);
            let sig = (c.sigma_x[curve], c.sigma_y[curve]);
            let sig = if swapped { (sig.1, sig.0) } else { sig };
            let v = fan_limit(&FanFrame::new(&pc, a, sig)?, pf.elem(), t)?;
            if swapped {
                (v.1, v.0)
            } else {
                v
            }
        };
        out.sigma_x[curve] = pair.0;
        out.sigma_y[curve] = pair.1;
    }
    match pf {
        PantsFlow::Eruption(_) => {
            out.tau[s.delta(p)] += t;
            out.tau[s.delta_prime(p)] -= t;
        }
        _ => {
            for k in 0..3 {
                let e = s.q_edge(p, k);
                out.sigma_x[e] -= t;
                out.sigma_y[e] += t;
            }
        }
    }
    require_valid(s, &out)?;
    Ok(out)
}
