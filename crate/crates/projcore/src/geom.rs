use crate::error::{Error, Result};
use crate::linalg::{self, V3};
use crate::tol::tol;

fn canonical(v: [f64; 3]) -> Result<[f64; 3]> {
    if !v.iter().all(|x| x.is_finite()) {
        return Err(Error::DegenerateInput("non-finite coordinate".into()));
    }
    let n = linalg::norm(&v);
    if n == 0.0 {
        return Err(Error::DegenerateInput("zero vector".into()));
    }
    // already-unit vectors are left alone so canonicalization is idempotent
    let mut u = if (n - 1.0).abs() <= 4.0 * f64::EPSILON {
        v
    } else {
        linalg::scale(&v, 1.0 / n)
    };
    if let Some(last) = u.iter().rev().find(|x| **x != 0.0) {
        if *last < 0.0 {
            u = linalg::scale(&u, -1.0);
        }
    }
    Ok(u)
}

/// Distance between two unit representatives, up to sign.
fn rep_distance(a: &V3<f64>, b: &V3<f64>) -> f64 {
    let d1 = linalg::norm(&linalg::sub(a, b));
    let d2 = linalg::norm(&linalg::add(a, b));
    d1.min(d2)
}

/// A point of RP², stored as its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjPoint {
    v: [f64; 3],
}

/// A line of RP², stored as a canonical covector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjLine {
    v: [f64; 3],
}

impl ProjPoint {
    pub fn new(v: [f64; 3]) -> Result<Self> {
        Ok(ProjPoint { v: canonical(v)? })
    }
    pub fn coords(&self) -> [f64; 3] {
        self.v
    }
    pub fn approx_eq(&self, other: &ProjPoint, eps: f64) -> bool {
        rep_distance(&self.v, &other.v) <= eps
    }
    /// Projective equality: `|1 − |⟨u, v⟩|| < ε_eq` on canonical representatives.
    pub fn same(&self, other: &ProjPoint) -> bool {
        (1.0 - linalg::dot(&self.v, &other.v).abs()).abs() < tol().eq
    }
}

impl ProjLine {
    pub fn new(v: [f64; 3]) -> Result<Self> {
        Ok(ProjLine { v: canonical(v)? })
    }
    pub fn coords(&self) -> [f64; 3] {
        self.v
    }
    /// The pairing `l(p)` of canonical representatives.
    pub fn eval(&self, p: &ProjPoint) -> f64 {
        linalg::dot(&self.v, &p.v)
    }
    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).abs() <= tol().eq
    }
    pub fn approx_eq(&self, other: &ProjLine, eps: f64) -> bool {
        rep_distance(&self.v, &other.v) <= eps
    }
    pub fn same(&self, other: &ProjLine) -> bool {
        (1.0 - linalg::dot(&self.v, &other.v).abs()).abs() < tol().eq
    }
}

/// The line through two distinct points.
pub fn join(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    if p.same(q) {
        return Err(Error::DegenerateInput("join of coincident points".into()));
    }
    let c = linalg::cross(&p.v, &q.v);
    if linalg::norm(&c) <= tol().sing {
        return Err(Error::DegenerateInput("join of coincident points".into()));
    }
    ProjLine::new(c)
}

/// The intersection of two distinct lines.
pub fn meet(l: &ProjLine, m: &ProjLine) -> Result<ProjPoint> {
    if l.same(m) {
        return Err(Error::DegenerateInput("meet of coincident lines".into()));
    }
    let c = linalg::cross(&l.v, &m.v);
    if linalg::norm(&c) <= tol().sing {
        return Err(Error::DegenerateInput("meet of coincident lines".into()));
    }
    ProjPoint::new(c)
}

/// A point together with a line through it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Flag {
    pub p: ProjPoint,
    pub l: ProjLine,
}

impl Flag {
    pub fn new(p: ProjPoint, l: ProjLine) -> Result<Self> {
        let r = l.eval(&p);
        if r.abs() > tol().eq {
            return Err(Error::NotIncident(r.abs()));
        }
        Ok(Flag { p, l })
    }

    pub fn from_coords(p: [f64; 3], l: [f64; 3]) -> Result<Self> {
        Flag::new(ProjPoint::new(p)?, ProjLine::new(l)?)
    }

    /// Transverse means neither point lies on the other flag's line.
    pub fn transverse_to(&self, other: &Flag) -> bool {
        let e = tol().eq;
        self.l.eval(&other.p).abs() > e && other.l.eval(&self.p).abs() > e
    }

    pub fn approx_eq(&self, other: &Flag, eps: f64) -> bool {
        self.p.approx_eq(&other.p, eps) && self.l.approx_eq(&other.l, eps)
    }
}
