use crate::{Error, Result};
use projcore::linalg::{self, V3};
use projcore::{join, meet, tol, Flag, ProjLine, ProjPoint, Real};

/// Middle argument of a cross ratio: a point, or a line of the pencil.
#[derive(Clone, Copy, Debug)]
pub enum Arg {
    Point(ProjPoint),
    Line(ProjLine),
}

impl From<ProjPoint> for Arg {
    fn from(p: ProjPoint) -> Self {
        Arg::Point(p)
    }
}

impl From<ProjLine> for Arg {
    fn from(l: ProjLine) -> Self {
        Arg::Line(l)
    }
}

/// `l1(p3) l4(p2) / (l1(p2) l4(p3))` on raw representatives.
pub fn cross_ratio_raw<R: Real>(l1: &V3<R>, p2: &V3<R>, p3: &V3<R>, l4: &V3<R>) -> R {
    linalg::dot(l1, p3) * linalg::dot(l4, p2) / (linalg::dot(l1, p2) * linalg::dot(l4, p3))
}

/// `l1(p2) l2(p3) l3(p1) / (l1(p3) l3(p2) l2(p1))` on raw representatives.
pub fn triple_ratio_raw<R: Real>(p: [&V3<R>; 3], l: [&V3<R>; 3]) -> R {
    let e = |i: usize, j: usize| linalg::dot(l[i], p[j]);
    e(0, 1) * e(1, 2) * e(2, 0) / (e(0, 2) * e(2, 1) * e(1, 0))
}

/// The coordinate line farthest from containing `c`.
fn line_missing(c: &ProjPoint) -> ProjLine {
    let v = c.coords();
    let k = (0..3)
        .max_by(|a, b| v[*a].abs().total_cmp(&v[*b].abs()))
        .unwrap();
    let mut e = [0.0; 3];
    e[k] = 1.0;
    ProjLine::new(e).unwrap()
}

/// The coordinate point farthest from lying on `l`.
fn point_off(l: &ProjLine) -> ProjPoint {
    let v = l.coords();
    let k = (0..3)
        .max_by(|a, b| v[*a].abs().total_cmp(&v[*b].abs()))
        .unwrap();
    let mut e = [0.0; 3];
    e[k] = 1.0;
    ProjPoint::new(e).unwrap()
}

fn as_point(a: Arg, center: &ProjPoint, aux: &ProjLine) -> Result<ProjPoint> {
    match a {
        Arg::Point(p) => {
            if p.same(center) {
                return Err(Error::DegenerateInput("point at the pencil center".into()));
            }
            Ok(p)
        }
        Arg::Line(l) => {
            if l.eval(center).abs() > tol().eq {
                return Err(Error::NotConcurrent);
            }
            Ok(meet(&l, aux)?)
        }
    }
}

/// Cross ratio `C(l1, a2, a3, l4)` of four concurrent lines, where the middle
/// arguments may be given as points of the corresponding lines of the pencil.
pub fn cross_ratio(
    l1: &ProjLine,
    a2: impl Into<Arg>,
    a3: impl Into<Arg>,
    l4: &ProjLine,
) -> Result<f64> {
    let center = meet(l1, l4)?;
    let aux = line_missing(&center);
    let p2 = as_point(a2.into(), &center, &aux)?;
    let p3 = as_point(a3.into(), &center, &aux)?;
    let e = tol().eq;
    let (d1, d4) = (l1.eval(&p2), l4.eval(&p3));
    if d1.abs() <= e || d4.abs() <= e {
        return Err(Error::DegenerateInput("vanishing denominator".into()));
    }
    Ok(l1.eval(&p3) * l4.eval(&p2) / (d1 * d4))
}

/// Cross ratio of four collinear points, through the pencil at `q`.
pub fn cross_ratio_collinear_via(p: &[ProjPoint; 4], q: &ProjPoint) -> Result<f64> {
    let line = join(&p[0], &p[1])?;
    let e = tol().eq;
    if line.eval(&p[2]).abs() > e || line.eval(&p[3]).abs() > e {
        return Err(Error::NotCollinear);
    }
    if line.eval(q).abs() <= e {
        return Err(Error::DegenerateInput("auxiliary point on the line".into()));
    }
    let l1 = join(q, &p[0])?;
    let l4 = join(q, &p[3])?;
    cross_ratio(&l1, p[1], p[2], &l4)
}

/// Cross ratio of four collinear points; equals the affine expression
/// (x₃−x₁)(x₄−x₂)/((x₂−x₁)(x₄−x₃)).
pub fn cross_ratio_collinear(p: &[ProjPoint; 4]) -> Result<f64> {
    let line = join(&p[0], &p[1])?;
    cross_ratio_collinear_via(p, &point_off(&line))
}

pub fn triple_ratio(f1: &Flag, f2: &Flag, f3: &Flag) -> Result<f64> {
    if !(f1.transverse_to(f2) && f2.transverse_to(f3) && f1.transverse_to(f3)) {
        return Err(Error::NotTransverse);
    }
    let (p1, p2, p3) = (f1.p.coords(), f2.p.coords(), f3.p.coords());
    let (l1, l2, l3) = (f1.l.coords(), f2.l.coords(), f3.l.coords());
    Ok(triple_ratio_raw([&p1, &p2, &p3], [&l1, &l2, &l3]))
}
