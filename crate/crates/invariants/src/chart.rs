use crate::{Error, Result};
use projcore::linalg::{self, V3};
use projcore::{Flag, ProjLine, ProjPoint};

/// An affine chart of RP²: the complement of a chosen line, with
/// orthonormal coordinates on the plane `c(x) = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineChart {
    rows: [V3<f64>; 3],
}

impl Default for AffineChart {
    fn default() -> Self {
        AffineChart {
            rows: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }
}

impl AffineChart {
    /// Chart whose line at infinity is `c`. The standard line `z = 0`
    /// gives the usual coordinates `(x/z, y/z)`.
    pub fn from_line(c: &ProjLine) -> Self {
        let n = c.coords();
        if n[0] == 0.0 && n[1] == 0.0 {
            return AffineChart::default();
        }
        // complete n to an orthonormal frame, starting from the coordinate
        // axis least aligned with it
        let k = (0..3)
            .min_by(|a, b| n[*a].abs().total_cmp(&n[*b].abs()))
            .unwrap();
        let mut e = [0.0; 3];
        e[k] = 1.0;
        let r0 = linalg::normalize(&linalg::sub(&e, &linalg::scale(&n, linalg::dot(&e, &n))));
        let r1 = linalg::cross(&n, &r0);
        AffineChart { rows: [r0, r1, n] }
    }

    pub fn line(&self) -> ProjLine {
        ProjLine::new(self.rows[2]).unwrap()
    }

    /// Affine coordinates, or `None` within `eps` of the line at infinity.
    pub fn to_affine(&self, p: &ProjPoint, eps: f64) -> Option<[f64; 2]> {
        let v = p.coords();
        let w = linalg::dot(&self.rows[2], &v);
        if w.abs() <= eps {
            return None;
        }
        Some([
            linalg::dot(&self.rows[0], &v) / w,
            linalg::dot(&self.rows[1], &v) / w,
        ])
    }

    pub fn from_affine(&self, xy: [f64; 2]) -> ProjPoint {
        let r = &self.rows;
        let v = linalg::add(
            &linalg::add(&linalg::scale(&r[0], xy[0]), &linalg::scale(&r[1], xy[1])),
            &r[2],
        );
        ProjPoint::new(v).unwrap()
    }
}

/// A line disjoint from the closed outer polygon of a positive flag tuple.
///
/// Lifts the points into one half-space, orients each line positively on
/// the other points, and sums the lines: the sum is positive on every
/// point and on every outer vertex.
pub fn positive_chart(flags: &[Flag]) -> Result<ProjLine> {
    let n = flags.len();
    if n < 3 {
        return Err(Error::ChartFailure);
    }
    let sgn = |x: f64| if x < 0.0 { -1.0 } else { 1.0 };
    let mut p: Vec<V3<f64>> = flags.iter().map(|f| f.p.coords()).collect();
    for j in 1..n {
        let s = sgn(flags[0].l.eval(&flags[j].p));
        p[j] = linalg::scale(&p[j], s);
    }
    let l1 = flags[1].l.coords();
    let s = sgn(linalg::dot(&l1, &p[0])) * sgn(linalg::dot(&l1, &p[2]));
    p[0] = linalg::scale(&p[0], s);
    let mut c = [0.0; 3];
    for k in 0..n {
        let l = flags[k].l.coords();
        let l = linalg::scale(&l, sgn(linalg::dot(&l, &p[(k + 1) % n])));
        for (j, pj) in p.iter().enumerate() {
            if j != k && linalg::dot(&l, pj) <= 0.0 {
                return Err(Error::ChartFailure);
            }
        }
        c = linalg::add(&c, &l);
    }
    Ok(ProjLine::new(c)?)
}
