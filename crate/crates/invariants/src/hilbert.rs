use crate::chart::AffineChart;
use crate::{cross_ratio_collinear, Error, Result};
use projcore::{ProjLine, ProjPoint};

/// Interior of a convex polygon, given by its vertices in cyclic order
/// inside a fixed affine chart.
#[derive(Clone, Debug)]
pub struct ConvexPolygonDomain {
    pub vertices: Vec<ProjPoint>,
    chart: AffineChart,
    xy: Vec<[f64; 2]>,
    orient: f64,
}

fn cross2(o: &[f64; 2], a: &[f64; 2], b: &[f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

impl ConvexPolygonDomain {
    /// Domain in the standard chart `z = 1`.
    pub fn new(vertices: Vec<ProjPoint>) -> Result<Self> {
        Self::with_chart(vertices, &ProjLine::new([0.0, 0.0, 1.0])?)
    }

    pub fn with_chart(vertices: Vec<ProjPoint>, line_at_infinity: &ProjLine) -> Result<Self> {
        let chart = AffineChart::from_line(line_at_infinity);
        if vertices.len() < 3 {
            return Err(Error::NonConvexInput("fewer than three vertices".into()));
        }
        let xy = vertices
            .iter()
            .map(|v| {
                chart
                    .to_affine(v, 1e-12)
                    .ok_or(Error::NonConvexInput("vertex at infinity".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = xy.len();
        let turns: Vec<f64> = (0..n)
            .map(|i| cross2(&xy[i], &xy[(i + 1) % n], &xy[(i + 2) % n]))
            .collect();
        let orient = if turns[0] > 0.0 { 1.0 } else { -1.0 };
        if turns.iter().any(|t| t * orient <= 0.0) {
            return Err(Error::NonConvexInput(
                "vertices not in strictly convex position".into(),
            ));
        }
        // a simple convex polygon winds once
        let mut angle = 0.0;
        for i in 0..n {
            let (a, b, c) = (xy[i], xy[(i + 1) % n], xy[(i + 2) % n]);
            let d1 = [b[0] - a[0], b[1] - a[1]];
            let d2 = [c[0] - b[0], c[1] - b[1]];
            angle += (d1[0] * d2[1] - d1[1] * d2[0]).atan2(d1[0] * d2[0] + d1[1] * d2[1]);
        }
        if (angle.abs() - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::NonConvexInput("polygon winds more than once".into()));
        }
        Ok(ConvexPolygonDomain {
            vertices,
            chart,
            xy,
            orient,
        })
    }

    fn affine(&self, p: &ProjPoint) -> Result<[f64; 2]> {
        self.chart
            .to_affine(p, 1e-12)
            .ok_or(Error::PointOutsideDomain)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        match self.affine(p) {
            Ok(x) => {
                let n = self.xy.len();
                (0..n).all(|i| cross2(&self.xy[i], &self.xy[(i + 1) % n], &x) * self.orient > 0.0)
            }
            Err(_) => false,
        }
    }

    /// Parameter interval `[s_lo, s_hi]` of the chord `p + s (q − p)`.
    fn chord(&self, p: &[f64; 2], q: &[f64; 2]) -> Result<(f64, f64)> {
        let d = [q[0] - p[0], q[1] - p[1]];
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let n = self.xy.len();
        for i in 0..n {
            let (a, b) = (self.xy[i], self.xy[(i + 1) % n]);
            // inward normal, h(x) = nrm·(x − a) ≥ 0 inside
            let nrm = [-(b[1] - a[1]) * self.orient, (b[0] - a[0]) * self.orient];
            let h0 = nrm[0] * (p[0] - a[0]) + nrm[1] * (p[1] - a[1]);
            let hd = nrm[0] * d[0] + nrm[1] * d[1];
            if hd > 0.0 {
                lo = lo.max(-h0 / hd);
            } else if hd < 0.0 {
                hi = hi.min(-h0 / hd);
            }
        }
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::NonConvexInput(
                "chord does not meet the boundary twice".into(),
            ));
        }
        Ok((lo, hi))
    }
}

/// `log |C(a, p, q, b)|` where `a, b` are the boundary points of the chord through `p, q`.
pub fn hilbert_distance(dom: &ConvexPolygonDomain, p: &ProjPoint, q: &ProjPoint) -> Result<f64> {
    if !dom.contains(p) || !dom.contains(q) {
        return Err(Error::PointOutsideDomain);
    }
    let (x, y) = (dom.affine(p)?, dom.affine(q)?);
    if x == y || p.same(q) {
        return Ok(0.0);
    }
    let (lo, hi) = dom.chord(&x, &y)?;
    if !(lo < 0.0 && hi > 1.0) {
        return Err(Error::NonConvexInput("boundary intersection failed".into()));
    }
    let at = |s: f64| {
        dom.chart
            .from_affine([x[0] + s * (y[0] - x[0]), x[1] + s * (y[1] - x[1])])
    };
    let c = cross_ratio_collinear(&[at(lo), *p, *q, at(hi)])?;
    Ok(c.abs().ln())
}
