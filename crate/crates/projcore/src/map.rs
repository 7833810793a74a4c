use crate::error::{Error, Result};
use crate::geom::{Flag, ProjLine, ProjPoint};
use crate::linalg::{self, M3, V3};
use crate::real::Real;
use crate::tol::tol;

/// An element of PGL(3,R), stored with unit Frobenius norm and first nonzero entry positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjMap {
    m: M3<f64>,
}

impl ProjMap {
    pub fn new(m: M3<f64>) -> Result<Self> {
        if !m.iter().flatten().all(|x| x.is_finite()) {
            return Err(Error::DegenerateInput("non-finite matrix entry".into()));
        }
        let f = linalg::frob(&m);
        if f == 0.0 {
            return Err(Error::Singular(0.0));
        }
        let mut n = linalg::mscale(&m, 1.0 / f);
        let d = linalg::det(&n);
        if d.abs() <= tol().sing {
            return Err(Error::Singular(d.abs()));
        }
        if let Some(first) = n.iter().flatten().find(|x| **x != 0.0) {
            if *first < 0.0 {
                n = linalg::mscale(&n, -1.0);
            }
        }
        Ok(ProjMap { m: n })
    }

    pub fn identity() -> Self {
        ProjMap::new(linalg::identity()).unwrap()
    }

    pub fn matrix(&self) -> M3<f64> {
        self.m
    }

    pub fn apply_point(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(linalg::mul_vec(&self.m, &p.coords())).unwrap()
    }

    /// Lines transform by the inverse transpose.
    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let inv = linalg::inverse(&self.m).unwrap();
        ProjLine::new(linalg::vec_mul(&l.coords(), &inv)).unwrap()
    }

    pub fn apply_flag(&self, f: &Flag) -> Flag {
        Flag {
            p: self.apply_point(&f.p),
            l: self.apply_line(&f.l),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjMap) -> ProjMap {
        ProjMap::new(linalg::mul(&self.m, &other.m)).unwrap()
    }

    pub fn inverse(&self) -> ProjMap {
        ProjMap::new(linalg::inverse(&self.m).unwrap()).unwrap()
    }

    /// Distance between projective classes: Frobenius distance of the
    /// normalized representatives, minimized over the sign.
    pub fn distance(&self, other: &ProjMap) -> f64 {
        let (mut dm, mut dp) = (0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                dm += (self.m[i][j] - other.m[i][j]).powi(2);
                dp += (self.m[i][j] + other.m[i][j]).powi(2);
            }
        }
        dm.min(dp).sqrt()
    }
}

/// The projective frame sending the standard basis and (1,1,1) to four points.
pub fn point_frame<R: Real>(p: &[V3<R>; 4]) -> Option<M3<R>> {
    let b = linalg::from_cols(&p[0], &p[1], &p[2]);
    let lam = linalg::solve(&b, &p[3])?;
    Some(linalg::mul(&b, &linalg::diag(lam)))
}

/// The frame attached to two transverse flags and a third point:
/// columns `p_a`, `l_a ∩ l_b`, `p_b`, scaled so that their sum is `c`.
pub fn flag_frame<R: Real>(
    pa: &V3<R>,
    la: &V3<R>,
    pb: &V3<R>,
    lb: &V3<R>,
    c: &V3<R>,
) -> Option<M3<R>> {
    let q = linalg::cross(la, lb);
    let b = linalg::from_cols(pa, &q, pb);
    let lam = linalg::solve(&b, c)?;
    Some(linalg::mul(&b, &linalg::diag(lam)))
}

/// Raw matrix of the map sending flag data `(A, B, c)` to `(A', B', c')`.
#[allow(clippy::too_many_arguments)]
pub fn flag_map_raw<R: Real>(
    src: (&V3<R>, &V3<R>, &V3<R>, &V3<R>, &V3<R>),
    dst: (&V3<R>, &V3<R>, &V3<R>, &V3<R>, &V3<R>),
) -> Option<M3<R>> {
    let fs = flag_frame(src.0, src.1, src.2, src.3, src.4)?;
    let fd = flag_frame(dst.0, dst.1, dst.2, dst.3, dst.4)?;
    Some(linalg::mul(&fd, &linalg::inverse(&fs)?))
}

fn check_generic(p: &[ProjPoint; 4]) -> Result<()> {
    let s = tol().sing;
    for skip in 0..4 {
        let v: Vec<[f64; 3]> = (0..4)
            .filter(|i| *i != skip)
            .map(|i| p[i].coords())
            .collect();
        if linalg::det_cols(&v[0], &v[1], &v[2]).abs() <= s {
            return Err(Error::NotGeneric);
        }
    }
    Ok(())
}

/// The unique map sending four points in general position to four others.
pub fn map_from_points(src: &[ProjPoint; 4], dst: &[ProjPoint; 4]) -> Result<ProjMap> {
    check_generic(src)?;
    check_generic(dst)?;
    let s = point_frame(&src.map(|p| p.coords())).ok_or(Error::NotGeneric)?;
    let d = point_frame(&dst.map(|p| p.coords())).ok_or(Error::NotGeneric)?;
    ProjMap::new(linalg::mul(
        &d,
        &linalg::inverse(&s).ok_or(Error::NotGeneric)?,
    ))
}

fn check_flag_data(a: &Flag, b: &Flag, c: &ProjPoint) -> Result<()> {
    if !a.transverse_to(b) {
        return Err(Error::NotTransverse);
    }
    let e = tol().eq;
    if a.l.eval(c).abs() <= e || b.l.eval(c).abs() <= e {
        return Err(Error::DegeneratePoint);
    }
    let ab = linalg::cross(&a.p.coords(), &b.p.coords());
    let ab = linalg::normalize(&ab);
    if linalg::dot(&ab, &c.coords()).abs() <= e {
        return Err(Error::DegeneratePoint);
    }
    Ok(())
}

/// The unique map with `A ↦ A'`, `B ↦ B'`, `c ↦ c'` for transverse flags and
/// points off the flag lines and off the joins of the flag points.
pub fn map_from_flag_data(
    src: (&Flag, &Flag, &ProjPoint),
    dst: (&Flag, &Flag, &ProjPoint),
) -> Result<ProjMap> {
    check_flag_data(src.0, src.1, src.2)?;
    check_flag_data(dst.0, dst.1, dst.2)?;
    let v = |f: &Flag| (f.p.coords(), f.l.coords());
    let (sa, sb, dc) = (v(src.0), v(src.1), v(dst.0));
    let db = v(dst.1);
    let m = flag_map_raw(
        (&sa.0, &sa.1, &sb.0, &sb.1, &src.2.coords()),
        (&dc.0, &dc.1, &db.0, &db.1, &dst.2.coords()),
    )
    .ok_or(Error::DegeneratePoint)?;
    ProjMap::new(m)
}
