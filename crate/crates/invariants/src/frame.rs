use crate::{cross_ratio_collinear, triple_ratio, Error, Result};
use projcore::{join, meet, tol, Flag, ProjLine, ProjPoint};

/// Auxiliary points and lines of a positive flag triple. Index `k` is
/// opposite to the pair `{k+1, k+2}` (mod 3).
#[derive(Clone, Debug)]
pub struct TriangleFrame {
    /// `q_k = l_{k+1} ∩ l_{k+2}`, vertices of the outer triangle.
    pub q: [ProjPoint; 3],
    /// `m_k = p_{k+1} p_{k+2}`, sides of the inner triangle.
    pub m: [ProjLine; 3],
    /// `w_k = p_k q_k`.
    pub w: [ProjLine; 3],
    pub tpts: [ProjPoint; 3],
    pub rpts: [ProjPoint; 3],
    /// `u_k = w_{k+1} ∩ w_{k+2}`.
    pub u: [ProjPoint; 3],
}

impl TriangleFrame {
    /// `C(p_i, u_{i−1}, u_{i+1}, q_i)` for each `i`, as collinear cross ratios.
    pub fn cevian_cross_ratios(&self, flags: &[Flag; 3]) -> Result<[f64; 3]> {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            let pts = [
                flags[i].p,
                self.u[(i + 2) % 3],
                self.u[(i + 1) % 3],
                self.q[i],
            ];
            *o = cross_ratio_collinear(&pts)?;
        }
        Ok(out)
    }
}

pub fn triangle_frame(f: &[Flag; 3]) -> Result<TriangleFrame> {
    let t = triple_ratio(&f[0], &f[1], &f[2])?;
    if !(t > tol().pos) {
        return Err(Error::NotPositive(t));
    }
    let at = |k: usize| (k + 1) % 3;
    let bt = |k: usize| (k + 2) % 3;
    let q: Vec<ProjPoint> = (0..3)
        .map(|k| meet(&f[at(k)].l, &f[bt(k)].l))
        .collect::<std::result::Result<_, _>>()?;
    let m: Vec<ProjLine> = (0..3)
        .map(|k| join(&f[at(k)].p, &f[bt(k)].p))
        .collect::<std::result::Result<_, _>>()?;
    let w: Vec<ProjLine> = (0..3)
        .map(|k| join(&f[k].p, &q[k]))
        .collect::<std::result::Result<_, _>>()?;
    let tp: Vec<ProjPoint> = (0..3)
        .map(|k| meet(&f[k].l, &m[k]))
        .collect::<std::result::Result<_, _>>()?;
    let rp: Vec<ProjPoint> = (0..3)
        .map(|k| meet(&w[k], &m[k]))
        .collect::<std::result::Result<_, _>>()?;
    let u: Vec<ProjPoint> = (0..3)
        .map(|k| meet(&w[at(k)], &w[bt(k)]))
        .collect::<std::result::Result<_, _>>()?;
    let arr = |v: Vec<ProjPoint>| [v[0], v[1], v[2]];
    let arl = |v: Vec<ProjLine>| [v[0], v[1], v[2]];
    Ok(TriangleFrame {
        q: arr(q),
        m: arl(m),
        w: arl(w),
        tpts: arr(tp),
        rpts: arr(rp),
        u: arr(u),
    })
}
