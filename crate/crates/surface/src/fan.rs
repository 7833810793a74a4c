//! The fan of a pants lift around one boundary vertex `x`, and the two ways
//! of flowing it: the unipotent closed form and period-by-period iteration.
//!
//! Fan vertices `v_{−1}, v_0 = z, v_1, …` accumulate on `y`, the attracting
//! end of the cuff, with `v_{k+2} = ρ v_k`. Fan triangle `S_m = (x, v_{m−1}, v_m)`.
//! A flow on `S_m` (or on the edge `{x, v_m}`) moves everything beyond
//! `v_m`, including `y` and the opposite vertex `z'`, by one map.

use crate::bd::PantsCoords;
use crate::lift::{develop_lift, fan_walk, Lift, TriKind};
use crate::unipotent::limit_in_basis;
use crate::{Error, Result};
use flagconfig::attach::{pin, sigma_raw, RawFlag};
use projcore::linalg::{self, M3, V3};
use projcore::{eigen_decompose, Dd, ProjMap, Real};

/// A projective map with its inverse, for points and lines.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Pm {
    pub m: M3<Dd>,
    pub inv: M3<Dd>,
}

pub(crate) fn rescale(v: &V3<Dd>) -> V3<Dd> {
    let s = v.iter().map(|x| x.f().abs()).fold(0.0, f64::max);
    if s > 0.0 && s.is_finite() {
        linalg::scale(v, Dd::of(1.0 / s))
    } else {
        *v
    }
}

impl Pm {
    pub fn identity() -> Pm {
        Pm {
            m: linalg::identity(),
            inv: linalg::identity(),
        }
    }

    pub fn new(m: M3<Dd>) -> Option<Pm> {
        let inv = linalg::inverse(&m)?;
        Some(Pm { m, inv })
    }

    /// `B diag(e^{d}) B⁻¹`.
    pub fn diagonal(basis: &M3<Dd>, d: [f64; 3]) -> Option<Pm> {
        let bi = linalg::inverse(basis)?;
        let e = d.map(|x| Dd::of(x).rexp());
        let ei = d.map(|x| Dd::of(-x).rexp());
        Some(Pm {
            m: linalg::mul(&linalg::mul(basis, &linalg::diag(e)), &bi),
            inv: linalg::mul(&linalg::mul(basis, &linalg::diag(ei)), &bi),
        })
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Pm) -> Pm {
        Pm {
            m: linalg::mul(&self.m, &other.m),
            inv: linalg::mul(&other.inv, &self.inv),
        }
    }

    pub fn point(&self, p: &V3<Dd>) -> V3<Dd> {
        rescale(&linalg::mul_vec(&self.m, p))
    }

    pub fn flag(&self, f: &RawFlag<Dd>) -> RawFlag<Dd> {
        (self.point(&f.0), rescale(&linalg::vec_mul(&f.1, &self.inv)))
    }

    pub fn to_proj(&self) -> Result<ProjMap> {
        let n = linalg::frob(&self.m);
        Ok(ProjMap::new(linalg::to_f64(&linalg::mscale(
            &self.m,
            Dd::one() / n,
        )))?)
    }
}

pub(crate) fn pin_pm(
    src: (&RawFlag<Dd>, &RawFlag<Dd>, &V3<Dd>),
    dst: (&RawFlag<Dd>, &RawFlag<Dd>, &V3<Dd>),
) -> Result<Pm> {
    pin(src, dst)
        .and_then(Pm::new)
        .ok_or_else(|| Error::Degenerate("flag data does not determine a map".into()))
}

fn power(m: &M3<Dd>) -> M3<Dd> {
    let mut n = linalg::mscale(m, Dd::one() / linalg::frob(m));
    for _ in 0..64 {
        let sq = linalg::mul(&n, &n);
        n = linalg::mscale(&sq, Dd::one() / linalg::frob(&sq));
    }
    n
}

fn largest(vs: [V3<Dd>; 3]) -> V3<Dd> {
    let nrm = |v: &V3<Dd>| linalg::norm(v).f();
    let mut best = vs[0];
    for v in vs {
        if nrm(&v) > nrm(&best) {
            best = v;
        }
    }
    rescale(&best)
}

/// Attracting flag (top eigenvector, span of the top two) of a loxodromic map.
pub(crate) fn attracting_flag(m: &M3<Dd>) -> Result<RawFlag<Dd>> {
    let pm = ProjMap::new(linalg::to_f64(&linalg::mscale(
        m,
        Dd::one() / linalg::frob(m),
    )))
    .map_err(|e| Error::ConvergenceFailure(format!("boundary holonomy: {e}")))?;
    eigen_decompose(&pm)
        .map_err(|e| Error::ConvergenceFailure(format!("boundary holonomy: {e}")))?;
    let inv = linalg::inverse(m).ok_or_else(|| Error::Degenerate("singular holonomy".into()))?;
    let a = power(m);
    let p = largest([0, 1, 2].map(|j| linalg::col(&a, j)));
    let b = power(&inv);
    let l = largest([b[0], b[1], b[2]]);
    let mp = linalg::mul_vec(m, &p);
    let res =
        linalg::norm(&linalg::cross(&mp, &p)).f() / (linalg::norm(&mp).f() * linalg::norm(&p).f());
    if !(res < 1e-20) {
        return Err(Error::ConvergenceFailure(format!(
            "eigenvector residual {res:e}"
        )));
    }
    Ok((p, l))
}

/// The point `z'` with `σ(x, z, z', y) = sx` and `σ(y, z', z, x) = sy`.
pub(crate) fn place_opposite(
    fx: &RawFlag<Dd>,
    fy: &RawFlag<Dd>,
    pz: &V3<Dd>,
    sx: f64,
    sy: f64,
) -> V3<Dd> {
    let m = linalg::cross(&fx.0, &fy.0);
    let mz = linalg::dot(&m, pz);
    let kx = -Dd::of(sx).rexp() * linalg::dot(&fx.1, pz) / mz;
    let ky = linalg::dot(&fy.1, pz) / (mz * -Dd::of(sy).rexp());
    let lx = linalg::sub(&fx.1, &linalg::scale(&m, kx));
    let ly = linalg::sub(&fy.1, &linalg::scale(&m, ky));
    rescale(&linalg::cross(&lx, &ly))
}

/// σ pair of the closed edge `{x, y}` seen from `x`.
pub(crate) fn closed_sigma(
    fx: &RawFlag<Dd>,
    fy: &RawFlag<Dd>,
    pz: &V3<Dd>,
    pzp: &V3<Dd>,
) -> (f64, f64) {
    (
        sigma_raw(fx, &fy.0, pz, pzp).f(),
        sigma_raw(fy, &fx.0, pzp, pz).f(),
    )
}

/// Elementary flows of a pants orbit, as seen by the fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Elem {
    Eruption,
    Bulge,
    Shear,
}

/// Exponents `(left, right)` of a two-sided edge flow along `(i, j)` in the
/// basis `(p_i, l_i ∩ l_j, p_j)`: `left` acts on the arc `(i, j)`.
pub(crate) fn edge_exponents(e: Elem, s: f64) -> ([f64; 3], [f64; 3]) {
    let l = match e {
        Elem::Bulge => [-s / 6.0, s / 3.0, -s / 6.0],
        _ => [-s / 2.0, 0.0, s / 2.0],
    };
    (l, l.map(|x| -x))
}

pub(crate) fn edge_basis(fi: &RawFlag<Dd>, fj: &RawFlag<Dd>) -> M3<Dd> {
    linalg::from_cols(&fi.0, &linalg::cross(&fi.1, &fj.1), &fj.0)
}

/// One pants lift with the data of a boundary fan.
pub(crate) struct FanFrame {
    pub fx: RawFlag<Dd>,
    /// `v_{−1}, v_0, v_1, v_2`
    pub v: [RawFlag<Dd>; 4],
    pub fy: RawFlag<Dd>,
    pub pzp: V3<Dd>,
    pub rho: Pm,
    /// Kinds of `S_1`, `S_2`.
    pub kinds: [TriKind; 2],
    /// Whether `v_1`, `v_2` are the forward end of their edge with `x`.
    pub forward: [bool; 2],
}

/// Holonomy `ρ` of the cuff `a` (mapping `S_0` to `S_2`) and its attracting flag.
pub(crate) fn cuff_data(l: &Lift, a: usize) -> Result<(Pm, RawFlag<Dd>)> {
    let w = fan_walk(l, a);
    if w.verts.len() < 5 {
        return Err(Error::OutOfDepth(
            "fan too short for the boundary holonomy".into(),
        ));
    }
    let f = |k: usize| &l.flags[w.verts[k]];
    let fx = &l.flags[w.x];
    let rho = pin_pm((fx, f(1), &f(2).0), (fx, f(3), &f(4).0))?;
    let fy = attracting_flag(&rho.m)?;
    Ok((rho, fy))
}

impl FanFrame {
    /// `sigma`: the closed-edge σ pair with `x` on this pants' side.
    pub fn new(pc: &PantsCoords, a: usize, sigma: (f64, f64)) -> Result<FanFrame> {
        let l = develop_lift(pc, 4)?;
        let w = fan_walk(&l, a);
        let (rho, fy) = cuff_data(&l, a)?;
        let fx = l.flags[w.x];
        let v = [0, 1, 2, 3].map(|k| l.flags[w.verts[k]]);
        let pzp = place_opposite(&fx, &fy, &v[1].0, sigma.0, sigma.1);
        Ok(FanFrame {
            fx,
            v,
            fy,
            pzp,
            rho,
            kinds: [l.nodes[w.nodes[1]].kind, l.nodes[w.nodes[2]].kind],
            forward: [
                l.vtype[w.verts[2]] == (a + 1) % 3,
                l.vtype[w.verts[3]] == (a + 1) % 3,
            ],
        })
    }

    /// Far-side map of the `m`-th element (`m ≥ 1`) from the current flags
    /// of `v_{m−1}` and `v_m`.
    fn step(&self, e: Elem, t: f64, m: usize, prev: &RawFlag<Dd>, cur: &RawFlag<Dd>) -> Result<Pm> {
        let par = (m + 1) % 2;
        let bad = || Error::Degenerate("degenerate fan basis".into());
        match e {
            Elem::Eruption => {
                let s = if self.kinds[par] == TriKind::Delta {
                    t
                } else {
                    -t
                };
                let b = linalg::from_cols(&cur.0, &self.fx.0, &prev.0);
                Pm::diagonal(&b, [0.0, -s, 0.0]).ok_or_else(bad)
            }
            _ => {
                let (l, r) = edge_exponents(e, t);
                let d: [f64; 3] = std::array::from_fn(|i| l[i] - r[i]);
                if self.forward[par] {
                    // far arc (v, x) is the left arc of (v, x)
                    Pm::diagonal(&edge_basis(cur, &self.fx), d).ok_or_else(bad)
                } else {
                    Pm::diagonal(&edge_basis(&self.fx, cur), d.map(|x| -x)).ok_or_else(bad)
                }
            }
        }
    }

    fn sigma_after(&self, u: &Pm) -> (f64, f64) {
        closed_sigma(
            &self.fx,
            &u.flag(&self.fy),
            &self.v[1].0,
            &u.point(&self.pzp),
        )
    }

    pub fn sigma(&self) -> (f64, f64) {
        self.sigma_after(&Pm::identity())
    }

    /// Net far map of the first period and `r = u ρ`.
    fn first_period(&self, e: Elem, t: f64) -> Result<Pm> {
        let m1 = self.step(e, t, 1, &self.v[1], &self.v[2])?;
        let m2 = self.step(e, t, 2, &m1.flag(&self.v[2]), &m1.flag(&self.v[3]))?;
        Ok(m2.after(&m1))
    }

    /// Limit of the flowed σ pair through the unipotent closed form.
    pub fn closed_form(&self, e: Elem, t: f64) -> Result<(f64, f64)> {
        if t == 0.0 {
            return Ok(self.sigma());
        }
        let u = self.first_period(e, t)?;
        let r = u.after(&self.rho);
        // r fixes F_x, its repelling flag: triangularize in a basis adapted to it
        let q = linalg::cross(&self.fx.1, &self.fy.1);
        let other = self.fy.0;
        let basis = linalg::from_cols(&self.fx.0, &q, &other);
        let bi = linalg::inverse(&basis).ok_or_else(|| Error::Degenerate("fan basis".into()))?;
        let w = linalg::mul(&linalg::mul(&bi, &r.m), &basis);
        let (al, be, ga) = (w[0][0], w[1][1], w[2][2]);
        let sgn = if al.f() < 0.0 { -Dd::one() } else { Dd::one() };
        let (al, be, ga) = (al * sgn, be * sgn, ga * sgn);
        let (w01, w02, w12) = (w[0][1] * sgn, w[0][2] * sgn, w[1][2] * sgn);
        // eigenvectors of the upper triangular w
        let o = Dd::one();
        let z = Dd::zero();
        let y3 = w12 / (ga - be);
        let x3 = (w01 * y3 + w02) / (ga - al);
        let v = [[o, w01 / (be - al), x3], [z, o, y3], [z, z, o]];
        let p = linalg::mul(&basis, &v);
        let lim = limit_in_basis(&p, [al, be, ga], &u.m)?;
        let lp = Pm::new(lim).ok_or_else(|| Error::Degenerate("singular limit".into()))?;
        Ok(self.sigma_after(&lp))
    }

    /// σ pair after each complete period of the literal fan product.
    /// Stops once consecutive periods agree to `stop` or after `max` periods.
    pub fn iterate(&self, e: Elem, t: f64, max: usize, stop: f64) -> Result<Vec<(f64, f64)>> {
        let mut out = Vec::new();
        let mut u = Pm::identity();
        let mut rk = Pm::identity();
        let mut prev = self.sigma();
        for _ in 0..max {
            // current v_{2p−1}, v_{2p}, v_{2p+1}, v_{2p+2}
            let orig = [0, 1, 2, 3].map(|k| rk.flag(&self.v[k]));
            let ua = [1, 2, 3].map(|k| u.flag(&orig[k]));
            let m1 = self.step(e, t, 1, &ua[0], &ua[1])?;
            u = m1.after(&u);
            let m2 = self.step(e, t, 2, &u.flag(&orig[2]), &u.flag(&orig[3]))?;
            u = m2.after(&u);
            rk = self.rho.after(&rk);
            let s = self.sigma_after(&u);
            if !(s.0.is_finite() && s.1.is_finite()) {
                return Err(Error::ConvergenceFailure("fan flags degenerated".into()));
            }
            out.push(s);
            let d = (s.0 - prev.0).abs().max((s.1 - prev.1).abs());
            prev = s;
            if d < stop {
                break;
            }
        }
        Ok(out)
    }
}
