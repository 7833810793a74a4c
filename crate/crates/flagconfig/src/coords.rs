use crate::attach::{self, RawFlag};
use crate::tuple::{validate_tuple, FlagTuple};
use crate::{in_arc, Error, Result, Triangulation};
use projcore::linalg;
use projcore::{Dd, Flag, ProjLine, ProjPoint, Real};
use std::collections::BTreeMap;

/// σ on both orientations of every internal edge, τ on every triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct FGCoords {
    pub n: usize,
    /// `(i, j) ↦ σ_{i,j}`, the invariant at the end `i` of the edge `{i, j}`.
    pub sigma: BTreeMap<(usize, usize), f64>,
    /// Ascending triangle ↦ `τ = log T(F_i, F_j, F_k)`.
    pub tau: BTreeMap<[usize; 3], f64>,
}

impl FGCoords {
    pub fn zero(tri: &Triangulation) -> Self {
        let mut sigma = BTreeMap::new();
        for (i, j) in tri.internal_edges() {
            sigma.insert((*i, *j), 0.0);
            sigma.insert((*j, *i), 0.0);
        }
        let tau = tri.triangles().iter().map(|t| (*t, 0.0)).collect();
        FGCoords {
            n: tri.n(),
            sigma,
            tau,
        }
    }

    pub fn sigma(&self, i: usize, j: usize) -> Result<f64> {
        self.sigma
            .get(&(i, j))
            .copied()
            .ok_or(Error::MissingCoordinate(format!("sigma({i},{j})")))
    }

    pub fn tau(&self, t: [usize; 3]) -> Result<f64> {
        let mut s = t;
        s.sort_unstable();
        self.tau
            .get(&s)
            .copied()
            .ok_or(Error::MissingCoordinate(format!("tau{s:?}")))
    }

    /// All coordinates as one vector: σ entries in key order, then τ entries.
    pub fn to_vec(&self) -> Vec<f64> {
        self.sigma
            .values()
            .chain(self.tau.values())
            .copied()
            .collect()
    }

    /// Largest absolute difference over all entries; infinite if the keys differ.
    pub fn max_diff(&self, other: &FGCoords) -> f64 {
        if self.sigma.keys().ne(other.sigma.keys()) || self.tau.keys().ne(other.tau.keys()) {
            return f64::INFINITY;
        }
        self.to_vec()
            .iter()
            .zip(other.to_vec())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn raw(f: &Flag) -> RawFlag<Dd> {
    (
        linalg::vfrom_f64(&f.p.coords()),
        linalg::vfrom_f64(&f.l.coords()),
    )
}

pub fn fg_coords(t: &FlagTuple, tri: &Triangulation) -> Result<FGCoords> {
    let n = t.len();
    if tri.n() != n {
        return Err(Error::IncompatibleTriangulation {
            tri: tri.n(),
            tuple: n,
        });
    }
    // evaluated in double-double: crowded tuples lose digits in the cross ratios
    let f: Vec<RawFlag<Dd>> = t.flags().iter().map(raw).collect();
    let mut sigma = BTreeMap::new();
    for &(i, j) in tri.internal_edges() {
        let (k, kp) = tri.opposite(i, j).unwrap();
        sigma.insert(
            (i, j),
            attach::sigma_raw(&f[i], &f[j].0, &f[k].0, &f[kp].0).f(),
        );
        sigma.insert(
            (j, i),
            attach::sigma_raw(&f[j], &f[i].0, &f[kp].0, &f[k].0).f(),
        );
    }
    let tau = tri
        .triangles()
        .iter()
        .map(|t| (*t, attach::tau_raw(&f[t[0]], &f[t[1]], &f[t[2]]).f()))
        .collect();
    Ok(FGCoords { n, sigma, tau })
}

/// Builds the positive tuple with the given coordinates. The first triangle
/// of the triangulation is placed in the standard position of
/// [`attach::seed_triangle`]; every other flag is attached across the edge
/// through which the dual tree reaches it. The attachment runs in
/// double-double, and for `n >= 4` the result is moved by [`balance`] on
/// three evenly spaced flags, since long chains of attachments crowd the
/// flags together in the seed frame.
pub fn reconstruct(c: &FGCoords, tri: &Triangulation) -> Result<FlagTuple> {
    let n = tri.n();
    if c.n != n {
        return Err(Error::IncompatibleTriangulation { tri: n, tuple: c.n });
    }
    let ex = |x: f64| Dd::from(x).rexp();
    let mut f: Vec<Option<RawFlag<Dd>>> = vec![None; n];
    for (t, via) in tri.dual_walk() {
        let e_tau = ex(c.tau(t)?);
        match via {
            None => {
                let seed = attach::seed_triangle(e_tau);
                for (v, s) in t.iter().zip(seed) {
                    f[*v] = Some(s);
                }
            }
            Some((i, j)) => {
                let new = *t.iter().find(|v| **v != i && **v != j).unwrap();
                // the third vertex of the already placed triangle on the other side
                let (k, kp) = tri.opposite(i, j).unwrap();
                let c_old = if new == k { kp } else { k };
                let (a, b) = if in_arc(i, new, j, n) { (i, j) } else { (j, i) };
                let fa = f[a].unwrap();
                let fb = f[b].unwrap();
                let pc = f[c_old].unwrap().0;
                let flag =
                    attach::new_flag(&fa, &fb, &pc, ex(c.sigma(a, b)?), ex(c.sigma(b, a)?), e_tau)
                        .ok_or(Error::Core(projcore::Error::DegeneratePoint))?;
                f[new] = Some(flag);
            }
        }
    }
    let mut f: Vec<RawFlag<Dd>> = f.into_iter().map(Option::unwrap).collect();
    if n >= 4 {
        let m = balance([&f[0], &f[n / 3], &f[2 * n / 3]])
            .ok_or(Error::Core(projcore::Error::NotGeneric))?;
        let inv = linalg::inverse(&m).ok_or(Error::Core(projcore::Error::NotGeneric))?;
        for (p, l) in f.iter_mut() {
            *p = linalg::mul_vec(&m, p);
            *l = linalg::vec_mul(l, &inv);
        }
    }
    let flags = f
        .into_iter()
        .map(|(p, l)| {
            let p = linalg::vto_f64(&linalg::normalize(&p));
            let l = linalg::vto_f64(&linalg::normalize(&l));
            Ok(Flag::new(ProjPoint::new(p)?, ProjLine::new(l)?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    validate_tuple(flags)
}

/// The map sending the points of three flags to the coordinate points, with
/// the images of the lines `[0:1:-s]`, `[-s:0:1]`, `[1:-s:0]` for one common `s`.
fn balance(f: [&RawFlag<Dd>; 3]) -> Option<linalg::M3<Dd>> {
    let b = linalg::from_cols(&f[0].0, &f[1].0, &f[2].0);
    let bi = linalg::inverse(&b)?;
    // lines in the new coordinates, before the diagonal rescaling
    let l: Vec<_> = f.iter().map(|x| linalg::vec_mul(&x.1, &b)).collect();
    let (a0, b0) = (l[0][1], l[0][2]);
    let (c1, b1) = (l[1][0], l[1][2]);
    let (c2, a2) = (l[2][0], l[2][1]);
    let s3 = -(b0 * c1 * a2) / (a0 * b1 * c2);
    if !(s3.f().abs() > 0.0) || !s3.f().is_finite() {
        return None;
    }
    let s = (s3.abs().rln() / Dd::from(3.0)).rexp();
    let s = if s3.f() < 0.0 { -s } else { s };
    // lines scale by 1/d under diag(d): fix d2 = 1 and solve the ratios
    let d2 = Dd::one();
    let d1 = -s * a0 * d2 / b0;
    let d0 = -c1 * d2 / (s * b1);
    Some(linalg::mul(&linalg::diag([d0, d1, d2]), &bi))
}
