//! Elementary flows on positive flag tuples. Each flow moves the flags of
//! the arcs cut out by its anchors by projective maps that are diagonal in
//! a basis adapted to the anchor flags.

mod spec;

pub use spec::{FlowKind, FlowSpec};

use flagconfig::{in_arc, validate_tuple, FGCoords, FlagTuple, Triangulation};
use projcore::linalg::{self, M3, V3};
use projcore::{Dd, Flag, ProjLine, ProjPoint, Real};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid anchors: {0}")]
    InvalidAnchors(String),
    #[error("cannot parse flow '{0}'")]
    Parse(String),
    #[error(transparent)]
    Config(#[from] flagconfig::Error),
    #[error(transparent)]
    Core(#[from] projcore::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// `P diag(d) P⁻¹` acting on points, with its inverse for lines. Built and
/// applied in double-double: adjacent anchors give a badly conditioned `P`.
struct Diag {
    m: M3<Dd>,
    inv: M3<Dd>,
}

fn unit(v: &V3<Dd>) -> V3<f64> {
    linalg::vto_f64(&linalg::normalize(v))
}

impl Diag {
    fn new(basis: &M3<Dd>, d: [Dd; 3]) -> Result<Diag> {
        let pi = linalg::inverse(basis)
            .ok_or_else(|| Error::InvalidAnchors("degenerate anchor basis".into()))?;
        let m = linalg::mul(&linalg::mul(basis, &linalg::diag(d)), &pi);
        let inv = linalg::mul(
            &linalg::mul(basis, &linalg::diag(d.map(|x| Dd::one() / x))),
            &pi,
        );
        Ok(Diag { m, inv })
    }

    fn point(&self, p: &ProjPoint) -> Result<ProjPoint> {
        Ok(ProjPoint::new(unit(&linalg::mul_vec(
            &self.m,
            &dd(&p.coords()),
        )))?)
    }

    fn line(&self, l: &ProjLine) -> Result<ProjLine> {
        Ok(ProjLine::new(unit(&linalg::vec_mul(
            &dd(&l.coords()),
            &self.inv,
        )))?)
    }

    fn flag(&self, f: &Flag) -> Result<Flag> {
        Ok(Flag::new(self.point(&f.p)?, self.line(&f.l)?)?)
    }
}

fn check_index(t: &FlagTuple, idx: &[usize]) -> Result<()> {
    let n = t.len();
    for (k, i) in idx.iter().enumerate() {
        if *i >= n {
            return Err(Error::InvalidAnchors(format!(
                "index {} out of range for {n} flags",
                i + 1
            )));
        }
        if idx[..k].contains(i) {
            return Err(Error::InvalidAnchors(format!("repeated index {}", i + 1)));
        }
    }
    Ok(())
}

fn dd(v: &V3<f64>) -> V3<Dd> {
    linalg::vfrom_f64(v)
}

fn ex(x: f64) -> Dd {
    Dd::from(x).rexp()
}

/// Eruption along the triangle `(a, b, c)`, listed in cyclic order.
///
/// Flags on the arc `(b, c)` stay put, those on `(c, a)` move by `G_b` and
/// those on `(a, b)` by `G_c`; `F_b`, `F_c` and `p_a` are fixed and `l_a`
/// turns by the common value `G_b l_a = G_c l_a`. The triple ratio of the
/// anchors is multiplied by `e^s` and every other σ, τ of a triangulation
/// through `(a, b, c)` is unchanged.
///
/// The triple ratio is cyclically symmetric, so the anchors are first
/// rotated to make `(b, c)` the arc holding the most flags: the result is
/// the same up to a projective map and far less crowded when the anchors
/// are close together.
pub fn eruption(t: &FlagTuple, anchors: (usize, usize, usize), s: f64) -> Result<FlagTuple> {
    let (a, b, c) = anchors;
    check_index(t, &[a, b, c])?;
    let n = t.len();
    if !in_arc(a, b, c, n) {
        return Err(Error::InvalidAnchors(format!(
            "({}, {}, {}) not in cyclic order",
            a + 1,
            b + 1,
            c + 1
        )));
    }
    if s == 0.0 {
        return Ok(t.clone());
    }
    let gap = |x: usize, y: usize| (y + n - x) % n;
    let (a, b, c) = [(a, b, c), (b, c, a), (c, a, b)]
        .into_iter()
        .rev()
        .max_by_key(|r| gap(r.1, r.2))
        .unwrap();
    let f = t.flags();
    // G_b is the homology with centre p_c and axis p_a p_b, G_c the one
    // with centre p_b and axis p_a p_c
    let basis = linalg::from_cols(
        &dd(&f[a].p.coords()),
        &dd(&f[b].p.coords()),
        &dd(&f[c].p.coords()),
    );
    let one = Dd::one();
    let gb = Diag::new(&basis, [one, one, ex(s)])?;
    let gc = Diag::new(&basis, [one, ex(-s), one])?;
    let mut out = f.to_vec();
    for (k, flag) in out.iter_mut().enumerate() {
        if in_arc(c, k, a, n) {
            *flag = gb.flag(flag)?;
        } else if in_arc(a, k, b, n) {
            *flag = gc.flag(flag)?;
        }
    }
    out[a] = Flag::new(f[a].p, gb.line(&f[a].l)?)?;
    Ok(validate_tuple(out)?)
}

/// Moves the arc `(i, j)` by `diag(e^{left})` and the arc `(j, i)` by
/// `diag(e^{right})`, both in the basis `(p_i, l_i ∩ l_j, p_j)`.
///
/// Only the relative map matters up to projective equivalence, so the arc
/// with more flags is left in place and the other one carries the quotient.
fn two_sided(
    t: &FlagTuple,
    anchors: (usize, usize),
    left: [f64; 3],
    right: [f64; 3],
) -> Result<FlagTuple> {
    let (i, j) = anchors;
    check_index(t, &[i, j])?;
    if left == [0.0; 3] && right == [0.0; 3] {
        return Ok(t.clone());
    }
    let n = t.len();
    let f = t.flags();
    let q = linalg::cross(&dd(&f[i].l.coords()), &dd(&f[j].l.coords()));
    let basis = linalg::from_cols(&dd(&f[i].p.coords()), &q, &dd(&f[j].p.coords()));
    let left_count = (j + n - i) % n - 1;
    let (from, to, d) = if left_count <= n - 2 - left_count {
        (i, j, [0, 1, 2].map(|k| ex(left[k] - right[k])))
    } else {
        (j, i, [0, 1, 2].map(|k| ex(right[k] - left[k])))
    };
    let g = Diag::new(&basis, d)?;
    let mut out = f.to_vec();
    for (k, flag) in out.iter_mut().enumerate() {
        if in_arc(from, k, to, n) {
            *flag = g.flag(flag)?;
        }
    }
    Ok(validate_tuple(out)?)
}

/// Shear along `(i, j)`: `diag(e^{s/2}, 1, e^{-s/2})` on the arc `(j, i)` and
/// its inverse on `(i, j)`. Both σ values of the edge drop by `s`.
pub fn shear(t: &FlagTuple, anchors: (usize, usize), s: f64) -> Result<FlagTuple> {
    let h = s / 2.0;
    two_sided(t, anchors, [-h, 0.0, h], [h, 0.0, -h])
}

/// Bulge along `(i, j)`: `diag(e^{-s/6}, e^{s/3}, e^{-s/6})` on the arc
/// `(i, j)` and its inverse on `(j, i)`. `σ_{i,j}` gains `s`, `σ_{j,i}` loses it.
pub fn bulge(t: &FlagTuple, anchors: (usize, usize), s: f64) -> Result<FlagTuple> {
    let (a, b) = (s / 6.0, s / 3.0);
    two_sided(t, anchors, [-a, b, -a], [a, -b, a])
}

pub fn apply(t: &FlagTuple, spec: &FlowSpec) -> Result<FlagTuple> {
    match spec.kind {
        FlowKind::Eruption(a, b, c) => eruption(t, (a, b, c), spec.time),
        FlowKind::Shear(i, j) => shear(t, (i, j), spec.time),
        FlowKind::Bulge(i, j) => bulge(t, (i, j), spec.time),
    }
}

pub fn apply_all<'a>(
    t: &FlagTuple,
    specs: impl IntoIterator<Item = &'a FlowSpec>,
) -> Result<FlagTuple> {
    specs
        .into_iter()
        .try_fold(t.clone(), |acc, s| apply(&acc, s))
}

/// Flows carrying coordinates `c1` to `c2`: a shear and a bulge per internal
/// edge and an eruption per triangle. Zero-time flows are kept so the
/// schedule has a fixed shape.
pub fn solve_transition(
    c1: &FGCoords,
    c2: &FGCoords,
    tri: &Triangulation,
) -> Result<Vec<FlowSpec>> {
    let mut out = Vec::new();
    for &(i, j) in tri.internal_edges() {
        let d_ij = c2.sigma(i, j)? - c1.sigma(i, j)?;
        let d_ji = c2.sigma(j, i)? - c1.sigma(j, i)?;
        out.push(FlowSpec::new(FlowKind::Shear(i, j), -(d_ij + d_ji) / 2.0));
        out.push(FlowSpec::new(FlowKind::Bulge(i, j), (d_ij - d_ji) / 2.0));
    }
    for t in tri.triangles() {
        let d = c2.tau(*t)? - c1.tau(*t)?;
        out.push(FlowSpec::new(FlowKind::Eruption(t[0], t[1], t[2]), d));
    }
    Ok(out)
}
