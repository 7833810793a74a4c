//! Closed-form attachment of a flag across an edge with prescribed
//! edge and triangle invariants. Generic over the scalar type so the
//! surface developments can run the same formulas in double-double.

use invariants::triple_ratio_raw;
use projcore::linalg::{self, V3};
use projcore::map::flag_frame;
use projcore::Real;

/// A flag as raw representatives `(p, l)`.
pub type RawFlag<R> = (V3<R>, V3<R>);

/// Point of the new vertex `n` across the edge `{a, b}` from a known vertex `c`,
/// where `n` lies in the arc `(a, b)` and `c` in the arc `(b, a)`.
///
/// `e_ab = exp σ_{a,b}` and `e_ba = exp σ_{b,a}`.
pub fn new_point<R: Real>(
    fa: &RawFlag<R>,
    fb: &RawFlag<R>,
    pc: &V3<R>,
    e_ab: R,
    e_ba: R,
) -> Option<V3<R>> {
    let q = linalg::cross(&fa.1, &fb.1);
    let b = linalg::from_cols(&fa.0, &q, &fb.0);
    let k = linalg::solve(&b, pc)?;
    let n = [-e_ba * k[0] / k[1], R::one(), -k[2] / (e_ab * k[1])];
    Some(linalg::mul_vec(&b, &n))
}

/// Line through `pn` making `T(F_x, F_y, (pn, ·)) = e_tau`.
pub fn line_for<R: Real>(fx: &RawFlag<R>, fy: &RawFlag<R>, pn: &V3<R>, e_tau: R) -> V3<R> {
    let k = linalg::dot(&fx.1, &fy.0) * linalg::dot(&fy.1, pn)
        / (linalg::dot(&fx.1, pn) * linalg::dot(&fy.1, &fx.0));
    let c = e_tau / k;
    linalg::cross(pn, &linalg::sub(&fx.0, &linalg::scale(&fy.0, c)))
}

/// The new flag across `{a, b}`: point from [`new_point`], line fixing
/// `T(F_a, F_n, F_b) = e_tau`.
pub fn new_flag<R: Real>(
    fa: &RawFlag<R>,
    fb: &RawFlag<R>,
    pc: &V3<R>,
    e_ab: R,
    e_ba: R,
    e_tau: R,
) -> Option<RawFlag<R>> {
    let pn = new_point(fa, fb, pc, e_ab, e_ba)?;
    let ln = line_for(fb, fa, &pn, e_tau);
    Some((pn, ln))
}

/// Seed flags of a triangle with `T(F_1, F_2, F_3) = e_tau`.
pub fn seed_triangle<R: Real>(e_tau: R) -> [RawFlag<R>; 3] {
    let (o, z) = (R::one(), R::zero());
    [
        ([z, o, o], [o, z, z]),
        ([o, z, o], [z, o, z]),
        ([o / e_tau, o, z], [z, z, o]),
    ]
}

/// `σ = log(−C(l_x, p_z, p_z', p_x ∨ p_y))`, with `z` in the arc `(x, y)` and `z'` in `(y, x)`.
pub fn sigma_raw<R: Real>(fx: &RawFlag<R>, py: &V3<R>, pz: &V3<R>, pzp: &V3<R>) -> R {
    let m = linalg::cross(&fx.0, py);
    let c = invariants::cross_ratio_raw(&fx.1, pz, pzp, &m);
    (-c).rln()
}

pub fn tau_raw<R: Real>(f1: &RawFlag<R>, f2: &RawFlag<R>, f3: &RawFlag<R>) -> R {
    triple_ratio_raw([&f1.0, &f2.0, &f3.0], [&f1.1, &f2.1, &f3.1]).rln()
}

/// Matrix of the map pinning flag data, generic version of `map_from_flag_data`.
pub fn pin<R: Real>(
    src: (&RawFlag<R>, &RawFlag<R>, &V3<R>),
    dst: (&RawFlag<R>, &RawFlag<R>, &V3<R>),
) -> Option<linalg::M3<R>> {
    let fs = flag_frame(&src.0 .0, &src.0 .1, &src.1 .0, &src.1 .1, src.2)?;
    let fd = flag_frame(&dst.0 .0, &dst.0 .1, &dst.1 .0, &dst.1 .1, dst.2)?;
    Some(linalg::mul(&fd, &linalg::inverse(&fs)?))
}
