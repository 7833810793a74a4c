use crate::{Error, Result};
use projcore::linalg::{self, M3};
use projcore::{eigen_decompose, tol, ProjMap, Real};

/// `∏_{k≥0} r^k u r^{-k}` (later factors on the left) for loxodromic `r` and
/// `u` unipotent upper triangular in the eigenbasis of `r` ordered by
/// increasing eigenvalue.
pub fn unipotent_limit(r: &ProjMap, u: &ProjMap) -> Result<ProjMap> {
    let e = eigen_decompose(r).map_err(|e| match e {
        projcore::Error::SpectralGapTooSmall(g) => Error::SpectralGapTooSmall(g),
        e => e.into(),
    })?;
    // eigen_decompose sorts decreasingly
    let cols = [2, 1, 0].map(|i| e.vectors[i].coords());
    let p = linalg::from_cols(&cols[0], &cols[1], &cols[2]);
    let eig = [e.values[2], e.values[1], e.values[0]];
    let l = limit_in_basis(&p, eig, &u.matrix())?;
    Ok(ProjMap::new(l)?)
}

/// Core of [`unipotent_limit`]: `p` holds eigenvectors of `r` as columns for
/// the eigenvalues `eig = (α, β, γ)`, `α < β < γ`.
pub(crate) fn limit_in_basis<R: Real>(p: &M3<R>, eig: [R; 3], u: &M3<R>) -> Result<M3<R>> {
    let [al, be, ga] = eig;
    let gap = tol().gap;
    let r1 = (be / al).f();
    let r2 = (ga / be).f();
    if !(al.f() > 0.0) || r1 < 1.0 + gap || r2 < 1.0 + gap {
        return Err(Error::SpectralGapTooSmall(r1.min(r2) - 1.0));
    }
    let pi = linalg::inverse(p).ok_or_else(|| Error::Degenerate("singular eigenbasis".into()))?;
    let w = linalg::mul(&linalg::mul(&pi, u), p);
    let d = w[0][0];
    let w = linalg::mscale(&w, R::one() / d);
    let scale = linalg::frob(&w).f();
    let eps = 1e-8 * scale;
    let lower = [(1, 0), (2, 0), (2, 1)]
        .iter()
        .map(|&(i, j)| w[i][j].f().abs())
        .fold(0.0, f64::max);
    let diag = ((w[1][1] - R::one()).f().abs()).max((w[2][2] - R::one()).f().abs());
    if lower > eps || diag > 1e-8 {
        return Err(Error::NotUnipotent(format!(
            "lower part {lower:e}, diagonal defect {diag:e}"
        )));
    }
    let (a, b, c) = (w[0][1], w[0][2], w[1][2]);
    let o = R::one();
    let z = R::zero();
    let l = [
        [
            o,
            a * be / (be - al),
            b * ga / (ga - al) + a * c * al * ga / ((be - al) * (ga - al)),
        ],
        [z, o, c * ga / (ga - be)],
        [z, z, o],
    ];
    Ok(linalg::mul(&linalg::mul(p, &l), &pi))
}
