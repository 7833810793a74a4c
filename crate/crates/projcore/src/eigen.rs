use crate::error::{Error, Result};
use crate::geom::{join, Flag, ProjPoint};
use crate::linalg::{self, M3, V3};
use crate::map::ProjMap;
use crate::tol::tol;

/// Eigen-data of a loxodromic map, eigenvalues in decreasing order,
/// for the representative of determinant one.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigen {
    pub values: [f64; 3],
    pub vectors: [ProjPoint; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenFlags {
    /// `log(λ₁/λ₂)` and `log(λ₂/λ₃)`.
    pub log_ratios: [f64; 2],
    pub attracting: Flag,
    pub neutral: ProjPoint,
    pub repelling: Flag,
}

/// Largest root of λ³ − a λ² + b λ − 1, assuming three positive roots.
fn top_root(a: f64, b: f64) -> Result<f64> {
    // depressed cubic in t = λ − a/3
    let p = b - a * a / 3.0;
    let q = -2.0 * a * a * a / 27.0 + a * b / 3.0 - 1.0;
    if p >= 0.0 {
        return Err(Error::NotLoxodromic(
            "repeated or complex eigenvalues".into(),
        ));
    }
    let disc = 4.0 * p * p * p + 27.0 * q * q;
    if disc > 0.0 {
        return Err(Error::NotLoxodromic("complex eigenvalues".into()));
    }
    let r = 2.0 * (-p / 3.0).sqrt();
    let arg = ((3.0 * q) / (p * r)).clamp(-1.0, 1.0);
    let mut x = r * (arg.acos() / 3.0).cos() + a / 3.0;
    // Newton polish; the top root is well conditioned
    for _ in 0..3 {
        let f = ((x - a) * x + b) * x - 1.0;
        let df = (3.0 * x - 2.0 * a) * x + b;
        if df != 0.0 {
            x -= f / df;
        }
    }
    Ok(x)
}

fn char_coeffs(m: &M3<f64>) -> (f64, f64) {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    (tr, minors)
}

/// Null vector of a rank-two matrix: the best-conditioned cross product of two rows.
fn null_vector(a: &M3<f64>) -> V3<f64> {
    let c = [
        linalg::cross(&a[0], &a[1]),
        linalg::cross(&a[0], &a[2]),
        linalg::cross(&a[1], &a[2]),
    ];
    *c.iter()
        .max_by(|x, y| linalg::norm(x).total_cmp(&linalg::norm(y)))
        .unwrap()
}

fn shifted(m: &M3<f64>, lam: f64) -> M3<f64> {
    let mut a = *m;
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= lam;
    }
    a
}

pub fn eigen_decompose(map: &ProjMap) -> Result<Eigen> {
    let mut m = map.matrix();
    let d = linalg::det(&m);
    m = linalg::mscale(&m, 1.0 / d.cbrt());
    let inv = linalg::inverse(&m).ok_or(Error::Singular(0.0))?;
    let (a, b) = char_coeffs(&m);
    let (ai, bi) = char_coeffs(&inv);
    // top of M and top of M⁻¹ are both computed with good relative accuracy
    let l1 = top_root(a, b)?;
    let l3 = 1.0 / top_root(ai, bi)?;
    let l2 = 1.0 / (l1 * l3);
    if !(l1 > 0.0 && l2 > 0.0 && l3 > 0.0) {
        return Err(Error::NotLoxodromic("non-positive eigenvalue".into()));
    }
    let g = tol().gap;
    let gap = (l1 / l2).ln().min((l2 / l3).ln());
    if !(gap > g) {
        return Err(Error::SpectralGapTooSmall(gap));
    }
    let v1 = null_vector(&shifted(&m, l1));
    let v2 = null_vector(&shifted(&m, l2));
    let v3 = null_vector(&shifted(&inv, 1.0 / l3));
    Ok(Eigen {
        values: [l1, l2, l3],
        vectors: [
            ProjPoint::new(v1)?,
            ProjPoint::new(v2)?,
            ProjPoint::new(v3)?,
        ],
    })
}

pub fn eigen_flags(map: &ProjMap) -> Result<EigenFlags> {
    let e = eigen_decompose(map)?;
    let [l1, l2, l3] = e.values;
    let [v1, v2, v3] = e.vectors;
    Ok(EigenFlags {
        log_ratios: [(l1 / l2).ln(), (l2 / l3).ln()],
        attracting: Flag::new(v1, join(&v1, &v2)?)?,
        neutral: v2,
        repelling: Flag::new(v3, join(&v3, &v2)?)?,
    })
}
