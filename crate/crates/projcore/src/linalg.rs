//! Small fixed-size linear algebra over any [`Real`].

use crate::real::Real;

pub type V3<R> = [R; 3];
pub type M3<R> = [[R; 3]; 3];

pub fn dot<R: Real>(a: &V3<R>, b: &V3<R>) -> R {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross<R: Real>(a: &V3<R>, b: &V3<R>) -> V3<R> {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn scale<R: Real>(a: &V3<R>, s: R) -> V3<R> {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add<R: Real>(a: &V3<R>, b: &V3<R>) -> V3<R> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub<R: Real>(a: &V3<R>, b: &V3<R>) -> V3<R> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn norm<R: Real>(a: &V3<R>) -> R {
    dot(a, a).sqrt()
}

pub fn normalize<R: Real>(a: &V3<R>) -> V3<R> {
    let n = norm(a);
    scale(a, R::one() / n)
}

pub fn det<R: Real>(m: &M3<R>) -> R {
    dot(&m[0], &cross(&m[1], &m[2]))
}

/// Determinant of the matrix whose columns are `a`, `b`, `c`.
pub fn det_cols<R: Real>(a: &V3<R>, b: &V3<R>, c: &V3<R>) -> R {
    dot(a, &cross(b, c))
}

pub fn identity<R: Real>() -> M3<R> {
    let (o, z) = (R::one(), R::zero());
    [[o, z, z], [z, o, z], [z, z, o]]
}

pub fn diag<R: Real>(d: [R; 3]) -> M3<R> {
    let z = R::zero();
    [[d[0], z, z], [z, d[1], z], [z, z, d[2]]]
}

pub fn from_cols<R: Real>(a: &V3<R>, b: &V3<R>, c: &V3<R>) -> M3<R> {
    [[a[0], b[0], c[0]], [a[1], b[1], c[1]], [a[2], b[2], c[2]]]
}

pub fn col<R: Real>(m: &M3<R>, j: usize) -> V3<R> {
    [m[0][j], m[1][j], m[2][j]]
}

pub fn transpose<R: Real>(m: &M3<R>) -> M3<R> {
    let mut t = *m;
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = *v;
        }
    }
    t
}

pub fn mul<R: Real>(a: &M3<R>, b: &M3<R>) -> M3<R> {
    let mut c = [[R::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    c
}

pub fn mul_vec<R: Real>(a: &M3<R>, v: &V3<R>) -> V3<R> {
    [dot(&a[0], v), dot(&a[1], v), dot(&a[2], v)]
}

/// Row vector times matrix, i.e. `Aᵀ v`. Pulls a covector back along `A`.
pub fn vec_mul<R: Real>(v: &V3<R>, a: &M3<R>) -> V3<R> {
    [
        v[0] * a[0][0] + v[1] * a[1][0] + v[2] * a[2][0],
        v[0] * a[0][1] + v[1] * a[1][1] + v[2] * a[2][1],
        v[0] * a[0][2] + v[1] * a[1][2] + v[2] * a[2][2],
    ]
}

pub fn frob<R: Real>(m: &M3<R>) -> R {
    let mut s = R::zero();
    for row in m {
        for v in row {
            s += *v * *v;
        }
    }
    s.sqrt()
}

pub fn mscale<R: Real>(m: &M3<R>, s: R) -> M3<R> {
    let mut out = *m;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    out
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot is exactly zero.
pub fn solve<R: Real>(a: &M3<R>, b: &V3<R>) -> Option<V3<R>> {
    let mut m = *a;
    let mut r = *b;
    for k in 0..3 {
        let mut p = k;
        for i in k + 1..3 {
            if m[i][k].abs() > m[p][k].abs() {
                p = i;
            }
        }
        if m[p][k] == R::zero() {
            return None;
        }
        m.swap(k, p);
        r.swap(k, p);
        for i in k + 1..3 {
            let f = m[i][k] / m[k][k];
            for j in k..3 {
                let t = m[k][j];
                m[i][j] -= f * t;
            }
            let t = r[k];
            r[i] -= f * t;
        }
    }
    let mut x = [R::zero(); 3];
    for i in (0..3).rev() {
        let mut s = r[i];
        for j in i + 1..3 {
            s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
    }
    Some(x)
}

pub fn inverse<R: Real>(a: &M3<R>) -> Option<M3<R>> {
    let e = identity::<R>();
    let c0 = solve(a, &col(&e, 0))?;
    let c1 = solve(a, &col(&e, 1))?;
    let c2 = solve(a, &col(&e, 2))?;
    Some(from_cols(&c0, &c1, &c2))
}

pub fn to_f64<R: Real>(m: &M3<R>) -> M3<f64> {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[i][j].f();
        }
    }
    out
}

pub fn from_f64<R: Real>(m: &M3<f64>) -> M3<R> {
    let mut out = [[R::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = R::of(m[i][j]);
        }
    }
    out
}

pub fn vto_f64<R: Real>(v: &V3<R>) -> V3<f64> {
    [v[0].f(), v[1].f(), v[2].f()]
}

pub fn vfrom_f64<R: Real>(v: &V3<f64>) -> V3<R> {
    [R::of(v[0]), R::of(v[1]), R::of(v[2])]
}
