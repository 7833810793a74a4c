use crate::complex::{build_surface, standard_gluing, SurfaceComplex};
use crate::{Error, Result};
use projcore::tol;
use serde::{Deserialize, Serialize};

/// Bonahon–Dreyer coordinates, indexed by the edge and triangle ids of a
/// [`SurfaceComplex`].
#[derive(Clone, Debug, PartialEq)]
pub struct BDCoords {
    pub genus: usize,
    pub sigma_x: Vec<f64>,
    pub sigma_y: Vec<f64>,
    pub tau: Vec<f64>,
}

impl BDCoords {
    pub fn constant(s: &SurfaceComplex, sigma: f64, tau: f64) -> Self {
        BDCoords {
            genus: s.genus(),
            sigma_x: vec![sigma; s.n_edges()],
            sigma_y: vec![sigma; s.n_edges()],
            tau: vec![tau; s.n_triangles()],
        }
    }

    /// Vector layout: `[σ_x(0), σ_y(0), σ_x(1), …, τ(0), τ(1), …]`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .sigma_x
            .iter()
            .zip(&self.sigma_y)
            .flat_map(|(a, b)| [*a, *b])
            .collect();
        v.extend(&self.tau);
        v
    }

    pub fn from_vec(s: &SurfaceComplex, v: &[f64]) -> Result<Self> {
        if v.len() != s.bd_len() {
            return Err(Error::LengthMismatch {
                expected: s.bd_len(),
                got: v.len(),
            });
        }
        let ne = s.n_edges();
        Ok(BDCoords {
            genus: s.genus(),
            sigma_x: (0..ne).map(|e| v[2 * e]).collect(),
            sigma_y: (0..ne).map(|e| v[2 * e + 1]).collect(),
            tau: v[2 * ne..].to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.sigma_x.len() + self.sigma_y.len() + self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max_diff(&self, other: &BDCoords) -> f64 {
        self.to_vec()
            .iter()
            .zip(other.to_vec())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_len(&self, s: &SurfaceComplex) -> Result<()> {
        let ok = self.sigma_x.len() == s.n_edges() && self.sigma_y.len() == s.n_edges();
        if !ok || self.tau.len() != s.n_triangles() {
            return Err(Error::LengthMismatch {
                expected: s.bd_len(),
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// Coordinates seen from one pants: σ at the x and y ends of `e_0, e_1, e_2`
/// and the τ of `Δ`, `Δ'`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PantsCoords {
    pub sigma: [(f64, f64); 3],
    pub tau: [f64; 2],
}

impl PantsCoords {
    /// Sum of σ at the `γ_{k+1}` vertex ends of the two edges meeting it.
    pub fn s(&self, k: usize) -> f64 {
        self.sigma[k].0 + self.sigma[(k + 2) % 3].1
    }
    /// Sum of σ at the other ends of those two edges.
    pub fn o(&self, k: usize) -> f64 {
        self.sigma[k].1 + self.sigma[(k + 2) % 3].0
    }
    pub fn tau_sum(&self) -> f64 {
        self.tau[0] + self.tau[1]
    }
}

pub fn pants_coords(s: &SurfaceComplex, c: &BDCoords, i: usize) -> PantsCoords {
    let e = |k| s.q_edge(i, k);
    PantsCoords {
        sigma: [0, 1, 2].map(|k| (c.sigma_x[e(k)], c.sigma_y[e(k)])),
        tau: [c.tau[s.delta(i)], c.tau[s.delta_prime(i)]],
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveReport {
    pub curve: usize,
    pub residuals: [f64; 2],
    pub margins: [f64; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub curves: Vec<CurveReport>,
    pub accepted: bool,
}

impl ValidationReport {
    pub fn max_residual(&self) -> f64 {
        self.curves
            .iter()
            .flat_map(|c| c.residuals)
            .map(f64::abs)
            .fold(0.0, f64::max)
    }
    pub fn min_margin(&self) -> f64 {
        self.curves
            .iter()
            .flat_map(|c| c.margins)
            .fold(f64::INFINITY, f64::min)
    }
    /// Number of equality residuals above the tolerance.
    pub fn violations(&self) -> usize {
        let eps = tol().cl;
        self.curves
            .iter()
            .flat_map(|c| c.residuals)
            .filter(|r| r.abs() >= eps)
            .count()
    }
}

pub fn validate_bd(s: &SurfaceComplex, c: &BDCoords) -> Result<ValidationReport> {
    c.check_len(s)?;
    let eps = tol().cl;
    let mut curves = Vec::new();
    for (id, cv) in s.curves().iter().enumerate() {
        let (pa, pb) = (pants_coords(s, c, cv.a.0), pants_coords(s, c, cv.b.0));
        let (a, b) = (cv.a.1, cv.b.1);
        let l1 = (pa.s(a), pb.o(b) + pb.tau_sum());
        let l2 = (pa.o(a) + pa.tau_sum(), pb.s(b));
        curves.push(CurveReport {
            curve: id,
            residuals: [l1.0 - l1.1, l2.0 - l2.1],
            margins: [l1.0.min(l1.1), l2.0.min(l2.1)],
        });
    }
    let accepted = curves
        .iter()
        .all(|r| r.residuals.iter().all(|x| x.abs() < eps) && r.margins.iter().all(|m| *m > 0.0));
    Ok(ValidationReport { curves, accepted })
}

pub(crate) fn require_valid(s: &SurfaceComplex, c: &BDCoords) -> Result<()> {
    let r = validate_bd(s, c)?;
    if r.accepted {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "closed leaf residual {:e}, margin {:e}",
            r.max_residual(),
            r.min_margin()
        )))
    }
}

/// Rows of the closed-leaf equality system, two per curve, in the
/// [`BDCoords::to_vec`] layout.
pub fn relation_matrix(s: &SurfaceComplex) -> Vec<Vec<f64>> {
    let n = s.bd_len();
    let ne = s.n_edges();
    let sx = |e: usize| 2 * e;
    let sy = |e: usize| 2 * e + 1;
    let tau = |t: usize| 2 * ne + t;
    // (S, O + τ) of a cuff as column lists
    let s_cols = |p: usize, k: usize| vec![sx(s.q_edge(p, k)), sy(s.q_edge(p, (k + 2) % 3))];
    let ot_cols = |p: usize, k: usize| {
        vec![
            sy(s.q_edge(p, k)),
            sx(s.q_edge(p, (k + 2) % 3)),
            tau(s.delta(p)),
            tau(s.delta_prime(p)),
        ]
    };
    let mut rows = Vec::new();
    for cv in s.curves() {
        for (plus, minus) in [
            (s_cols(cv.a.0, cv.a.1), ot_cols(cv.b.0, cv.b.1)),
            (ot_cols(cv.a.0, cv.a.1), s_cols(cv.b.0, cv.b.1)),
        ] {
            let mut row = vec![0.0; n];
            for j in plus {
                row[j] += 1.0;
            }
            for j in minus {
                row[j] -= 1.0;
            }
            rows.push(row);
        }
    }
    rows
}

/// Rank by Gaussian elimination with partial pivoting.
pub fn numeric_rank(rows: &[Vec<f64>], eps: f64) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) =
            (rank..m.len()).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
        else {
            break;
        };
        if m[piv][col].abs() <= eps {
            continue;
        }
        m.swap(rank, piv);
        for i in 0..m.len() {
            if i != rank {
                let f = m[i][col] / m[rank][col];
                if f != 0.0 {
                    for j in col..ncols {
                        m[i][j] -= f * m[rank][j];
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(parameter count, rank of the equalities, dimension)` for the standard
/// gluing of genus `g`.
pub fn bd_dimension(g: usize) -> Result<(usize, usize, usize)> {
    let s = build_surface(g, &standard_gluing(g))?;
    let n = s.bd_len();
    let r = numeric_rank(&relation_matrix(&s), 1e-9);
    Ok((n, r, n - r))
}

/// Nearest point (Euclidean) satisfying the closed-leaf equalities.
pub fn project_to_equalities(s: &SurfaceComplex, c: &BDCoords) -> Result<BDCoords> {
    c.check_len(s)?;
    let r = relation_matrix(s);
    let v = c.to_vec();
    let m = r.len();
    let dotv = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // (R Rᵀ) y = R v, augmented
    let mut a: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut row: Vec<f64> = (0..m).map(|j| dotv(&r[i], &r[j])).collect();
            row.push(dotv(&r[i], &v));
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        let p = a[col][col];
        if p.abs() < 1e-12 {
            return Err(Error::Degenerate("relation system is singular".into()));
        }
        for i in 0..m {
            if i != col {
                let f = a[i][col] / p;
                for j in col..=m {
                    a[i][j] -= f * a[col][j];
                }
            }
        }
    }
    let y: Vec<f64> = (0..m).map(|i| a[i][m] / a[i][i]).collect();
    let mut out = v.clone();
    for (i, row) in r.iter().enumerate() {
        for (o, x) in out.iter_mut().zip(row) {
            *o -= y[i] * x;
        }
    }
    BDCoords::from_vec(s, &out)
}

/// The two common values of the closed-leaf equalities of `curve`:
/// `log λ₁/λ₂` and `log λ₂/λ₃` of the holonomy of the cuff on side `a`.
pub fn boundary_log_eigen(s: &SurfaceComplex, c: &BDCoords, curve: usize) -> Result<(f64, f64)> {
    c.check_len(s)?;
    let cv = s
        .curves()
        .get(curve)
        .ok_or_else(|| Error::Invalid(format!("no curve {curve}")))?;
    let (pa, pb) = (pants_coords(s, c, cv.a.0), pants_coords(s, c, cv.b.0));
    let v1 = 0.5 * (pa.s(cv.a.1) + pb.o(cv.b.1) + pb.tau_sum());
    let v2 = 0.5 * (pa.o(cv.a.1) + pa.tau_sum() + pb.s(cv.b.1));
    Ok((v1, v2))
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    id: usize,
    closed: bool,
    sigma_x: f64,
    sigma_y: f64,
}

#[derive(Serialize, Deserialize)]
struct TriJson {
    id: usize,
    tau: f64,
}

#[derive(Serialize, Deserialize, PartialEq)]
struct Conventions {
    zz_choice: String,
    orientation: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            zz_choice: "canonical-spiral".into(),
            orientation: "left-of-boundary".into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BdFile {
    genus: usize,
    edges: Vec<EdgeJson>,
    triangles: Vec<TriJson>,
    #[serde(default)]
    conventions: Conventions,
}

/// Parse a coordinate file (ids 1-based) on the standard gluing.
pub fn parse_bd(text: &str) -> Result<(SurfaceComplex, BDCoords)> {
    let f: BdFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if f.conventions != Conventions::default() {
        return Err(Error::Format("unsupported conventions".into()));
    }
    let s = build_surface(f.genus, &standard_gluing(f.genus))?;
    let mut c = BDCoords::constant(&s, f64::NAN, f64::NAN);
    let (ne, nt) = (s.n_edges(), s.n_triangles());
    if f.edges.len() != ne || f.triangles.len() != nt {
        return Err(Error::LengthMismatch {
            expected: s.bd_len(),
            got: 2 * f.edges.len() + f.triangles.len(),
        });
    }
    for e in &f.edges {
        if e.id == 0 || e.id > ne || !c.sigma_x[e.id - 1].is_nan() {
            return Err(Error::Format(format!("bad or repeated edge id {}", e.id)));
        }
        if e.closed != s.is_closed(e.id - 1) {
            return Err(Error::Format(format!(
                "edge {} has the wrong closed flag",
                e.id
            )));
        }
        c.sigma_x[e.id - 1] = e.sigma_x;
        c.sigma_y[e.id - 1] = e.sigma_y;
    }
    for t in &f.triangles {
        if t.id == 0 || t.id > nt || !c.tau[t.id - 1].is_nan() {
            return Err(Error::Format(format!(
                "bad or repeated triangle id {}",
                t.id
            )));
        }
        c.tau[t.id - 1] = t.tau;
    }
    Ok((s, c))
}

pub fn bd_to_json(s: &SurfaceComplex, c: &BDCoords) -> String {
    let f = BdFile {
        genus: s.genus(),
        edges: (0..s.n_edges())
            .map(|e| EdgeJson {
                id: e + 1,
                closed: s.is_closed(e),
                sigma_x: c.sigma_x[e],
                sigma_y: c.sigma_y[e],
            })
            .collect(),
        triangles: c
            .tau
            .iter()
            .enumerate()
            .map(|(i, t)| TriJson { id: i + 1, tau: *t })
            .collect(),
        conventions: Conventions::default(),
    };
    serde_json::to_string_pretty(&f).unwrap()
}
