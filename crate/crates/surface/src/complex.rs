use crate::{Error, Result};

/// `(pants, cuff)`, cuff `k ∈ {0, 1, 2}` being the boundary of `γ_{k+1}`.
pub type Cuff = (usize, usize);

/// A pants curve glued from side `a` to side `b`. Side `a` carries the
/// `x` endpoint of the closed edge, side `b` the `y` endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Curve {
    pub a: Cuff,
    pub b: Cuff,
}

impl Curve {
    pub fn self_glued(&self) -> bool {
        self.a.0 == self.b.0
    }
}

/// Ideal triangulation adapted to a pants decomposition.
///
/// Edge ids: closed edges `0..3g−3` (one per curve), then the three
/// spiralling edges `e_0, e_1, e_2` of each pants. Triangle ids: `Δ_i = 2i`,
/// `Δ'_i = 2i + 1`. Edge `e_k` runs from the `γ_{k+1}` vertex (its x end)
/// to the `γ_{k+2}` vertex (its y end).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComplex {
    genus: usize,
    curves: Vec<Curve>,
    cuff_curve: Vec<[usize; 3]>,
}

impl SurfaceComplex {
    pub fn genus(&self) -> usize {
        self.genus
    }
    pub fn n_pants(&self) -> usize {
        2 * self.genus - 2
    }
    pub fn n_closed(&self) -> usize {
        3 * self.genus - 3
    }
    pub fn n_q(&self) -> usize {
        6 * self.genus - 6
    }
    pub fn n_edges(&self) -> usize {
        9 * self.genus - 9
    }
    pub fn n_triangles(&self) -> usize {
        4 * self.genus - 4
    }
    /// Length of the coordinate vector, two σ per edge and one τ per triangle.
    pub fn bd_len(&self) -> usize {
        2 * self.n_edges() + self.n_triangles()
    }
    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }
    pub fn curve_at(&self, pants: usize, cuff: usize) -> usize {
        self.cuff_curve[pants][cuff]
    }
    pub fn q_edge(&self, pants: usize, k: usize) -> usize {
        self.n_closed() + 3 * pants + k
    }
    pub fn is_closed(&self, edge: usize) -> bool {
        edge < self.n_closed()
    }
    pub fn delta(&self, pants: usize) -> usize {
        2 * pants
    }
    pub fn delta_prime(&self, pants: usize) -> usize {
        2 * pants + 1
    }
    /// The other side of the curve through `(pants, cuff)`.
    pub fn across(&self, pants: usize, cuff: usize) -> Cuff {
        let c = self.curves[self.curve_at(pants, cuff)];
        if c.a == (pants, cuff) {
            c.b
        } else {
            c.a
        }
    }
}

/// Default gluing: theta graph for `g = 2` (cuff `k` of `P_0` to cuff `k`
/// of `P_1`), a necklace otherwise.
pub fn standard_gluing(g: usize) -> Vec<(Cuff, Cuff)> {
    if g == 2 {
        return (0..3).map(|k| ((0, k), (1, k))).collect();
    }
    let m = 2 * g - 2;
    let mut out: Vec<(Cuff, Cuff)> = (0..m).map(|i| ((i, 1), ((i + 1) % m, 0))).collect();
    out.extend((0..m / 2).map(|j| ((2 * j, 2), (2 * j + 1, 2))));
    out
}

pub fn build_surface(g: usize, gluing: &[(Cuff, Cuff)]) -> Result<SurfaceComplex> {
    if g < 2 {
        return Err(Error::InvalidGluing(format!("genus {g} < 2")));
    }
    let m = 2 * g - 2;
    if gluing.len() != 3 * g - 3 {
        return Err(Error::InvalidGluing(format!(
            "{} curves, need {}",
            gluing.len(),
            3 * g - 3
        )));
    }
    let mut cuff_curve = vec![[usize::MAX; 3]; m];
    for (id, &(a, b)) in gluing.iter().enumerate() {
        for (p, k) in [a, b] {
            if p >= m || k >= 3 {
                return Err(Error::InvalidGluing(format!("no cuff ({p}, {k})")));
            }
            if cuff_curve[p][k] != usize::MAX {
                return Err(Error::InvalidGluing(format!("cuff ({p}, {k}) glued twice")));
            }
            cuff_curve[p][k] = id;
        }
    }
    if let Some(p) = cuff_curve.iter().position(|c| c.contains(&usize::MAX)) {
        return Err(Error::InvalidGluing(format!(
            "pants {p} has an unmatched boundary"
        )));
    }
    // connectivity
    let mut seen = vec![false; m];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for &(a, b) in gluing {
            for (u, v) in [(a.0, b.0), (b.0, a.0)] {
                if u == p && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    if seen.contains(&false) {
        return Err(Error::InvalidGluing("surface is disconnected".into()));
    }
    let curves = gluing.iter().map(|&(a, b)| Curve { a, b }).collect();
    Ok(SurfaceComplex {
        genus: g,
        curves,
        cuff_curve,
    })
}
