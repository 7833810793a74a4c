use crate::develop::{Development, EdgeKind};
use crate::{Error, Result};
use std::collections::HashMap;

/// Family of closed-edge crossings: every listed edge shares a vertex with
/// the closed edge at `mid`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedBlock {
    /// Positions in [`TransverseEdgeSet::edges`].
    pub members: Vec<usize>,
    /// `(min, mid, max)` edge ids; `mid` is the closed edge.
    pub triple: (usize, usize, usize),
}

/// Developed edges crossing the geodesic from `x0` to `y0`, ordered from
/// `x0` to `y0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransverseEdgeSet {
    pub edges: Vec<usize>,
    /// For each edge, `(distance of its endpoint in (x0, y0) from x0,
    /// distance of its endpoint in (y0, x0) back to x0)`; both weakly increase.
    pub keys: Vec<(usize, usize)>,
    pub triangles: Vec<usize>,
    pub closed_blocks: Vec<ClosedBlock>,
    /// Edge positions strictly between consecutive closed blocks (and before
    /// the first, after the last).
    pub gaps: Vec<Vec<usize>>,
}

impl TransverseEdgeSet {
    /// Edge list with each closed block replaced by its min/mid/max triple.
    pub fn condensed(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (j, gap) in self.gaps.iter().enumerate() {
            out.extend(gap.iter().map(|&p| self.edges[p]));
            if let Some(b) = self.closed_blocks.get(j) {
                let (a, m, c) = b.triple;
                out.push(a);
                if m != a {
                    out.push(m);
                }
                if c != m {
                    out.push(c);
                }
            }
        }
        out
    }
}

pub fn transverse_edge_set(d: &Development, x0: usize, y0: usize) -> Result<TransverseEdgeSet> {
    let n = d.n_vertices();
    if x0 >= n || y0 >= n {
        return Err(Error::OutOfDepth(format!(
            "vertex outside the development ({n} vertices)"
        )));
    }
    if x0 == y0 {
        return Err(Error::Invalid("endpoints coincide".into()));
    }
    let fwd = |v: usize| (v + n - x0) % n;
    let span = fwd(y0);
    let upper = |v: usize| fwd(v) > 0 && fwd(v) < span;
    let mut found: Vec<((usize, usize), usize)> = Vec::new();
    for (id, e) in d.edges().iter().enumerate() {
        let (p, q) = e.ends;
        if [p, q].iter().any(|v| *v == x0 || *v == y0) || upper(p) == upper(q) {
            continue;
        }
        let (u, w) = if upper(p) { (p, q) } else { (q, p) };
        found.push(((fwd(u), (x0 + n - w) % n), id));
    }
    found.sort();
    let edges: Vec<usize> = found.iter().map(|x| x.1).collect();
    let keys: Vec<(usize, usize)> = found.iter().map(|x| x.0).collect();

    let mut by_verts: HashMap<[usize; 3], usize> = HashMap::new();
    for (id, t) in d.triangles().iter().enumerate() {
        let mut v = t.verts;
        v.sort_unstable();
        by_verts.insert(v, id);
    }
    let mut triangles = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (d.edges()[w[0]].ends, d.edges()[w[1]].ends);
        let mut v = vec![a.0, a.1, b.0, b.1];
        v.sort_unstable();
        v.dedup();
        if v.len() == 3 {
            if let Some(&t) = by_verts.get(&[v[0], v[1], v[2]]) {
                triangles.push(t);
            }
        }
    }

    let mut closed_blocks = Vec::new();
    let mut in_block = vec![false; edges.len()];
    for &id in &edges {
        if !matches!(d.edges()[id].kind, EdgeKind::Closed(_)) {
            continue;
        }
        let (x, y) = d.edges()[id].ends;
        let members: Vec<usize> = (0..edges.len())
            .filter(|&k| {
                let (p, q) = d.edges()[edges[k]].ends;
                [p, q].iter().any(|v| *v == x || *v == y)
            })
            .collect();
        for &m in &members {
            in_block[m] = true;
        }
        let triple = (edges[members[0]], id, edges[*members.last().unwrap()]);
        closed_blocks.push(ClosedBlock { members, triple });
    }
    let mut gaps = vec![Vec::new(); closed_blocks.len() + 1];
    for k in (0..edges.len()).filter(|&k| !in_block[k]) {
        let j = closed_blocks.iter().filter(|b| b.members[0] < k).count();
        gaps[j].push(k);
    }
    Ok(TransverseEdgeSet {
        edges,
        keys,
        triangles,
        closed_blocks,
        gaps,
    })
}
