use crate::bd::{pants_coords, require_valid, BDCoords};
use crate::complex::SurfaceComplex;
use crate::fan::{cuff_data, pin_pm, place_opposite, Pm};
use crate::lift::{develop_lift, edge_class, Lift, TriKind};
use crate::word::Word;
use crate::{Error, Result};
use flagconfig::attach::RawFlag;
use projcore::linalg::{self, V3};
use projcore::{Dd, Flag, ProjMap, Real};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq)]
pub struct LiftInfo {
    pub pants: usize,
    /// `None` for the base lift, else the base cuff it sits across.
    pub cuff: Option<usize>,
    /// Triangle id of its `Δ`.
    pub root: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DevTriangle {
    pub lift: usize,
    pub word: Word,
    pub kind: TriKind,
    /// Vertex ids in cyclic order.
    pub verts: [usize; 3],
    pub ring: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Lift of `e_k` of the lift's pants.
    Spiral(usize),
    /// Lift of the closed edge of a curve.
    Closed(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DevEdge {
    /// `(x end, y end)`.
    pub ends: (usize, usize),
    pub lift: Option<usize>,
    pub kind: EdgeKind,
    pub ring: usize,
}

/// A boundary closed edge of the base lift with the vertices used for its σ pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedSite {
    pub cuff: usize,
    pub curve: usize,
    /// Base vertex on the curve and its spiralling neighbour.
    pub x: usize,
    pub z: usize,
    /// Vertex of the neighbouring lift on the curve and its neighbour.
    pub y: usize,
    pub zp: usize,
    /// True when the base pants is side `b` of the curve, so that `x`
    /// here is the curve's `y` endpoint.
    pub swapped: bool,
}

/// Flags on the vertices of a pants lift and its three neighbours.
/// Vertex ids are positions in the cyclic order of the circle at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct Development {
    pub(crate) pants: usize,
    pub(crate) depth: usize,
    pub(crate) word_len: usize,
    pub(crate) lifts: Vec<LiftInfo>,
    pub(crate) vlift: Vec<(usize, usize)>,
    pub(crate) flags: Vec<RawFlag<Dd>>,
    pub(crate) tris: Vec<DevTriangle>,
    pub(crate) edges: Vec<DevEdge>,
    pub(crate) sites: Vec<ClosedSite>,
    pub(crate) base_index: HashMap<(Word, TriKind), usize>,
    /// Flags pinned by the stage renormalization: `F` at `γ₁⁻`, `γ₂⁻`, `p` at `γ₃⁻`.
    pub(crate) anchor: [RawFlag<Dd>; 3],
}

impl Development {
    pub fn pants(&self) -> usize {
        self.pants
    }
    pub fn depth(&self) -> usize {
        self.depth
    }
    pub fn n_vertices(&self) -> usize {
        self.flags.len()
    }
    pub fn lifts(&self) -> &[LiftInfo] {
        &self.lifts
    }
    pub fn triangles(&self) -> &[DevTriangle] {
        &self.tris
    }
    pub fn edges(&self) -> &[DevEdge] {
        &self.edges
    }
    pub fn sites(&self) -> &[ClosedSite] {
        &self.sites
    }
    /// `(lift, type)` of a vertex.
    pub fn vertex(&self, v: usize) -> (usize, usize) {
        self.vlift[v]
    }
    pub fn flag(&self, v: usize) -> Result<Flag> {
        let (p, l) = &self.flags[v];
        let u = |x: &V3<Dd>| linalg::vto_f64(&linalg::normalize(x));
        Ok(Flag::from_coords(u(p), u(l)).or_else(|_| {
            // incidence can fail in f64 after normalization of crowded flags; project
            let pf = u(p);
            let mut lf = u(l);
            let d: f64 = lf.iter().zip(&pf).map(|(a, b)| a * b).sum();
            for i in 0..3 {
                lf[i] -= d * pf[i];
            }
            Flag::from_coords(pf, lf)
        })?)
    }
    /// Vertex of the given type in the root triangle of a lift.
    pub fn root_vertex(&self, lift: usize, vtype: usize) -> usize {
        let t = &self.tris[self.lifts[lift].root];
        *t.verts.iter().find(|&&v| self.vlift[v].1 == vtype).unwrap()
    }
    pub(crate) fn anchor_now(&self) -> [RawFlag<Dd>; 3] {
        [0, 1, 2].map(|k| self.flags[self.root_vertex(0, k)])
    }
    /// Triangles (ids) of the base lift for a group element.
    pub fn find(&self, word: &Word, kind: TriKind) -> Option<usize> {
        self.base_index.get(&(word.clone(), kind)).copied()
    }
}

enum Item {
    V(usize),
    Marker(usize),
}

fn traverse(l: &Lift) -> Vec<Item> {
    fn sub(l: &Lift, node: usize, j: usize, out: &mut Vec<Item>) {
        let nd = &l.nodes[node];
        match nd.nbr[j] {
            Some(m) if !(node != 0 && j == 2) => {
                let c = &l.nodes[m];
                sub(l, m, 0, out);
                out.push(Item::V(c.verts[1]));
                sub(l, m, 1, out);
            }
            None => {
                let w = nd.verts[(j + 1) % 3];
                if w < 3 {
                    out.push(Item::Marker(l.vtype[w]));
                }
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    for j in 0..3 {
        out.push(Item::V(l.nodes[0].verts[j]));
        sub(l, 0, j, &mut out);
    }
    out
}

fn root_of_type(l: &Lift, t: usize) -> usize {
    *l.nodes[0].verts.iter().find(|&&v| l.vtype[v] == t).unwrap()
}

/// Develop the lift of `pants` to dual-tree radius `depth` (rings
/// `N_1..N_depth`, `N_1 = {Δ}`), and the neighbouring lift across each cuff
/// to the same radius. Holonomy words are limited to `word_len` generators.
pub fn develop(
    s: &SurfaceComplex,
    c: &BDCoords,
    pants: usize,
    depth: usize,
    word_len: usize,
) -> Result<Development> {
    require_valid(s, c)?;
    if pants >= s.n_pants() || depth == 0 {
        return Err(Error::Invalid(format!("pants {pants}, depth {depth}")));
    }
    let pc = pants_coords(s, c, pants);
    let base = develop_lift(&pc, depth)?;
    let small = develop_lift(&pc, 4)?;
    let mut lifts: Vec<(Lift, usize, Option<usize>)> = vec![(base, pants, None)];
    let mut glue = vec![Pm::identity()];
    for a in 0..3 {
        let curve = s.curve_at(pants, a);
        let swapped = s.curves()[curve].a != (pants, a);
        let (pb, b) = s.across(pants, a);
        let (sx, sy) = (c.sigma_x[curve], c.sigma_y[curve]);
        let sig = if swapped { (sy, sx) } else { (sx, sy) };
        let (_, fy) = cuff_data(&small, a)?;
        let base = &lifts[0].0;
        let fx = base.flags[root_of_type(base, a)];
        let pz = base.flags[root_of_type(base, (a + 1) % 3)].0;
        let pzp = place_opposite(&fx, &fy, &pz, sig.0, sig.1);
        let pcb = pants_coords(s, c, pb);
        let lb = develop_lift(&pcb, depth)?;
        let (_, ex) = cuff_data(&develop_lift(&pcb, 4)?, b)?;
        let g = pin_pm(
            (
                &lb.flags[root_of_type(&lb, b)],
                &ex,
                &lb.flags[root_of_type(&lb, (b + 1) % 3)].0,
            ),
            (&fy, &fx, &pzp),
        )?;
        lifts.push((lb, pb, Some(a)));
        glue.push(g);
    }

    // cyclic order: the base traversal with each neighbour spliced in at its marker
    let mut order: Vec<(usize, usize)> = Vec::new();
    for item in traverse(&lifts[0].0) {
        match item {
            Item::V(v) => order.push((0, v)),
            Item::Marker(a) => {
                let li = a + 1;
                let lb = &lifts[li].0;
                let b = s.across(pants, a).1;
                let items = traverse(lb);
                let at = items
                    .iter()
                    .position(|it| matches!(it, Item::Marker(t) if *t == b))
                    .ok_or_else(|| Error::Degenerate("neighbour marker missing".into()))?;
                let n = items.len();
                for k in 1..n {
                    if let Item::V(v) = items[(at + k) % n] {
                        order.push((li, v));
                    }
                }
            }
        }
    }
    let mut rank: HashMap<(usize, usize), usize> = HashMap::new();
    for (r, key) in order.iter().enumerate() {
        rank.insert(*key, r);
    }
    let total: usize = lifts.iter().map(|l| l.0.flags.len()).sum();
    if rank.len() != total {
        return Err(Error::Degenerate("cyclic order lost vertices".into()));
    }
    let flags: Vec<RawFlag<Dd>> = order
        .iter()
        .map(|&(li, v)| glue[li].flag(&lifts[li].0.flags[v]))
        .collect();
    let vlift: Vec<(usize, usize)> = order
        .iter()
        .map(|&(li, v)| (li, lifts[li].0.vtype[v]))
        .collect();

    let mut tris = Vec::new();
    let mut infos = Vec::new();
    let mut base_index = HashMap::new();
    let mut edge_at: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges = Vec::new();
    for (li, (l, p, cuff)) in lifts.iter().enumerate() {
        infos.push(LiftInfo {
            pants: *p,
            cuff: *cuff,
            root: tris.len(),
        });
        for nd in &l.nodes {
            let verts = nd.verts.map(|v| rank[&(li, v)]);
            if li == 0 {
                base_index.insert((nd.word.clone(), nd.kind), tris.len());
            }
            tris.push(DevTriangle {
                lift: li,
                word: nd.word.clone(),
                kind: nd.kind,
                verts,
                ring: nd.ring,
            });
            for j in 0..3 {
                let (u, w) = (verts[j], verts[(j + 1) % 3]);
                let key = (u.min(w), u.max(w));
                if let Some(&e) = edge_at.get(&key) {
                    let ed: &mut DevEdge = &mut edges[e];
                    ed.ring = ed.ring.min(nd.ring);
                    continue;
                }
                let (tu, tw) = (vlift[u].1, vlift[w].1);
                let k = edge_class(tu, tw);
                let ends = if tu == k { (u, w) } else { (w, u) };
                edge_at.insert(key, edges.len());
                edges.push(DevEdge {
                    ends,
                    lift: Some(li),
                    kind: EdgeKind::Spiral(k),
                    ring: nd.ring,
                });
            }
        }
    }
    let mut d = Development {
        pants,
        depth,
        word_len,
        lifts: infos,
        vlift,
        flags,
        tris,
        edges,
        sites: Vec::new(),
        base_index,
        anchor: [([Dd::zero(); 3], [Dd::zero(); 3]); 3],
    };
    for a in 0..3 {
        let curve = s.curve_at(pants, a);
        let swapped = s.curves()[curve].a != (pants, a);
        let b = s.across(pants, a).1;
        let site = ClosedSite {
            cuff: a,
            curve,
            x: d.root_vertex(0, a),
            z: d.root_vertex(0, (a + 1) % 3),
            y: d.root_vertex(a + 1, b),
            zp: d.root_vertex(a + 1, (b + 1) % 3),
            swapped,
        };
        let ends = if swapped {
            (site.y, site.x)
        } else {
            (site.x, site.y)
        };
        d.edges.push(DevEdge {
            ends,
            lift: None,
            kind: EdgeKind::Closed(curve),
            ring: 1,
        });
        d.sites.push(site);
    }
    d.anchor = d.anchor_now();
    Ok(d)
}

/// Holonomy of a product of peripheral generators (`±k` for `γ_k^{±1}`),
/// read off as the map from `Δ` to its translate.
pub fn holonomy(d: &Development, gens: &[i32]) -> Result<ProjMap> {
    if gens.len() > d.word_len {
        return Err(Error::OutOfDepth(format!(
            "word of length {} > {}",
            gens.len(),
            d.word_len
        )));
    }
    let w = Word::from_generators(gens)?;
    hol_raw(d, &w)?.to_proj()
}

pub(crate) fn hol_raw(d: &Development, w: &Word) -> Result<Pm> {
    let t = d
        .find(w, TriKind::Delta)
        .ok_or_else(|| Error::OutOfDepth(format!("{w} not developed")))?;
    let src = d.anchor_now();
    let vt = |k: usize| {
        *d.tris[t]
            .verts
            .iter()
            .find(|&&v| d.vlift[v].1 == k)
            .unwrap()
    };
    let dst = [0, 1, 2].map(|k| d.flags[vt(k)]);
    pin_pm((&src[0], &src[1], &src[2].0), (&dst[0], &dst[1], &dst[2].0))
}
