//! Truncated equivariant flows on a development.
//!
//! Vertices are indexed by cyclic position, so the arc cut out by a triangle
//! or edge is at most two index ranges. A segment tree of lazily composed
//! projective maps applies each elementary flow in logarithmic time.

use crate::bd::{pants_coords, BDCoords};
use crate::complex::SurfaceComplex;
use crate::develop::{develop, Development, EdgeKind};
use crate::fan::{closed_sigma, edge_basis, edge_exponents, pin_pm, rescale, Elem, FanFrame, Pm};
use crate::lift::TriKind;
use crate::{Error, Result};
use flagconfig::attach::RawFlag;
use projcore::linalg::{self, M3};
use projcore::{tol, Dd, Real};
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Orbit flows of one pants, acting on its lifts in a development.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PantsFlow {
    Eruption(usize),
    InternalBulge(usize),
    /// Bulges replaced by shears; not a well-defined flow, kept to show it.
    InternalShear(usize),
}

impl PantsFlow {
    pub fn pants(&self) -> usize {
        match *self {
            PantsFlow::Eruption(i) | PantsFlow::InternalBulge(i) | PantsFlow::InternalShear(i) => i,
        }
    }
    pub(crate) fn elem(&self) -> Elem {
        match self {
            PantsFlow::Eruption(_) => Elem::Eruption,
            PantsFlow::InternalBulge(_) => Elem::Bulge,
            PantsFlow::InternalShear(_) => Elem::Shear,
        }
    }
}

/// Order in which the triangles (or edges) of each lift are visited. Both
/// keep every ring as an initial segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// Ring by ring, creation order inside a ring.
    Standard,
    /// Ring by ring, seeded random order inside a ring.
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Element {
    Tri(usize),
    Edge(usize),
}

fn norm_m(m: &M3<Dd>) -> M3<Dd> {
    let s = m.iter().flatten().map(|x| x.f().abs()).fold(0.0, f64::max);
    if s > 0.0 && s.is_finite() {
        linalg::mscale(m, Dd::of(1.0 / s))
    } else {
        *m
    }
}

fn compose(a: &Pm, b: &Pm) -> Pm {
    let c = a.after(b);
    Pm {
        m: norm_m(&c.m),
        inv: norm_m(&c.inv),
    }
}

struct MapTree {
    n: usize,
    tag: Vec<Option<Pm>>,
    leaf: Vec<RawFlag<Dd>>,
}

impl MapTree {
    fn new(flags: &[RawFlag<Dd>]) -> Self {
        MapTree {
            n: flags.len(),
            tag: vec![None; 4 * flags.len().max(1)],
            leaf: flags.to_vec(),
        }
    }

    fn push(&mut self, node: usize) {
        if let Some(t) = self.tag[node].take() {
            for c in [2 * node + 1, 2 * node + 2] {
                self.tag[c] = Some(match &self.tag[c] {
                    Some(x) => compose(&t, x),
                    None => t,
                });
            }
        }
    }

    fn apply_rec(&mut self, node: usize, lo: usize, hi: usize, l: usize, r: usize, g: &Pm) {
        if r <= lo || hi <= l {
            return;
        }
        if l <= lo && hi <= r {
            self.tag[node] = Some(match &self.tag[node] {
                Some(x) => compose(g, x),
                None => *g,
            });
            return;
        }
        self.push(node);
        let mid = (lo + hi) / 2;
        self.apply_rec(2 * node + 1, lo, mid, l, r, g);
        self.apply_rec(2 * node + 2, mid, hi, l, r, g);
    }

    fn apply(&mut self, l: usize, r: usize, g: &Pm) {
        if l < r {
            self.apply_rec(0, 0, self.n, l, r, g);
        }
    }

    fn get(&self, i: usize) -> RawFlag<Dd> {
        let mut path = Vec::new();
        let (mut node, mut lo, mut hi) = (0, 0, self.n);
        loop {
            if let Some(t) = &self.tag[node] {
                path.push(t);
            }
            if hi - lo == 1 {
                break;
            }
            let mid = (lo + hi) / 2;
            if i < mid {
                node = 2 * node + 1;
                hi = mid;
            } else {
                node = 2 * node + 2;
                lo = mid;
            }
        }
        let mut f = self.leaf[i];
        for t in path.iter().rev() {
            f = t.flag(&f);
        }
        f
    }

    fn set(&mut self, i: usize, f: RawFlag<Dd>) {
        let (mut node, mut lo, mut hi) = (0, 0, self.n);
        while hi - lo > 1 {
            self.push(node);
            let mid = (lo + hi) / 2;
            if i < mid {
                node = 2 * node + 1;
                hi = mid;
            } else {
                node = 2 * node + 2;
                lo = mid;
            }
        }
        self.tag[node] = None;
        self.leaf[i] = f;
    }

    fn all(&self) -> Vec<RawFlag<Dd>> {
        (0..self.n).map(|i| self.get(i)).collect()
    }
}

/// Number of positions strictly inside the cyclic arc `(u, w)`.
fn arc_len(u: usize, w: usize, n: usize) -> usize {
    (w + n - u - 1) % n
}

fn apply_arc(tree: &mut MapTree, u: usize, w: usize, g: &Pm) {
    let n = tree.n;
    if u < w {
        tree.apply(u + 1, w, g);
    } else {
        tree.apply(u + 1, n, g);
        tree.apply(0, w, g);
    }
}

fn degenerate() -> Error {
    Error::Degenerate("flow basis is singular".into())
}

fn apply_element(d: &Development, tree: &mut MapTree, el: Element, e: Elem, t: f64) -> Result<()> {
    let n = tree.n;
    match el {
        Element::Tri(id) => {
            let tri = &d.tris[id];
            let s = if tri.kind == TriKind::Delta { t } else { -t };
            let v = tri.verts;
            let k = (0..3)
                .max_by_key(|&k| arc_len(v[(k + 1) % 3], v[(k + 2) % 3], n))
                .unwrap();
            let (a, b, c) = (v[k], v[(k + 1) % 3], v[(k + 2) % 3]);
            let (fa, fb, fc) = (tree.get(a), tree.get(b), tree.get(c));
            let basis = linalg::from_cols(&fa.0, &fb.0, &fc.0);
            let gb = Pm::diagonal(&basis, [0.0, 0.0, s]).ok_or_else(degenerate)?;
            let gc = Pm::diagonal(&basis, [0.0, -s, 0.0]).ok_or_else(degenerate)?;
            apply_arc(tree, c, a, &gb);
            apply_arc(tree, a, b, &gc);
            tree.set(a, (fa.0, rescale(&linalg::vec_mul(&fa.1, &gb.inv))));
        }
        Element::Edge(id) => {
            let (j, i) = d.edges[id].ends;
            let (fi, fj) = (tree.get(i), tree.get(j));
            let basis = edge_basis(&fi, &fj);
            let (l, r) = edge_exponents(e, t);
            let lr: [f64; 3] = std::array::from_fn(|k| l[k] - r[k]);
            if arc_len(i, j, n) >= arc_len(j, i, n) {
                let g = Pm::diagonal(&basis, lr.map(|x| -x)).ok_or_else(degenerate)?;
                apply_arc(tree, j, i, &g);
            } else {
                let g = Pm::diagonal(&basis, lr).ok_or_else(degenerate)?;
                apply_arc(tree, i, j, &g);
            }
        }
    }
    Ok(())
}

fn elements(d: &Development, flow: PantsFlow, en: Enumeration) -> Vec<(Element, usize)> {
    let p = flow.pants();
    let mut rng = match en {
        Enumeration::Shuffled(seed) => Some(rand::rngs::StdRng::seed_from_u64(seed)),
        Enumeration::Standard => None,
    };
    let mut per_lift = Vec::new();
    for (li, info) in d.lifts.iter().enumerate() {
        if info.pants != p {
            continue;
        }
        let mut items: Vec<(Element, usize)> = match flow {
            PantsFlow::Eruption(_) => d
                .tris
                .iter()
                .enumerate()
                .filter(|(_, t)| t.lift == li)
                .map(|(id, t)| (Element::Tri(id), t.ring))
                .collect(),
            _ => d
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.lift == Some(li) && matches!(e.kind, EdgeKind::Spiral(_)))
                .map(|(id, e)| (Element::Edge(id), e.ring))
                .collect(),
        };
        items.sort_by_key(|x| x.1);
        if let Some(rng) = rng.as_mut() {
            let mut start = 0;
            while start < items.len() {
                let ring = items[start].1;
                let end = start + items[start..].iter().take_while(|x| x.1 == ring).count();
                items[start..end].shuffle(rng);
                start = end;
            }
        }
        per_lift.push(items);
    }
    let longest = per_lift.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::new();
    for sum in 0..longest + per_lift.len() {
        for (j, items) in per_lift.iter().enumerate() {
            if sum >= j && sum - j < items.len() {
                out.push(items[sum - j]);
            }
        }
    }
    out
}

fn site_sigma(d: &Development, site: usize, get: impl Fn(usize) -> RawFlag<Dd>) -> (f64, f64) {
    let st = &d.sites[site];
    let s = closed_sigma(&get(st.x), &get(st.y), &get(st.z).0, &get(st.zp).0);
    if st.swapped {
        (s.1, s.0)
    } else {
        s
    }
}

/// Run the first `j` elements; `sample(k, tree)` sees the state after `k` elements.
fn run(
    d: &Development,
    flow: PantsFlow,
    t: f64,
    j: usize,
    en: Enumeration,
    mut sample: impl FnMut(usize, &MapTree),
) -> Result<MapTree> {
    let els = elements(d, flow, en);
    if j > els.len() {
        return Err(Error::OutOfDepth(format!(
            "{j} elements requested, {} developed",
            els.len()
        )));
    }
    let mut tree = MapTree::new(&d.flags);
    sample(0, &tree);
    for (k, &(el, _)) in els.iter().take(j).enumerate() {
        apply_element(d, &mut tree, el, flow.elem(), t)?;
        sample(k + 1, &tree);
    }
    Ok(tree)
}

pub fn truncated_equivariant_flow(
    d: &Development,
    flow: PantsFlow,
    t: f64,
    j: usize,
) -> Result<Development> {
    truncated_equivariant_flow_with(d, flow, t, j, Enumeration::Standard)
}

/// Apply the first `j` elementary flows, then pin the base flags at `γ₁⁻`,
/// `γ₂⁻` and the point at `γ₃⁻` back to their original position.
pub fn truncated_equivariant_flow_with(
    d: &Development,
    flow: PantsFlow,
    t: f64,
    j: usize,
    en: Enumeration,
) -> Result<Development> {
    if j == 0 || t == 0.0 {
        if j > elements(d, flow, en).len() {
            return Err(Error::OutOfDepth(format!("{j} elements requested")));
        }
        return Ok(d.clone());
    }
    let tree = run(d, flow, t, j, en, |_, _| {})?;
    let mut out = d.clone();
    out.flags = tree.all();
    let now = out.anchor_now();
    let g = pin_pm(
        (&now[0], &now[1], &now[2].0),
        (&d.anchor[0], &d.anchor[1], &d.anchor[2].0),
    )?;
    for f in out.flags.iter_mut() {
        *f = g.flag(f);
    }
    Ok(out)
}

/// σ pair of the closed edge of `curve` on the current flags, labelled as
/// in the coordinates (`x` on side `a` of the curve).
pub fn closed_edge_sigma_estimate(d: &Development, curve: usize) -> Result<(f64, f64)> {
    let site = d
        .sites
        .iter()
        .position(|s| s.curve == curve)
        .ok_or_else(|| Error::OutOfDepth(format!("curve {curve} does not bound the base pants")))?;
    Ok(site_sigma(d, site, |v| d.flags[v]))
}

/// Stage data for one boundary curve of the flowed pants.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteConvergence {
    pub curve: usize,
    /// σ pair after each ring `N_1..N_K` has been processed.
    pub rings: Vec<(f64, f64)>,
    /// Value at the last complete period.
    pub limit: (f64, f64),
    /// Closed-form value, when one exists.
    pub prediction: Option<(f64, f64)>,
    /// Differences between complete fan periods (rings 1, 3, 5, …).
    pub period_diffs: Vec<f64>,
    pub last_diff: f64,
    pub cauchy: bool,
    /// No independent closed form (curve glued to the same pants).
    pub oracle_free: bool,
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

/// Flow the base lift of the flowed pants ring by ring at the given depth.
pub fn converge(
    s: &SurfaceComplex,
    c: &BDCoords,
    flow: PantsFlow,
    t: f64,
    depth: usize,
    en: Enumeration,
) -> Result<Vec<SiteConvergence>> {
    let p = flow.pants();
    let d = develop(s, c, p, depth, 3)?;
    let els = elements(&d, flow, en);
    let checkpoints: Vec<usize> = (1..=depth)
        .map(|k| els.iter().rposition(|x| x.1 <= k).map_or(0, |i| i + 1))
        .collect();
    let mut samples: Vec<Vec<(f64, f64)>> = vec![Vec::new(); d.sites.len()];
    run(&d, flow, t, els.len(), en, |k, tree| {
        for (ci, &cp) in checkpoints.iter().enumerate() {
            if cp == k {
                for (si, v) in samples.iter_mut().enumerate() {
                    if v.len() == ci {
                        v.push(site_sigma(&d, si, |x| tree.get(x)));
                    }
                }
            }
        }
    })?;
    let tl = tol();
    let pc = pants_coords(s, c, p);
    let mut out = Vec::new();
    for (si, rings) in samples.into_iter().enumerate() {
        let st = &d.sites[si];
        if out.iter().any(|o: &SiteConvergence| o.curve == st.curve) {
            continue;
        }
        let oracle_free = s.curves()[st.curve].self_glued();
        let prediction = if oracle_free || flow.elem() == Elem::Shear {
            None
        } else {
            let sig = (c.sigma_x[st.curve], c.sigma_y[st.curve]);
            let sig = if st.swapped { (sig.1, sig.0) } else { sig };
            let v = FanFrame::new(&pc, st.cuff, sig)?.closed_form(flow.elem(), t)?;
            Some(if st.swapped { (v.1, v.0) } else { v })
        };
        // a single fan triangle shifts σ by the full ±t; only complete fan
        // pairs (odd rings) are stages of the product
        let periods: Vec<(f64, f64)> = rings.iter().step_by(2).copied().collect();
        let limit = *periods.last().unwrap();
        let period_diffs: Vec<f64> = periods.windows(2).map(|w| dist(w[0], w[1])).collect();
        let last_diff = period_diffs.last().copied().unwrap_or(f64::INFINITY);
        let ratio_ok = match period_diffs.len() {
            n if n >= 2 && period_diffs[n - 2] > 1e-12 => {
                period_diffs[n - 1] <= tl.ratio * period_diffs[n - 2]
            }
            _ => true,
        };
        let cauchy = last_diff < tl.conv && ratio_ok;
        out.push(SiteConvergence {
            curve: st.curve,
            rings,
            limit,
            prediction,
            last_diff,
            period_diffs,
            cauchy,
            oracle_free,
        });
    }
    Ok(out)
}
