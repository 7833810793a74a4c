//! Development of one pants lift along its dual tree.
//!
//! Vertex types: `0, 1, 2` for the lifts of `γ₁⁻, γ₂⁻, γ₃⁻`. Every node keeps
//! its vertices in the cyclic order of the circle at infinity; in that order
//! `Δ` reads `(0, 2, 1)` and `Δ'` reads `(0, 1, 2)`.

use crate::bd::PantsCoords;
use crate::word::Word;
use crate::{Error, Result};
use flagconfig::attach::{new_flag, seed_triangle, RawFlag};
use projcore::{Dd, Real};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriKind {
    Delta,
    DeltaPrime,
}

#[derive(Clone, Debug)]
pub(crate) struct LNode {
    pub word: Word,
    pub kind: TriKind,
    pub verts: [usize; 3],
    pub nbr: [Option<usize>; 3],
    /// 1 for the root.
    pub ring: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Lift {
    pub vtype: Vec<usize>,
    pub flags: Vec<RawFlag<Dd>>,
    pub nodes: Vec<LNode>,
    pub index: HashMap<(Word, TriKind), usize>,
}

/// Class `k` of the edge with endpoint types `ta`, `tb`: its ends have types `k`, `k+1`.
pub(crate) fn edge_class(ta: usize, tb: usize) -> usize {
    if (ta + 1) % 3 == tb {
        ta
    } else {
        tb
    }
}

fn neighbour_label(word: &Word, kind: TriKind, class: usize) -> (Word, TriKind) {
    let step = |l: i8| word.mul(&Word::letter(l));
    match (kind, class) {
        (TriKind::Delta, 0) => (step(1), TriKind::DeltaPrime),
        (TriKind::Delta, 1) => (step(-2), TriKind::DeltaPrime),
        (TriKind::Delta, _) => (word.clone(), TriKind::DeltaPrime),
        (TriKind::DeltaPrime, 0) => (step(-1), TriKind::Delta),
        (TriKind::DeltaPrime, 1) => (step(2), TriKind::Delta),
        (TriKind::DeltaPrime, _) => (word.clone(), TriKind::Delta),
    }
}

pub(crate) fn develop_lift(pc: &PantsCoords, radius: usize) -> Result<Lift> {
    let ex: [(Dd, Dd); 3] = pc.sigma.map(|(a, b)| (Dd::of(a).rexp(), Dd::of(b).rexp()));
    let et = pc.tau.map(|t| Dd::of(t).rexp());
    let seed = seed_triangle(et[0]);
    let mut lift = Lift {
        vtype: vec![0, 2, 1],
        flags: seed.to_vec(),
        nodes: vec![LNode {
            word: Word::identity(),
            kind: TriKind::Delta,
            verts: [0, 1, 2],
            nbr: [None; 3],
            ring: 1,
        }],
        index: HashMap::new(),
    };
    lift.index.insert((Word::identity(), TriKind::Delta), 0);
    let mut frontier = vec![0];
    for ring in 2..=radius {
        let mut next = Vec::new();
        for &id in &frontier {
            for j in 0..3 {
                if lift.nodes[id].nbr[j].is_some() {
                    continue;
                }
                let node = &lift.nodes[id];
                let (u, w, c) = (
                    node.verts[j],
                    node.verts[(j + 1) % 3],
                    node.verts[(j + 2) % 3],
                );
                let (tu, tw) = (lift.vtype[u], lift.vtype[w]);
                let k = edge_class(tu, tw);
                let (su, sw) = if tu == k { ex[k] } else { (ex[k].1, ex[k].0) };
                let (word, kind) = neighbour_label(&node.word, node.kind, k);
                let e_tau = if kind == TriKind::Delta { et[0] } else { et[1] };
                let f = new_flag(
                    &lift.flags[u],
                    &lift.flags[w],
                    &lift.flags[c].0,
                    su,
                    sw,
                    e_tau,
                )
                .ok_or_else(|| {
                    Error::Degenerate("attachment across a spiralling edge failed".into())
                })?;
                let n = lift.flags.len();
                lift.flags.push(f);
                lift.vtype.push(3 - tu - tw);
                let nid = lift.nodes.len();
                // the new node reads (u, n, w); its edge (w, u) is shared with `id`
                let mut nbr = [None; 3];
                nbr[2] = Some(id);
                lift.nodes.push(LNode {
                    word: word.clone(),
                    kind,
                    verts: [u, n, w],
                    nbr,
                    ring,
                });
                lift.nodes[id].nbr[j] = Some(nid);
                lift.index.insert((word, kind), nid);
                next.push(nid);
            }
        }
        frontier = next;
    }
    Ok(lift)
}

/// The fan of triangles around the root's type-`a` vertex `x`, walking
/// from the root toward the attracting end of `γ_{a+1}`.
pub(crate) struct FanWalk {
    pub x: usize,
    /// `v_{−1}, v_0, v_1, …`
    pub verts: Vec<usize>,
    /// `S_0` (the root), `S_1`, …
    pub nodes: Vec<usize>,
}

pub(crate) fn fan_walk(l: &Lift, a: usize) -> FanWalk {
    let root = &l.nodes[0];
    let find = |t: usize| *root.verts.iter().find(|&&v| l.vtype[v] == t).unwrap();
    let x = find(a);
    let mut verts = vec![find((a + 2) % 3), find((a + 1) % 3)];
    let mut nodes = vec![0];
    let mut cur = 0;
    loop {
        let last = *verts.last().unwrap();
        let nd = &l.nodes[cur];
        let j = (0..3)
            .find(|&j| nd.verts[j] == last && nd.verts[(j + 1) % 3] == x)
            .expect("fan edge");
        let Some(nx) = nd.nbr[j] else { break };
        let nv = *l.nodes[nx]
            .verts
            .iter()
            .find(|&&v| v != last && v != x)
            .unwrap();
        verts.push(nv);
        nodes.push(nx);
        cur = nx;
    }
    FanWalk { x, verts, nodes }
}
