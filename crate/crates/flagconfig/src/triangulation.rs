use crate::{in_arc, Error, Result};
use std::collections::{BTreeMap, VecDeque};

/// A triangulation of the labelled n-gon by diagonals.
#[derive(Clone, Debug)]
pub struct Triangulation {
    n: usize,
    /// Internal edges as `(i, j)` with `i < j`.
    edges: Vec<(usize, usize)>,
    /// Triangles with ascending vertices.
    triangles: Vec<[usize; 3]>,
    /// For each internal edge: third vertex in the arc `(i, j)` and in the arc `(j, i)`.
    opposite: BTreeMap<(usize, usize), (usize, usize)>,
}

/// Equal when the triangle sets agree; the listed order only picks the seed.
impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.triangles.clone();
        let mut b = other.triangles.clone();
        a.sort_unstable();
        b.sort_unstable();
        self.n == other.n && a == b
    }
}

fn crosses(a: (usize, usize), b: (usize, usize), n: usize) -> bool {
    let shares = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    !shares && (in_arc(a.0, b.0, a.1, n) != in_arc(a.0, b.1, a.1, n))
}

impl Triangulation {
    /// Fan from vertex 0.
    pub fn fan(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidTriangulation(format!("n = {n} < 3")));
        }
        Self::new(n, (1..n - 1).map(|i| [0, i, i + 1]).collect())
    }

    pub fn new(n: usize, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidTriangulation(m));
        if n < 3 {
            return bad(format!("n = {n} < 3"));
        }
        if triangles.len() != n - 2 {
            return bad(format!("{} triangles, expected {}", triangles.len(), n - 2));
        }
        let mut tris = Vec::new();
        let mut sides: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (ti, t) in triangles.iter().enumerate() {
            let mut s = *t;
            s.sort_unstable();
            if s[2] >= n || s[0] == s[1] || s[1] == s[2] {
                return bad(format!("bad triangle {t:?}"));
            }
            for (a, b) in [(s[0], s[1]), (s[1], s[2]), (s[0], s[2])] {
                sides.entry((a, b)).or_default().push(ti);
            }
            tris.push(s);
        }
        let boundary = |e: &(usize, usize)| e.1 == e.0 + 1 || (e.0 == 0 && e.1 == n - 1);
        let mut edges = Vec::new();
        for (e, ts) in &sides {
            match (boundary(e), ts.len()) {
                (true, 1) => {}
                (false, 2) => edges.push(*e),
                _ => return bad(format!("edge {e:?} used by {} triangles", ts.len())),
            }
        }
        let nb = sides.keys().filter(|e| boundary(e)).count();
        if nb != n || edges.len() != n - 3 {
            return bad("triangles do not tile the polygon".into());
        }
        for (i, a) in edges.iter().enumerate() {
            for b in &edges[..i] {
                if crosses(*a, *b, n) {
                    return bad(format!("edges {a:?} and {b:?} cross"));
                }
            }
        }
        let mut opposite = BTreeMap::new();
        for e in &edges {
            let thirds: Vec<usize> = sides[e]
                .iter()
                .map(|ti| *tris[*ti].iter().find(|v| **v != e.0 && **v != e.1).unwrap())
                .collect();
            let (k, kp) = if in_arc(e.0, thirds[0], e.1, n) {
                (thirds[0], thirds[1])
            } else {
                (thirds[1], thirds[0])
            };
            if !in_arc(e.0, k, e.1, n) || !in_arc(e.1, kp, e.0, n) {
                return bad(format!("edge {e:?} has both triangles on one side"));
            }
            opposite.insert(*e, (k, kp));
        }
        Ok(Triangulation {
            n,
            edges,
            triangles: tris,
            opposite,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn internal_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Third vertices `(k, k')` with `i < k < j < k' < i` cyclically, for
    /// the internal edge `{i, j}` (either order).
    pub fn opposite(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        if i < j {
            self.opposite.get(&(i, j)).copied()
        } else {
            self.opposite.get(&(j, i)).map(|(k, kp)| (*kp, *k))
        }
    }

    pub fn has_triangle(&self, t: [usize; 3]) -> bool {
        let mut s = t;
        s.sort_unstable();
        self.triangles.contains(&s)
    }

    /// Triangles in breadth-first order of the dual tree from the first
    /// triangle, each with the edge it was reached through.
    pub(crate) fn dual_walk(&self) -> Vec<([usize; 3], Option<(usize, usize)>)> {
        let mut seen = vec![false; self.triangles.len()];
        let index = |t: &[usize; 3]| self.triangles.iter().position(|x| x == t).unwrap();
        let mut out = vec![(self.triangles[0], None)];
        seen[0] = true;
        let mut queue = VecDeque::from([self.triangles[0]]);
        while let Some(t) = queue.pop_front() {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                if let Some((k, kp)) = self.opposite(a, b) {
                    let other = if t.contains(&k) { kp } else { k };
                    let mut nt = [a, b, other];
                    nt.sort_unstable();
                    let ix = index(&nt);
                    if !seen[ix] {
                        seen[ix] = true;
                        out.push((nt, Some((a, b))));
                        queue.push_back(nt);
                    }
                }
            }
        }
        out
    }
}
