use crate::{Error, Result};
use invariants::{positive_chart, triple_ratio, AffineChart};
use projcore::{meet, tol, Flag, ProjPoint};

/// A cyclically ordered, pairwise transverse, positive tuple of flags.
#[derive(Clone, Debug, PartialEq)]
pub struct FlagTuple {
    flags: Vec<Flag>,
}

impl FlagTuple {
    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }
    pub fn len(&self) -> usize {
        self.flags.len()
    }
    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }
    pub fn into_flags(self) -> Vec<Flag> {
        self.flags
    }
}

pub fn validate_tuple(flags: Vec<Flag>) -> Result<FlagTuple> {
    let n = flags.len();
    if n < 3 {
        return Err(Error::TooFewFlags(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !flags[i].transverse_to(&flags[j]) {
                return Err(Error::NotTransverse(i, j));
            }
        }
    }
    let pos = tol().pos;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let t = triple_ratio(&flags[i], &flags[j], &flags[k])?;
                if !(t > pos) {
                    return Err(Error::NotPositive(i, j, k));
                }
            }
        }
    }
    Ok(FlagTuple { flags })
}

/// Inner polygon with vertices `p_i`, outer polygon with vertices `l_i ∩ l_{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonPair {
    pub inner: Vec<ProjPoint>,
    pub outer: Vec<ProjPoint>,
}

pub fn nested_polygons(t: &FlagTuple) -> Result<PolygonPair> {
    let n = t.len();
    let f = t.flags();
    let outer = (0..n)
        .map(|k| meet(&f[k].l, &f[(k + 1) % n].l))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(PolygonPair {
        inner: f.iter().map(|x| x.p).collect(),
        outer,
    })
}

/// Position of `p_i` on the outer edge from vertex `i−1` to vertex `i`,
/// as the barycentric weight of vertex `i` in an affine chart containing
/// the whole configuration. Nesting means every value is in `(0, 1)`.
pub fn nesting_parameters(t: &FlagTuple) -> Result<Vec<f64>> {
    let pp = nested_polygons(t)?;
    let chart = AffineChart::from_line(&positive_chart(t.flags())?);
    let n = t.len();
    let aff = |p: &ProjPoint| {
        chart
            .to_affine(p, 1e-12)
            .ok_or(Error::Invariants(invariants::Error::ChartFailure))
    };
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = aff(&pp.outer[(i + n - 1) % n])?;
        let b = aff(&pp.outer[i])?;
        let p = aff(&pp.inner[i])?;
        let d = [b[0] - a[0], b[1] - a[1]];
        let s = ((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1]);
        out.push(s);
    }
    Ok(out)
}
