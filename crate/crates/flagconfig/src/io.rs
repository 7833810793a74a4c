//! JSON file formats. Indices are 1-based in files.

use crate::{validate_tuple, Error, FGCoords, FlagTuple, Result, Triangulation};
use projcore::Flag;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FlagJson {
    pub point: [f64; 3],
    pub line: [f64; 3],
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TupleFile {
    pub flags: Vec<FlagJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CoordsFile {
    pub n: usize,
    /// `[i, j, σ_ij, σ_ji]`
    pub edges: Vec<(usize, usize, f64, f64)>,
    /// `[i, j, k, τ]`
    pub triangles: Vec<(usize, usize, usize, f64)>,
}

fn fmt_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

pub fn flag_to_json(f: &Flag) -> FlagJson {
    FlagJson {
        point: f.p.coords(),
        line: f.l.coords(),
    }
}

pub fn parse_flags(text: &str) -> Result<Vec<Flag>> {
    let file: TupleFile = serde_json::from_str(text).map_err(fmt_err)?;
    file.flags
        .iter()
        .map(|f| Ok(Flag::from_coords(f.point, f.line)?))
        .collect()
}

pub fn parse_tuple(text: &str) -> Result<FlagTuple> {
    validate_tuple(parse_flags(text)?)
}

pub fn tuple_to_json(t: &FlagTuple) -> String {
    let file = TupleFile {
        flags: t.flags().iter().map(flag_to_json).collect(),
    };
    serde_json::to_string_pretty(&file).unwrap()
}

pub fn parse_coords(text: &str) -> Result<(FGCoords, Triangulation)> {
    let file: CoordsFile = serde_json::from_str(text).map_err(fmt_err)?;
    let idx = |i: usize| {
        if i == 0 || i > file.n {
            Err(Error::Format(format!(
                "vertex index {i} out of 1..={}",
                file.n
            )))
        } else {
            Ok(i - 1)
        }
    };
    let mut tris = Vec::new();
    let mut tau = BTreeMap::new();
    for &(i, j, k, t) in &file.triangles {
        let mut s = [idx(i)?, idx(j)?, idx(k)?];
        s.sort_unstable();
        tris.push(s);
        tau.insert(s, t);
    }
    let tri = Triangulation::new(file.n, tris)?;
    let mut sigma = BTreeMap::new();
    for &(i, j, sij, sji) in &file.edges {
        let (i, j) = (idx(i)?, idx(j)?);
        if tri.opposite(i, j).is_none() {
            return Err(Error::Format(format!(
                "({}, {}) is not an internal edge",
                i + 1,
                j + 1
            )));
        }
        sigma.insert((i, j), sij);
        sigma.insert((j, i), sji);
    }
    if sigma.len() != 2 * tri.internal_edges().len() {
        return Err(Error::Format(
            "every internal edge needs a sigma pair".into(),
        ));
    }
    Ok((
        FGCoords {
            n: file.n,
            sigma,
            tau,
        },
        tri,
    ))
}

pub fn coords_to_json(c: &FGCoords) -> String {
    let edges = c
        .sigma
        .iter()
        .filter(|((i, j), _)| i < j)
        .map(|((i, j), s)| (i + 1, j + 1, *s, c.sigma[&(*j, *i)]))
        .collect();
    let triangles = c
        .tau
        .iter()
        .map(|(t, v)| (t[0] + 1, t[1] + 1, t[2] + 1, *v))
        .collect();
    serde_json::to_string_pretty(&CoordsFile {
        n: c.n,
        edges,
        triangles,
    })
    .unwrap()
}
