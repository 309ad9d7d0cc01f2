//! Fractional perfect matchings (spanning subgraphs whose components are
//! `K2`s or cycles), decided on the bipartite double cover.

use serde::Serialize;

use super::{bipartite_max_matching, hall_violator, UGraph};
use crate::{Error, Result, VertexSet};

/// Largest vertex count for which the exhaustive witness fallback runs.
pub const EXHAUSTIVE_WITNESS_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    /// Mapped down from a Hall violator of the double cover.
    DoubleCover,
    /// Found by the subset scan after the mapped set failed validation.
    Exhaustive,
}

/// `S` with `i(G - S) > |S|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionalWitness {
    pub s: Vec<usize>,
    /// Isolated vertices of `G - S`.
    pub isolated: Vec<usize>,
    pub source: WitnessSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionalPm {
    pub exists: bool,
    pub witness: Option<FractionalWitness>,
}

/// Copies `v'` = `v` and `v''` = `n + v`; each edge `uv` becomes `u'v''` and `v'u''`.
fn double_cover(g: &UGraph) -> UGraph {
    let n = g.vertex_count();
    let edges = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, n + v), (v, n + u)]);
    UGraph::new(2 * n, edges).expect("double cover edges are in range and loop-free")
}

fn isolated_after(g: &UGraph, s: &[usize]) -> Vec<usize> {
    let removed = g.mask_of(s);
    (0..g.vertex_count())
        .filter(|&v| !removed[v] && g.neighbors(v).iter().all(|&u| removed[u]))
        .collect()
}

fn validated(g: &UGraph, mut s: Vec<usize>, source: WitnessSource) -> Option<FractionalWitness> {
    s.sort_unstable();
    s.dedup();
    let isolated = isolated_after(g, &s);
    (isolated.len() > s.len()).then_some(FractionalWitness {
        s,
        isolated,
        source,
    })
}

fn neighborhood(g: &UGraph, set: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Best `S` by `i(G - S) - |S|`, lowest bitmask among ties.
fn exhaustive_witness(g: &UGraph) -> Option<FractionalWitness> {
    let n = g.vertex_count();
    let mut best: Option<(i64, u64)> = None;
    for mask in 0u64..1 << n {
        let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let score = g.isolated_without(&removed) as i64 - mask.count_ones() as i64;
        if score > 0 && best.is_none_or(|(b, _)| score > b) {
            best = Some((score, mask));
        }
    }
    best.and_then(|(_, mask)| {
        let s = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        validated(g, s, WitnessSource::Exhaustive)
    })
}

/// Decides whether `g` has a fractional perfect matching. On failure a
/// violating set `S` is extracted from a double-cover Hall violator `A` by
/// taking `I = A \ N(A)` (independent in `g`) and `S = N(I)`; the set is
/// validated by recounting `i(G - S)` and, if that fails, replaced by an
/// exhaustive scan for graphs of at most [`EXHAUSTIVE_WITNESS_LIMIT`] vertices.
pub fn fractional_pm(g: &UGraph) -> Result<FractionalPm> {
    let n = g.vertex_count();
    let cover = double_cover(g);
    let left = VertexSet::from_slice(2 * n, &(0..n).collect::<Vec<_>>())?;
    let m = bipartite_max_matching(&cover, &left)?;
    if m.is_perfect() {
        return Ok(FractionalPm {
            exists: true,
            witness: None,
        });
    }
    let hv = hall_violator(&cover, &left)?;
    let a_set = hv.s.clone();
    let b_set: Vec<usize> = hv.neighborhood.iter().map(|&r| r - n).collect();
    let independent: Vec<usize> = a_set
        .iter()
        .copied()
        .filter(|v| b_set.binary_search(v).is_err())
        .collect();
    let candidates = [neighborhood(g, &independent), b_set];
    let witness = candidates
        .into_iter()
        .find_map(|s| validated(g, s, WitnessSource::DoubleCover));
    let witness = match witness {
        Some(w) => w,
        None if n <= EXHAUSTIVE_WITNESS_LIMIT => {
            exhaustive_witness(g).ok_or(Error::WitnessSearchExhausted { vertices: n })?
        }
        None => return Err(Error::WitnessSearchExhausted { vertices: n }),
    };
    Ok(FractionalPm {
        exists: false,
        witness: Some(witness),
    })
}
