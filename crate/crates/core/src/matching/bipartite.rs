use std::collections::VecDeque;

use serde::Serialize;

use super::{Matching, UGraph};
use crate::{Error, Result, VertexSet};

fn check_sides(g: &UGraph, left: &VertexSet) -> Result<()> {
    if left.universe() != g.vertex_count() {
        return Err(Error::SetSizeMismatch {
            expected: g.vertex_count(),
            found: left.universe(),
        });
    }
    match g
        .edges()
        .iter()
        .find(|&&(u, v)| left.contains(u) == left.contains(v))
    {
        Some(&(u, v)) => Err(Error::NotBipartiteAsGiven(u, v)),
        None => Ok(()),
    }
}

fn try_kuhn(g: &UGraph, u: usize, visited: &mut [bool], mate: &mut [Option<usize>]) -> bool {
    for &r in g.neighbors(u) {
        if visited[r] {
            continue;
        }
        visited[r] = true;
        if mate[r].is_none_or(|w| try_kuhn(g, w, visited, mate)) {
            mate[r] = Some(u);
            mate[u] = Some(r);
            return true;
        }
    }
    false
}

/// Augmenting-path (Kuhn) matching from the left side, left vertices and
/// their neighbours scanned in increasing id order.
pub fn bipartite_max_matching(g: &UGraph, left: &VertexSet) -> Result<Matching> {
    check_sides(g, left)?;
    let mut mate = vec![None; g.vertex_count()];
    let mut visited = vec![false; g.vertex_count()];
    for u in left.iter() {
        visited.iter_mut().for_each(|v| *v = false);
        try_kuhn(g, u, &mut visited, &mut mate);
    }
    Ok(Matching::from_mates(mate))
}

/// `S` on the left side with `|N(S)| < |S|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallViolator {
    pub s: Vec<usize>,
    pub neighborhood: Vec<usize>,
}

impl HallViolator {
    pub fn neighborhood_size(&self) -> usize {
        self.neighborhood.len()
    }
}

/// Left vertices reachable by alternating paths from the lowest unmatched
/// left vertex of a maximum matching. Every right vertex reached is matched
/// back into the set, so `|N(S)| = |S| - 1`.
pub fn hall_violator(g: &UGraph, left: &VertexSet) -> Result<HallViolator> {
    let m = bipartite_max_matching(g, left)?;
    let root = left
        .iter()
        .find(|&u| m.mate(u).is_none())
        .ok_or(Error::NoViolatorExists)?;
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &r in g.neighbors(u) {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let w = m.mate(r).expect("a maximum matching saturates N(S)");
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let s: Vec<usize> = (0..n).filter(|&v| seen[v] && left.contains(v)).collect();
    let neighborhood: Vec<usize> = (0..n).filter(|&v| seen[v] && !left.contains(v)).collect();
    debug_assert!(neighborhood.len() < s.len());
    Ok(HallViolator { s, neighborhood })
}
