//! Undirected matching engines and the witnesses that refute perfect matchings.

mod bipartite;
mod blossom;
mod fractional;

use std::collections::VecDeque;

use serde::Serialize;

use crate::{Error, Result};

pub use bipartite::{bipartite_max_matching, hall_violator, HallViolator};
pub use blossom::{gallai_edmonds, max_matching, tutte_witness, GallaiEdmonds, TutteWitness};
pub use fractional::{
    fractional_pm, FractionalPm, FractionalWitness, WitnessSource, EXHAUSTIVE_WITNESS_LIMIT,
};

/// Simple undirected graph on `[0, n)`. Adjacency lists are kept sorted so
/// every engine scans neighbours in increasing id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl UGraph {
    /// Edges are normalized to `(min, max)` and deduplicated.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (index, (u, v)) in edges.into_iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { index, vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopArc { index, vertex: u });
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(UGraph { n, edges: list, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Connected components of `G - removed`, each sorted, ordered by their
    /// lowest vertex.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = removed.to_vec();
        seen.resize(self.n, false);
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&[])
    }

    /// `c_o(G - S)`.
    pub fn odd_components_without(&self, removed: &[bool]) -> usize {
        self.components_without(removed)
            .iter()
            .filter(|c| c.len() % 2 == 1)
            .count()
    }

    /// `i(G - S)`.
    pub fn isolated_without(&self, removed: &[bool]) -> usize {
        (0..self.n)
            .filter(|&v| !removed.get(v).copied().unwrap_or(false))
            .filter(|&v| {
                self.adj[v]
                    .iter()
                    .all(|&u| removed.get(u).copied().unwrap_or(false))
            })
            .count()
    }

    pub fn mask_of(&self, vertices: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &v in vertices {
            if v < self.n {
                mask[v] = true;
            }
        }
        mask
    }
}

/// A set of vertex-disjoint edges, stored as a mate table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![None; n],
        }
    }

    pub(crate) fn from_mates(mate: Vec<Option<usize>>) -> Self {
        Matching { mate }
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(|m| m.is_some())
    }

    /// Matched pairs `(u, v)`, `u < v`, sorted by `u`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| u < v).map(|v| (u, v)))
            .collect()
    }

    pub fn unmatched(&self) -> Vec<usize> {
        (0..self.mate.len())
            .filter(|&v| self.mate[v].is_none())
            .collect()
    }

    /// Symmetric mate table whose pairs are all edges of `g`.
    pub fn is_valid_for(&self, g: &UGraph) -> bool {
        self.mate.len() == g.vertex_count()
            && self.mate.iter().enumerate().all(|(u, m)| match *m {
                None => true,
                Some(v) => v < self.mate.len() && self.mate[v] == Some(u) && g.has_edge(u, v),
            })
    }
}
