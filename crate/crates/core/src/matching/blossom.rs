//! Edmonds' blossom algorithm (the O(V^3) BFS variant with base contraction),
//! the Gallai-Edmonds structure read off a maximum matching, and Tutte
//! witness sets.

use std::collections::VecDeque;

use serde::Serialize;

use super::{Matching, UGraph};
use crate::{Error, Result};

const NONE: usize = usize::MAX;

/// Alternating forest state shared by the single-root augmenting search and
/// the all-exposed-roots search used for Gallai-Edmonds.
struct Forest<'g> {
    g: &'g UGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    even: Vec<bool>,
    queue: VecDeque<usize>,
}

enum Step {
    Augment(usize),
    Exhausted,
}

impl<'g> Forest<'g> {
    fn new(g: &'g UGraph, mate: Vec<usize>) -> Self {
        let n = g.vertex_count();
        Forest {
            g,
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            even: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self, roots: &[usize]) {
        let n = self.g.vertex_count();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.even.iter_mut().for_each(|e| *e = false);
        self.queue.clear();
        debug_assert!(roots.iter().all(|&r| r < n));
        for &r in roots {
            self.even[r] = true;
            self.queue.push_back(r);
        }
    }

    /// Lowest common base of `a` and `b` in the forest, or `None` when they
    /// sit in different trees (which means an augmenting path exists).
    fn common_base(&self, mut a: usize, mut b: usize) -> Option<usize> {
        let mut on_path = vec![false; self.mate.len()];
        loop {
            a = self.base[a];
            on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path[b] {
                return Some(b);
            }
            if self.mate[b] == NONE {
                return None;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, blossom: &mut [bool]) {
        while self.base[v] != b {
            blossom[self.base[v]] = true;
            blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn contract(&mut self, v: usize, to: usize, b: usize) {
        let mut blossom = vec![false; self.mate.len()];
        self.mark_path(v, b, to, &mut blossom);
        self.mark_path(to, b, v, &mut blossom);
        for i in 0..self.mate.len() {
            if blossom[self.base[i]] {
                self.base[i] = b;
                if !self.even[i] {
                    self.even[i] = true;
                    self.queue.push_back(i);
                }
            }
        }
    }

    /// Grows the forest until it finds an exposed odd vertex (single root) or
    /// runs out of queue. With several roots a cross-tree even-even edge is
    /// reported as `Augment(NONE)`.
    fn grow(&mut self) -> Step {
        let g = self.g;
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                let to_even = self.mate[to] == NONE && self.even[to]
                    || self.mate[to] != NONE && self.parent[self.mate[to]] != NONE;
                if to_even {
                    match self.common_base(v, to) {
                        Some(b) => self.contract(v, to, b),
                        None => return Step::Augment(NONE),
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Step::Augment(to);
                    }
                    let m = self.mate[to];
                    self.even[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        Step::Exhausted
    }

    fn augment(&mut self, mut to: usize) {
        while to != NONE {
            let pv = self.parent[to];
            let next = self.mate[pv];
            self.mate[to] = pv;
            self.mate[pv] = to;
            to = next;
        }
    }
}

fn into_matching(mate: Vec<usize>) -> Matching {
    Matching::from_mates(
        mate.into_iter()
            .map(|m| if m == NONE { None } else { Some(m) })
            .collect(),
    )
}

/// Maximum-cardinality matching. Exposed vertices are tried as roots in
/// increasing id order; each search is a BFS over sorted adjacency lists, so
/// the result is a deterministic function of the graph.
pub fn max_matching(g: &UGraph) -> Matching {
    let n = g.vertex_count();
    let mut forest = Forest::new(g, vec![NONE; n]);
    for root in 0..n {
        if forest.mate[root] != NONE {
            continue;
        }
        forest.reset(&[root]);
        if let Step::Augment(to) = forest.grow() {
            debug_assert!(to != NONE);
            forest.augment(to);
        }
    }
    into_matching(forest.mate)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GallaiEdmonds {
    /// Vertices missed by at least one maximum matching.
    pub d_set: Vec<usize>,
    /// Neighbours of `d_set` outside it.
    pub a_set: Vec<usize>,
    pub c_set: Vec<usize>,
    /// `|V| - 2 * nu(G)`.
    pub deficiency: usize,
    #[serde(skip)]
    pub matching: Matching,
}

/// Gallai-Edmonds decomposition from one maximum matching: `D` is the set of
/// even vertices of the alternating forest grown from every exposed vertex.
pub fn gallai_edmonds(g: &UGraph) -> GallaiEdmonds {
    let n = g.vertex_count();
    let matching = max_matching(g);
    let mate: Vec<usize> = (0..n).map(|v| matching.mate(v).unwrap_or(NONE)).collect();
    let roots: Vec<usize> = (0..n).filter(|&v| mate[v] == NONE).collect();
    let mut forest = Forest::new(g, mate);
    forest.reset(&roots);
    match forest.grow() {
        Step::Exhausted => {}
        Step::Augment(_) => unreachable!("max_matching returned a non-maximum matching"),
    }
    let in_d = forest.even;
    let mut in_a = vec![false; n];
    for v in (0..n).filter(|&v| in_d[v]) {
        for &u in g.neighbors(v) {
            if !in_d[u] {
                in_a[u] = true;
            }
        }
    }
    let d_set: Vec<usize> = (0..n).filter(|&v| in_d[v]).collect();
    let a_set: Vec<usize> = (0..n).filter(|&v| in_a[v]).collect();
    let c_set: Vec<usize> = (0..n).filter(|&v| !in_d[v] && !in_a[v]).collect();
    GallaiEdmonds {
        d_set,
        a_set,
        c_set,
        deficiency: n - 2 * matching.size(),
        matching,
    }
}

/// A set `S` with `c_o(G - S) > |S|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TutteWitness {
    pub s: Vec<usize>,
    pub odd_component_count: usize,
}

impl TutteWitness {
    pub fn deficiency(&self) -> i64 {
        self.odd_component_count as i64 - self.s.len() as i64
    }
}

/// Starts from the Gallai-Edmonds set `A` and absorbs the lowest vertex of the
/// lowest even component until every component of `G - S` is odd. The
/// deficiency `c_o(G - S) - |S|` stays at its maximum throughout.
pub fn tutte_witness(g: &UGraph) -> Result<TutteWitness> {
    let ge = gallai_edmonds(g);
    if ge.deficiency == 0 {
        return Err(Error::HasPerfectMatching);
    }
    let mut removed = g.mask_of(&ge.a_set);
    let odd_component_count = loop {
        let comps = g.components_without(&removed);
        match comps.iter().find(|c| c.len() % 2 == 0) {
            Some(even) => removed[even[0]] = true,
            None => break comps.len(),
        }
    };
    let s: Vec<usize> = (0..g.vertex_count()).filter(|&v| removed[v]).collect();
    debug_assert_eq!(odd_component_count - s.len(), ge.deficiency);
    Ok(TutteWitness {
        s,
        odd_component_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> UGraph {
        UGraph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn small_cardinalities() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(max_matching(&k3).size(), 1);
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let m = max_matching(&c4);
        assert!(m.is_perfect());
        assert_eq!(m.pairs(), vec![(0, 1), (2, 3)]);
        // L(TT3): arcs (0,1),(0,2),(1,2) -> edge {0,2}, vertex 1 isolated
        let l = g(3, &[(0, 2)]);
        let m = max_matching(&l);
        assert_eq!(m.size(), 1);
        assert!(!m.is_perfect());
    }

    #[test]
    fn blossom_needed() {
        // Triangle 0-1-2 with tails 0-3 and 2-4, plus 1-5: perfect through a blossom.
        let h = g(6, &[(0, 1), (1, 2), (2, 0), (0, 3), (2, 4), (1, 5)]);
        let m = max_matching(&h);
        assert!(m.is_perfect());
        assert!(m.is_valid_for(&h));
        // Two triangles joined by a path of length 1 through their tips.
        let h = g(
            8,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3), (0, 6), (5, 7)],
        );
        assert!(max_matching(&h).is_perfect());
    }

    #[test]
    fn gallai_edmonds_examples() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let ge = gallai_edmonds(&k3);
        assert_eq!(ge.d_set, vec![0, 1, 2]);
        assert!(ge.a_set.is_empty());
        assert_eq!(ge.deficiency, 1);

        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let ge = gallai_edmonds(&star);
        assert_eq!(ge.a_set, vec![0]);
        assert_eq!(ge.d_set, vec![1, 2, 3]);
        assert_eq!(ge.deficiency, 2);

        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let ge = gallai_edmonds(&c4);
        assert!(ge.d_set.is_empty() && ge.a_set.is_empty());
        assert_eq!(ge.c_set, vec![0, 1, 2, 3]);
        assert_eq!(ge.deficiency, 0);
    }

    #[test]
    fn tutte_witness_examples() {
        let k3 = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let w = tutte_witness(&k3).unwrap();
        assert!(w.s.is_empty());
        assert_eq!(w.odd_component_count, 1);

        let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
        let w = tutte_witness(&star).unwrap();
        assert_eq!(w.s, vec![0]);
        assert_eq!(w.odd_component_count, 3);

        let path = g(3, &[(0, 1), (1, 2)]);
        let w = tutte_witness(&path).unwrap();
        assert_eq!(w.s, vec![1]);
        assert_eq!(w.odd_component_count, 2);

        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(tutte_witness(&c4), Err(Error::HasPerfectMatching));
    }

    #[test]
    fn even_components_are_absorbed() {
        // K3 plus a disjoint edge: A is empty, the edge component is even.
        let h = g(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]);
        let w = tutte_witness(&h).unwrap();
        assert_eq!(w.s, vec![3]);
        assert_eq!(w.odd_component_count, 2);
        assert_eq!(w.deficiency(), 1);
    }

    #[test]
    fn empty_graph() {
        let e = g(0, &[]);
        assert_eq!(max_matching(&e).size(), 0);
        assert_eq!(gallai_edmonds(&e).deficiency, 0);
    }
}
