//! Undirected P3-decomposition: a connected graph splits into paths of
//! length two exactly when it has an even number of edges.

use serde::Serialize;

use crate::matching::UGraph;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KotzigResult {
    /// `[a, v, b]`: edges `av` and `vb`.
    pub paths: Vec<[usize; 3]>,
    /// Vertex sets of components with an odd number of edges.
    pub odd_components: Vec<Vec<usize>>,
}

/// Spanning-tree pairing per component. Vertices are processed in DFS
/// post-order; each collects its non-tree edges (assigned to whichever end
/// finishes first) and the child tree edges its children left over, takes the
/// edge to its parent as well when that count is odd, and pairs what it holds.
pub fn kotzig_undirected(g: &UGraph) -> KotzigResult {
    let n = g.vertex_count();
    let mut result = KotzigResult::default();
    for comp in g.components() {
        let edges = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if edges == 0 {
            continue;
        }
        if edges % 2 == 1 {
            result.odd_components.push(comp);
            continue;
        }
        let root = comp[0];
        let mut parent = vec![usize::MAX; n];
        let mut visited = vec![false; n];
        let mut post = Vec::with_capacity(comp.len());
        let mut stack = vec![(root, 0usize)];
        visited[root] = true;
        while let Some((v, i)) = stack.last_mut() {
            let v = *v;
            if let Some(&u) = g.neighbors(v).get(*i) {
                *i += 1;
                if !visited[u] {
                    visited[u] = true;
                    parent[u] = v;
                    stack.push((u, 0));
                }
            } else {
                post.push(v);
                stack.pop();
            }
        }
        let mut rank = vec![usize::MAX; n];
        for (i, &v) in post.iter().enumerate() {
            rank[v] = i;
        }
        let mut pending: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in g.edges() {
            if rank[a] == usize::MAX || parent[a] == b || parent[b] == a {
                continue;
            }
            if rank[a] < rank[b] {
                pending[a].push(b);
            } else {
                pending[b].push(a);
            }
        }
        for &v in &post {
            let mut held = std::mem::take(&mut pending[v]);
            let p = parent[v];
            if p != usize::MAX {
                if held.len() % 2 == 1 {
                    held.push(p);
                } else {
                    pending[p].push(v);
                }
            }
            debug_assert!(held.len().is_multiple_of(2));
            for pair in held.chunks_exact(2) {
                result.paths.push([pair[0], v, pair[1]]);
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn covers_each_edge_once(g: &UGraph, r: &KotzigResult) -> bool {
        let mut seen = HashSet::new();
        for &[a, v, b] in &r.paths {
            for (x, y) in [(a, v), (v, b)] {
                if !g.has_edge(x, y) || !seen.insert((x.min(y), x.max(y))) {
                    return false;
                }
            }
        }
        seen.len() == g.edge_count()
    }

    #[test]
    fn path_of_two_edges() {
        let g = UGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let r = kotzig_undirected(&g);
        assert_eq!(r.paths.len(), 1);
        assert!(covers_each_edge_once(&g, &r));
    }

    #[test]
    fn triangle_fails() {
        let g = UGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = kotzig_undirected(&g);
        assert!(r.paths.is_empty());
        assert_eq!(r.odd_components, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn four_cycle() {
        let g = UGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = kotzig_undirected(&g);
        assert_eq!(r.paths.len(), 2);
        assert!(covers_each_edge_once(&g, &r));
    }

    #[test]
    fn k4_minus_nothing_mixed_components() {
        // K4 has 6 edges; a disjoint edge is an odd component.
        let g = UGraph::new(
            6,
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5)],
        )
        .unwrap();
        let r = kotzig_undirected(&g);
        assert_eq!(r.paths.len(), 3);
        assert_eq!(r.odd_components, vec![vec![4, 5]]);
    }
}
