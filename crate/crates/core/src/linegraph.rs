//! Line graphs of digraphs, the source/sink split transform, and component
//! structure of `L(D)`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::matching::UGraph;
use crate::{ArcId, Digraph, Error, Result, VertexId};

/// Whether the closed walk `u -> v -> u` around a digon counts as a directed
/// path of length two.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum P3Policy {
    /// `u`, `v`, `w` pairwise distinct.
    #[default]
    #[serde(rename = "strict")]
    StrictPath,
    /// `u = w` allowed.
    #[serde(rename = "closed")]
    AllowClosed,
}

impl P3Policy {
    pub fn as_str(self) -> &'static str {
        match self {
            P3Policy::StrictPath => "strict",
            P3Policy::AllowClosed => "closed",
        }
    }

    /// Whether arc `first` followed by arc `second` is a path of length two.
    pub fn chains(self, d: &Digraph, first: ArcId, second: ArcId) -> bool {
        let (a, b) = (d.arc(first), d.arc(second));
        first != second
            && a.head == b.tail
            && (self == P3Policy::AllowClosed || a.tail != b.head)
    }
}

impl fmt::Display for P3Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for P3Policy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "strict" => Ok(P3Policy::StrictPath),
            "closed" => Ok(P3Policy::AllowClosed),
            other => Err(format!("unknown policy `{other}` (expected strict|closed)")),
        }
    }
}

/// `L(D)`: vertex `i` is arc `i` of the source digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraph {
    graph: UGraph,
    policy: P3Policy,
}

impl LineGraph {
    pub fn graph(&self) -> &UGraph {
        &self.graph
    }

    pub fn policy(&self) -> P3Policy {
        self.policy
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edges(&self) -> &[(ArcId, ArcId)] {
        self.graph.edges()
    }

    pub fn is_connected(&self) -> bool {
        self.graph.components().len() <= 1
    }

    pub fn component_count(&self) -> usize {
        self.graph.components().len()
    }
}

/// Pairs each in-arc of `v` with each out-arc of `v`, for every `v`, so the
/// work is `sum d+(v) d-(v)` rather than all arc pairs.
pub fn build_line_graph(d: &Digraph, policy: P3Policy) -> LineGraph {
    let mut edges = Vec::new();
    for v in 0..d.order() {
        for &a1 in d.in_arcs(v) {
            for &a2 in d.out_arcs(v) {
                if policy.chains(d, a1, a2) {
                    edges.push((a1, a2));
                }
            }
        }
    }
    let graph = UGraph::new(d.size(), edges).expect("arc ids are in range and distinct");
    LineGraph { graph, policy }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    /// Same arc ids as the source digraph, endpoints re-indexed densely.
    pub dprime: Digraph,
    /// `origin[v']` = (original vertex, copy ordinal).
    pub origin: Vec<(VertexId, usize)>,
}

/// Splits every sink of indegree `k >= 2` into `k` indegree-1 sinks and every
/// source of outdegree `l >= 2` into `l` outdegree-1 sources. Splitting never
/// changes another vertex's degrees, so one pass reaches the fixpoint. Copies
/// take consecutive ids and are handed to arcs in arc id order.
pub fn split_transform(d: &Digraph) -> Result<SplitResult> {
    if let Some(v) = (0..d.order()).find(|&v| d.is_isolated(v)) {
        return Err(Error::IsolatedVertex(v));
    }
    let mut origin = Vec::new();
    let mut new_tail = vec![0; d.size()];
    let mut new_head = vec![0; d.size()];
    for v in 0..d.order() {
        let (out, inc) = (d.out_arcs(v), d.in_arcs(v));
        if out.is_empty() && inc.len() >= 2 {
            for (k, &a) in inc.iter().enumerate() {
                new_head[a] = origin.len();
                origin.push((v, k));
            }
        } else if inc.is_empty() && out.len() >= 2 {
            for (k, &a) in out.iter().enumerate() {
                new_tail[a] = origin.len();
                origin.push((v, k));
            }
        } else {
            let id = origin.len();
            origin.push((v, 0));
            for &a in out {
                new_tail[a] = id;
            }
            for &a in inc {
                new_head[a] = id;
            }
        }
    }
    let dprime = Digraph::new(origin.len(), (0..d.size()).map(|a| (new_tail[a], new_head[a])))?;
    Ok(SplitResult { dprime, origin })
}

fn require_theorem_hypotheses(d: &Digraph) -> Result<()> {
    if !d.is_asymmetric() {
        return Err(Error::PreconditionViolated("digraph has a digon".into()));
    }
    if let Some(v) = (0..d.order()).find(|&v| d.is_isolated(v)) {
        return Err(Error::PreconditionViolated(format!("vertex {v} is isolated")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub connected: bool,
    /// BFS on `L(D)` agrees with weak connectivity of the split digraph.
    pub method_agreement: bool,
}

/// Connectivity of `L(D)` computed twice: BFS on the line graph, and weak
/// connectivity of the split transform.
pub fn line_graph_connected(d: &Digraph, policy: P3Policy) -> Result<Connectivity> {
    require_theorem_hypotheses(d)?;
    let connected = bfs_connected(build_line_graph(d, policy).graph());
    let split = split_transform(d)?;
    Ok(Connectivity {
        connected,
        method_agreement: connected == split.dprime.is_weakly_connected(),
    })
}

fn bfs_connected(g: &UGraph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                queue.push_back(u);
            }
        }
    }
    count == n
}

/// Upper bound on the number of components of `L(D)` for strict asymmetric
/// digraphs of order `n`: `floor(n^2 / 4)`.
pub fn component_bound(n: usize) -> usize {
    if n % 2 == 1 {
        (n * n - 1) / 4
    } else {
        n * n / 4
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremalKind {
    TransitiveTournament3,
    BalancedBipartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentAnalysis {
    pub num_components: usize,
    pub f_n: usize,
    pub bound_holds: bool,
    /// `num_components == f_n`.
    pub is_extremal: bool,
    /// Structural family membership, detected independently of the count.
    pub extremal_kind: Option<ExtremalKind>,
    pub edgeless: bool,
    /// Every non-isolated vertex is a pure source or pure sink and every arc
    /// runs from a source to a sink.
    pub source_sink_bipartite: bool,
    pub edgeless_agreement: bool,
}

pub fn component_analysis(d: &Digraph, policy: P3Policy) -> Result<ComponentAnalysis> {
    if !d.is_asymmetric() {
        return Err(Error::PreconditionViolated("digraph has a digon".into()));
    }
    let l = build_line_graph(d, policy);
    let num_components = l.component_count();
    let f_n = component_bound(d.order());
    let edgeless = l.edges().is_empty();
    let source_sink_bipartite = is_source_sink_bipartite(d);
    Ok(ComponentAnalysis {
        num_components,
        f_n,
        bound_holds: num_components <= f_n,
        is_extremal: num_components == f_n,
        extremal_kind: extremal_family(d),
        edgeless,
        source_sink_bipartite,
        edgeless_agreement: edgeless == source_sink_bipartite,
    })
}

fn is_source_sink_bipartite(d: &Digraph) -> bool {
    let live = |v: VertexId| !d.is_isolated(v);
    let sources = |v: VertexId| live(v) && d.in_degree(v) == 0;
    let sinks = |v: VertexId| live(v) && d.out_degree(v) == 0;
    (0..d.order()).all(|v| !live(v) || sources(v) != sinks(v))
        && d.arcs().iter().all(|a| sources(a.tail) && sinks(a.head))
}

/// Transitive tournament of order 3, or a balanced complete bipartite graph
/// with every arc from one side to the other.
pub fn extremal_family(d: &Digraph) -> Option<ExtremalKind> {
    let n = d.order();
    if n == 3 && d.is_tournament() && (0..3).any(|v| d.out_degree(v) == 2)
        && (0..3).any(|v| d.in_degree(v) == 2)
    {
        return Some(ExtremalKind::TransitiveTournament3);
    }
    if d.size() == 0 {
        return (n <= 1).then_some(ExtremalKind::BalancedBipartite);
    }
    let xs: Vec<VertexId> = (0..n).filter(|&v| d.in_degree(v) == 0).collect();
    let ys: Vec<VertexId> = (0..n).filter(|&v| d.out_degree(v) == 0).collect();
    let balanced = xs.len() + ys.len() == n && xs.len().abs_diff(ys.len()) <= 1;
    let complete = d.size() == xs.len() * ys.len()
        && xs.iter().all(|&x| d.out_degree(x) == ys.len());
    (balanced && complete).then_some(ExtremalKind::BalancedBipartite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_bipartite_orientation, transitive_tournament};

    fn tt3() -> Digraph {
        transitive_tournament(3).unwrap()
    }

    fn c3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn line_graph_examples() {
        let l = build_line_graph(&tt3(), P3Policy::StrictPath);
        assert_eq!(l.vertex_count(), 3);
        // arcs: 0=(0,1), 1=(0,2), 2=(1,2)
        assert_eq!(l.edges(), &[(0, 2)]);

        let l = build_line_graph(&c3(), P3Policy::StrictPath);
        assert_eq!(l.edges(), &[(0, 1), (0, 2), (1, 2)]);

        let digon = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert!(build_line_graph(&digon, P3Policy::StrictPath).edges().is_empty());
        assert_eq!(build_line_graph(&digon, P3Policy::AllowClosed).edges(), &[(0, 1)]);
    }

    #[test]
    fn split_sink() {
        let d = Digraph::new(3, [(0, 2), (1, 2)]).unwrap();
        let s = split_transform(&d).unwrap();
        assert_eq!(s.dprime.order(), 4);
        assert_eq!(s.origin, vec![(0, 0), (1, 0), (2, 0), (2, 1)]);
        let arcs: Vec<_> = s.dprime.arcs().iter().map(|a| (a.tail, a.head)).collect();
        assert_eq!(arcs, vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn split_keeps_strong_digraph() {
        let s = split_transform(&c3()).unwrap();
        assert_eq!(s.dprime, c3());
    }

    #[test]
    fn split_tt3_splits_source_and_sink() {
        let s = split_transform(&tt3()).unwrap();
        // 0 -> (0,0),(0,1); 1 stays; 2 -> (2,0),(2,1)
        assert_eq!(s.origin, vec![(0, 0), (0, 1), (1, 0), (2, 0), (2, 1)]);
        let arcs: Vec<_> = s.dprime.arcs().iter().map(|a| (a.tail, a.head)).collect();
        assert_eq!(arcs, vec![(0, 2), (1, 3), (2, 4)]);
        assert!(!s.dprime.is_weakly_connected());
    }

    #[test]
    fn split_rejects_isolated() {
        let d = Digraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(split_transform(&d), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn connectivity_examples() {
        let strict = P3Policy::StrictPath;
        let c = line_graph_connected(&c3(), strict).unwrap();
        assert!(c.connected && c.method_agreement);
        let d = Digraph::new(3, [(0, 2), (1, 2)]).unwrap();
        let c = line_graph_connected(&d, strict).unwrap();
        assert!(!c.connected && c.method_agreement);
        let c = line_graph_connected(&tt3(), strict).unwrap();
        assert!(!c.connected && c.method_agreement);
        let digon = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert!(matches!(
            line_graph_connected(&digon, strict),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn bound_values() {
        let f: Vec<usize> = (0..8).map(component_bound).collect();
        assert_eq!(f, vec![0, 0, 1, 2, 4, 6, 9, 12]);
    }

    #[test]
    fn component_analysis_examples() {
        let a = component_analysis(&tt3(), P3Policy::StrictPath).unwrap();
        assert_eq!((a.num_components, a.f_n), (2, 2));
        assert!(a.is_extremal);
        assert_eq!(a.extremal_kind, Some(ExtremalKind::TransitiveTournament3));

        let k22 = complete_bipartite_orientation(2, 2).unwrap();
        let a = component_analysis(&k22, P3Policy::StrictPath).unwrap();
        assert_eq!((a.num_components, a.f_n), (4, 4));
        assert_eq!(a.extremal_kind, Some(ExtremalKind::BalancedBipartite));
        assert!(a.edgeless && a.source_sink_bipartite);

        let a = component_analysis(&c3(), P3Policy::StrictPath).unwrap();
        assert_eq!((a.num_components, a.f_n), (1, 2));
        assert!(a.bound_holds && !a.is_extremal);
        assert_eq!(a.extremal_kind, None);
        assert!(a.edgeless_agreement);
    }
}
