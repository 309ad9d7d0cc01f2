//! Euler tours and the Hamilton cycle they induce in `L(D)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::linegraph::build_line_graph;
use crate::{ArcId, Digraph, Error, LineGraph, P3Policy, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct EulerTour {
    pub arcs: Vec<ArcId>,
}

impl EulerTour {
    /// Consecutive arcs chain (cyclically) and every arc appears once.
    pub fn is_valid_for(&self, d: &Digraph) -> bool {
        let m = self.arcs.len();
        if m != d.size() {
            return false;
        }
        let mut seen = vec![false; m];
        for (i, &a) in self.arcs.iter().enumerate() {
            if a >= m || std::mem::replace(&mut seen[a], true) {
                return false;
            }
            let next = self.arcs[(i + 1) % m];
            if next >= m || d.arc(a).head != d.arc(next).tail {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HamiltonCycle {
    pub vertices: Vec<ArcId>,
}

impl HamiltonCycle {
    /// Index of the first cyclically consecutive pair that is not an edge of
    /// `l`, or `None` when the cycle is valid.
    pub fn first_gap(&self, l: &LineGraph) -> Option<usize> {
        let n = l.vertex_count();
        let distinct: HashSet<_> = self.vertices.iter().collect();
        if self.vertices.len() != n || distinct.len() != n {
            return Some(0);
        }
        (0..n).find(|&i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            a >= n || !l.graph().has_edge(a, b)
        })
    }

    pub fn is_valid_for(&self, l: &LineGraph) -> bool {
        self.vertices.len() >= 3 && self.first_gap(l).is_none()
    }
}

/// Balanced degrees everywhere and all arcs in one weakly connected block.
/// Isolated vertices are ignored.
pub fn is_eulerian(d: &Digraph) -> bool {
    if (0..d.order()).any(|v| d.in_degree(v) != d.out_degree(v)) {
        return false;
    }
    let Some(start) = (0..d.order()).find(|&v| !d.is_isolated(v)) else {
        return true;
    };
    let mut seen = vec![false; d.order()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        let next = d
            .out_arcs(v)
            .iter()
            .map(|&a| d.arc(a).head)
            .chain(d.in_arcs(v).iter().map(|&a| d.arc(a).tail));
        for u in next.collect::<Vec<_>>() {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (0..d.order()).all(|v| seen[v] || d.is_isolated(v))
}

/// Hierholzer, iterative. Starts at the lowest vertex with arcs and always
/// leaves a vertex by its lowest unused out-arc.
pub fn euler_tour(d: &Digraph) -> Result<EulerTour> {
    if d.size() == 0 || !is_eulerian(d) {
        return Err(Error::NotEulerian);
    }
    let start = (0..d.order())
        .find(|&v| d.out_degree(v) > 0)
        .expect("m >= 1");
    let mut next_out = vec![0usize; d.order()];
    let mut stack: Vec<(usize, Option<ArcId>)> = vec![(start, None)];
    let mut circuit = Vec::with_capacity(d.size());
    while let Some(&(v, via)) = stack.last() {
        if let Some(&a) = d.out_arcs(v).get(next_out[v]) {
            next_out[v] += 1;
            stack.push((d.arc(a).head, Some(a)));
        } else {
            stack.pop();
            circuit.extend(via);
        }
    }
    circuit.reverse();
    let tour = EulerTour { arcs: circuit };
    debug_assert!(tour.is_valid_for(d));
    Ok(tour)
}

/// The arc sequence of an Euler tour, read as a cycle in `L(D)`, checked
/// against the line graph built under `policy` before it is returned.
pub fn line_hamilton_cycle(d: &Digraph, policy: P3Policy) -> Result<HamiltonCycle> {
    if !is_eulerian(d) || d.size() == 0 {
        return Err(Error::NotEulerian);
    }
    if d.size() < 3 {
        return Err(Error::TooSmall(d.size()));
    }
    let tour = euler_tour(d)?;
    let cycle = HamiltonCycle {
        vertices: tour.arcs,
    };
    let l = build_line_graph(d, policy);
    match cycle.first_gap(&l) {
        None => Ok(cycle),
        Some(i) => {
            let m = cycle.vertices.len();
            let closed = build_line_graph(d, P3Policy::AllowClosed);
            if policy == P3Policy::StrictPath && cycle.is_valid_for(&closed) {
                Err(Error::PolicyMismatch {
                    position: i,
                    next: (i + 1) % m,
                })
            } else {
                Err(Error::UnverifiedCertificate(format!(
                    "tour step {i} is not an edge of L(D)"
                )))
            }
        }
    }
}
