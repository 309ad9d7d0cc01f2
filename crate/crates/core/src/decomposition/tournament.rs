//! Tournaments of even size: decomposable exactly when no partition
//! `(X, Y, Z)` has negative slack. Refutations are searched for in order of
//! cost: source-to-sink arc, dominant near-balanced bipartition, the Tutte
//! set of `L(T)`, and finally every partition for small orders.

use serde::Serialize;

use super::{decompose, verify_certificate, Certificate, CheckReport, Decision};
use crate::linegraph::build_line_graph;
use crate::matching::tutte_witness;
use crate::{Digraph, Error, P3Policy, Partition3, Result, VertexSet};

/// Largest order for the `3^n` partition scan.
pub const EXHAUSTIVE_PARTITION_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateRoute {
    SourceSinkArc,
    DominantBipartition,
    TutteGuided,
    Exhaustive,
}

fn partition_certificate(t: &Digraph, partition: Partition3) -> Option<Certificate> {
    let slack = t.partition_slack(&partition).ok()?;
    let c = Certificate::TournamentPartition { partition, slack };
    verify_certificate(t, &c).then_some(c)
}

/// An arc from a vertex of indegree 0 to a vertex of outdegree 0 gives
/// `X = {u}`, `Y = {v}` with slack -1.
pub fn source_sink_certificate(t: &Digraph) -> Option<Certificate> {
    let n = t.order();
    let arc = t
        .arcs()
        .iter()
        .find(|a| t.in_degree(a.tail) == 0 && t.out_degree(a.head) == 0)?;
    let x = VertexSet::from_slice(n, &[arc.tail]).ok()?;
    let y = VertexSet::from_slice(n, &[arc.head]).ok()?;
    partition_certificate(t, Partition3::with_rest(x, y).ok()?)
}

/// Looks for a split `X, Y` with `||X| - |Y|| <= 1` and every `X`-`Y` pair
/// oriented `X -> Y`. Only the splits that put the highest-outdegree vertices
/// in `X` are tried; any such dominant split has that shape.
pub fn dominant_bipartition_certificate(t: &Digraph) -> Option<Certificate> {
    let n = t.order();
    if n < 2 {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(t.out_degree(v)), v));
    let mut sizes = vec![n / 2, n.div_ceil(2)];
    sizes.dedup();
    sizes.into_iter().find_map(|k| {
        let x = VertexSet::from_slice(n, &order[..k]).ok()?;
        let y = x.complement();
        let complete = t.arc_count_between(&x, &y).ok()? == k * (n - k);
        if !complete {
            return None;
        }
        partition_certificate(t, Partition3::new(x, y, VertexSet::empty(n)).ok()?)
    })
}

/// Tutte set `S` of `L(T)` with all components of `L(T) - S` odd; the
/// isolated arcs `I` of `L(T) - S` give `X = tails(I)`, `Y = heads(I)`.
/// Accepted only if the resulting slack is negative.
pub fn tutte_guided_certificate(t: &Digraph) -> Option<Certificate> {
    let l = build_line_graph(t, P3Policy::StrictPath);
    let g = l.graph();
    let w = tutte_witness(g).ok()?;
    let removed = g.mask_of(&w.s);
    let n = t.order();
    let mut x = VertexSet::empty(n);
    let mut y = VertexSet::empty(n);
    for a in (0..g.vertex_count())
        .filter(|&a| !removed[a] && g.neighbors(a).iter().all(|&b| removed[b]))
    {
        x.insert(t.arc(a).tail);
        y.insert(t.arc(a).head);
    }
    if !x.is_disjoint(&y) {
        return None;
    }
    partition_certificate(t, Partition3::with_rest(x, y).ok()?)
}

/// First partition in base-3 mask order with negative slack.
pub fn exhaustive_partition_certificate(t: &Digraph) -> Result<Option<Certificate>> {
    let n = t.order();
    if n > EXHAUSTIVE_PARTITION_LIMIT {
        return Err(Error::CertificateSearchExhausted(n));
    }
    let mut labels = vec![0u8; n];
    loop {
        let mut slack = 0i64;
        for a in t.arcs() {
            slack += match (labels[a.tail], labels[a.head]) {
                (0, 1) => -1,
                (1, 0) | (0, 0) | (1, 1) | (2, 0) | (1, 2) => 1,
                _ => 0,
            };
        }
        if slack < 0 {
            let partition = Partition3::from_labels(&labels)?;
            return Ok(partition_certificate(t, partition));
        }
        // base-3 increment, digit 0 least significant
        let mut i = 0;
        loop {
            if i == n {
                return Ok(None);
            }
            labels[i] += 1;
            if labels[i] < 3 {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

/// Runs the refutation routes in order and returns the first verified
/// certificate.
pub fn tournament_certificate(t: &Digraph) -> Result<(Certificate, CertificateRoute)> {
    let cheap = [
        (source_sink_certificate as fn(&Digraph) -> Option<Certificate>, CertificateRoute::SourceSinkArc),
        (dominant_bipartition_certificate, CertificateRoute::DominantBipartition),
        (tutte_guided_certificate, CertificateRoute::TutteGuided),
    ];
    for (route_fn, route) in cheap {
        if let Some(c) = route_fn(t) {
            return Ok((c, route));
        }
    }
    match exhaustive_partition_certificate(t)? {
        Some(c) => Ok((c, CertificateRoute::Exhaustive)),
        None => Err(Error::CertificateSearchExhausted(t.order())),
    }
}

pub fn check_tournament(t: &Digraph) -> Result<CheckReport> {
    check_tournament_with(t, true)
}

/// With `certify = false` a negative answer carries no certificate, which
/// skips the exponential fallback.
pub fn check_tournament_with(t: &Digraph, certify: bool) -> Result<CheckReport> {
    if !t.is_tournament() {
        return Err(Error::NotTournament);
    }
    if t.size() % 2 == 1 {
        return Err(Error::OddSize(t.size()));
    }
    match decompose(t, P3Policy::StrictPath) {
        Decision::Decomposable(dec) => Ok(CheckReport::yes(dec)),
        Decision::Refuted(_) if !certify => Ok(CheckReport::no(None, None)),
        Decision::Refuted(_) => {
            let (c, route) = tournament_certificate(t)?;
            Ok(CheckReport::no(Some(c), Some(route)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::verify_decomposition;
    use crate::generate::transitive_tournament;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_slice(n, vs).unwrap()
    }

    #[test]
    fn transitive_four_is_refuted_by_source_sink_arc() {
        let t = transitive_tournament(4).unwrap();
        let r = check_tournament(&t).unwrap();
        assert!(!r.decomposable);
        assert_eq!(r.route, Some(CertificateRoute::SourceSinkArc));
        let expected = Partition3::new(set(4, &[0]), set(4, &[3]), set(4, &[1, 2])).unwrap();
        assert_eq!(
            r.certificate,
            Some(Certificate::TournamentPartition {
                partition: expected,
                slack: -1
            })
        );
    }

    #[test]
    fn strong_four_decomposes() {
        let t = Digraph::new(4, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (3, 2)]).unwrap();
        let r = check_tournament(&t).unwrap();
        assert!(r.decomposable);
        let dec = r.decomposition.unwrap();
        assert_eq!(dec.len(), 3);
        assert!(verify_decomposition(&t, &dec, P3Policy::StrictPath));
    }

    #[test]
    fn dominant_bipartition_route() {
        let t = Digraph::new(4, [(0, 2), (0, 3), (1, 2), (1, 3), (0, 1), (2, 3)]).unwrap();
        let c = dominant_bipartition_certificate(&t).unwrap();
        let expected = Partition3::new(set(4, &[0, 1]), set(4, &[2, 3]), VertexSet::empty(4)).unwrap();
        assert_eq!(
            c,
            Certificate::TournamentPartition {
                partition: expected,
                slack: -2
            }
        );
    }

    #[test]
    fn preconditions() {
        let tt3 = transitive_tournament(3).unwrap();
        assert_eq!(check_tournament(&tt3), Err(Error::OddSize(3)));
        let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(check_tournament(&path), Err(Error::NotTournament));
    }

    #[test]
    fn exhaustive_scan_finds_tt4_violation() {
        let t = transitive_tournament(4).unwrap();
        let c = exhaustive_partition_certificate(&t).unwrap().unwrap();
        assert!(verify_certificate(&t, &c));
        let big = transitive_tournament(13).unwrap();
        assert_eq!(
            exhaustive_partition_certificate(&big),
            Err(Error::CertificateSearchExhausted(13))
        );
    }
}
