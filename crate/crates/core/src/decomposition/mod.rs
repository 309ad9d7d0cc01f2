//! Decision procedures with certificates: the general line-graph matching
//! route, the tournament and bipartite characterizations, the fractional
//! partition condition, and the undirected even-size baseline.

mod bipartite;
mod kotzig;
mod tournament;

use serde::{Serialize, Serializer};

use crate::linegraph::build_line_graph;
use crate::matching::{fractional_pm, max_matching, tutte_witness, WitnessSource};
use crate::{ArcId, Digraph, Error, P3Policy, Partition3, Result, VertexId, VertexSet};

pub use bipartite::check_bipartite;
pub use kotzig::{kotzig_undirected, KotzigResult};
pub use tournament::{
    check_tournament, check_tournament_with, dominant_bipartition_certificate,
    exhaustive_partition_certificate, source_sink_certificate, tournament_certificate,
    tutte_guided_certificate, CertificateRoute, EXHAUSTIVE_PARTITION_LIMIT,
};

/// The directed path `u -> v -> w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P3Triple {
    pub u: VertexId,
    pub v: VertexId,
    pub w: VertexId,
}

impl P3Triple {
    pub fn new(u: VertexId, v: VertexId, w: VertexId) -> Self {
        P3Triple { u, v, w }
    }
}

impl Serialize for P3Triple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.u, self.v, self.w].serialize(s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct P3Decomposition {
    pub triples: Vec<P3Triple>,
}

impl P3Decomposition {
    pub fn from_triples<I: IntoIterator<Item = (VertexId, VertexId, VertexId)>>(it: I) -> Self {
        P3Decomposition {
            triples: it.into_iter().map(|(u, v, w)| P3Triple::new(u, v, w)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

/// Negative certificates. Each variant can be re-checked against the digraph
/// alone by [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    OddArcCount {
        m: usize,
    },
    TournamentPartition {
        #[serde(flatten)]
        partition: Partition3,
        slack: i64,
    },
    BipartiteImbalance {
        x: VertexSet,
        d_plus_x: usize,
        d_minus_x: usize,
    },
    /// `a(X1,Y1) + a(Y1,X1) > d+(Y1) + d-(X1)`.
    BipartiteHall {
        x: VertexSet,
        x1: VertexSet,
        y1: VertexSet,
        lhs: usize,
        rhs: usize,
    },
    FractionalPartition {
        #[serde(flatten)]
        partition: Partition3,
        slack: i64,
    },
    /// Arc set `S` with `c_o(L(D) - S) > |S|`.
    GenericTutte {
        s: Vec<ArcId>,
        odd_components: usize,
        policy: P3Policy,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::OddArcCount { .. } => "odd_arc_count",
            Certificate::TournamentPartition { .. } => "tournament_partition",
            Certificate::BipartiteImbalance { .. } => "bipartite_imbalance",
            Certificate::BipartiteHall { .. } => "bipartite_hall",
            Certificate::FractionalPartition { .. } => "fractional_partition",
            Certificate::GenericTutte { .. } => "generic_tutte",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Decomposable(P3Decomposition),
    Refuted(Certificate),
}

impl Decision {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Decision::Decomposable(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub decomposable: bool,
    pub decomposition: Option<P3Decomposition>,
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<CertificateRoute>,
}

impl CheckReport {
    fn yes(decomposition: P3Decomposition) -> Self {
        CheckReport {
            decomposable: true,
            decomposition: Some(decomposition),
            certificate: None,
            route: None,
        }
    }

    fn no(certificate: Option<Certificate>, route: Option<CertificateRoute>) -> Self {
        CheckReport {
            decomposable: false,
            decomposition: None,
            certificate,
            route,
        }
    }
}

/// Orients a matched line-graph pair into a triple. When both orders chain
/// (closed walk around a digon) the lower arc id goes first.
pub(crate) fn triple_for(d: &Digraph, policy: P3Policy, a: ArcId, b: ArcId) -> P3Triple {
    let (first, second) = if policy.chains(d, a.min(b), a.max(b)) {
        (a.min(b), a.max(b))
    } else {
        (a.max(b), a.min(b))
    };
    debug_assert!(policy.chains(d, first, second));
    let (x, y) = (d.arc(first), d.arc(second));
    P3Triple::new(x.tail, x.head, y.head)
}

pub(crate) fn triples_from_pairs(
    d: &Digraph,
    policy: P3Policy,
    pairs: &[(ArcId, ArcId)],
) -> P3Decomposition {
    P3Decomposition {
        triples: pairs.iter().map(|&(a, b)| triple_for(d, policy, a, b)).collect(),
    }
}

/// A P3-decomposition exists exactly when `L(D)` has a perfect matching.
/// Odd arc counts are refuted by parity, anything else by a Tutte set of
/// `L(D)`.
pub fn decompose(d: &Digraph, policy: P3Policy) -> Decision {
    let m = d.size();
    if m % 2 == 1 {
        return Decision::Refuted(Certificate::OddArcCount { m });
    }
    let l = build_line_graph(d, policy);
    let matching = max_matching(l.graph());
    let decision = if matching.is_perfect() {
        Decision::Decomposable(triples_from_pairs(d, policy, &matching.pairs()))
    } else {
        let w = tutte_witness(l.graph()).expect("matching is not perfect");
        Decision::Refuted(Certificate::GenericTutte {
            s: w.s,
            odd_components: w.odd_component_count,
            policy,
        })
    };
    debug_assert!(match &decision {
        Decision::Decomposable(dec) => verify_decomposition(d, dec, policy),
        Decision::Refuted(c) => verify_certificate(d, c),
    });
    decision
}

/// Every triple is a path of `D` allowed by `policy` and every arc is used
/// exactly once.
pub fn verify_decomposition(d: &Digraph, dec: &P3Decomposition, policy: P3Policy) -> bool {
    let mut used = vec![false; d.size()];
    for t in &dec.triples {
        if policy == P3Policy::StrictPath && t.u == t.w {
            return false;
        }
        let (Some(a), Some(b)) = (d.arc_id(t.u, t.v), d.arc_id(t.v, t.w)) else {
            return false;
        };
        for id in [a, b] {
            if std::mem::replace(&mut used[id], true) {
                return false;
            }
        }
    }
    used.iter().all(|&u| u)
}

fn partition_fits(d: &Digraph, p: &Partition3) -> bool {
    p.x.universe() == d.order()
        && Partition3::new(p.x.clone(), p.y.clone(), p.z.clone()).is_ok()
}

/// Recomputes the claimed violation from `D` alone. Malformed certificates
/// (wrong ranges, stored counts that do not match) are rejected.
pub fn verify_certificate(d: &Digraph, c: &Certificate) -> bool {
    match c {
        Certificate::OddArcCount { m } => *m == d.size() && m % 2 == 1,
        Certificate::TournamentPartition { partition, slack }
        | Certificate::FractionalPartition { partition, slack } => {
            partition_fits(d, partition)
                && d.partition_slack(partition).is_ok_and(|s| s == *slack && s < 0)
        }
        Certificate::BipartiteImbalance {
            x,
            d_plus_x,
            d_minus_x,
        } => {
            d.is_bipartite_with(x)
                && d_plus_x != d_minus_x
                && d.cut_degrees(x) == Ok((*d_plus_x, *d_minus_x))
        }
        Certificate::BipartiteHall {
            x,
            x1,
            y1,
            lhs,
            rhs,
        } => {
            if !d.is_bipartite_with(x)
                || x1.universe() != d.order()
                || y1.universe() != d.order()
                || !x1.is_subset(x)
                || !y1.is_disjoint(x)
            {
                return false;
            }
            match hall_sides(d, x1, y1) {
                Ok((l, r)) => l == *lhs && r == *rhs && l > r,
                Err(_) => false,
            }
        }
        Certificate::GenericTutte {
            s,
            odd_components,
            policy,
        } => {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.len() || s.iter().any(|&a| a >= d.size()) {
                return false;
            }
            let l = build_line_graph(d, *policy);
            let odd = l.graph().odd_components_without(&l.graph().mask_of(s));
            odd == *odd_components && odd > s.len()
        }
    }
}

/// `(a(X1,Y1) + a(Y1,X1), d+(Y1) + d-(X1))`.
pub(crate) fn hall_sides(d: &Digraph, x1: &VertexSet, y1: &VertexSet) -> Result<(usize, usize)> {
    let lhs = d.arc_count_between(x1, y1)? + d.arc_count_between(y1, x1)?;
    let rhs = d.cut_degrees(y1)?.0 + d.cut_degrees(x1)?.1;
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FractionalReport {
    pub exists: bool,
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_source: Option<WitnessSource>,
}

/// Fractional perfect matching of `L(D)`; on failure the isolated arcs `I`
/// of `L(D) - S` give `X = tails(I)`, `Y = heads(I)`, `Z` the rest, a
/// partition with negative slack.
///
/// Under `StrictPath` on digraphs with digons the isolated arcs need not
/// yield a violating partition; that case is reported as
/// [`Error::UnverifiedCertificate`].
pub fn check_fractional(d: &Digraph, policy: P3Policy) -> Result<FractionalReport> {
    let l = build_line_graph(d, policy);
    let r = fractional_pm(l.graph())?;
    let Some(w) = r.witness else {
        return Ok(FractionalReport {
            exists: true,
            certificate: None,
            witness_source: None,
        });
    };
    let n = d.order();
    let mut x = VertexSet::empty(n);
    let mut y = VertexSet::empty(n);
    for &a in &w.isolated {
        x.insert(d.arc(a).tail);
        y.insert(d.arc(a).head);
    }
    if !x.is_disjoint(&y) {
        return Err(Error::UnverifiedCertificate(
            "isolated arcs share an endpoint role".into(),
        ));
    }
    let partition = Partition3::with_rest(x, y)?;
    let slack = d.partition_slack(&partition)?;
    let certificate = Certificate::FractionalPartition { partition, slack };
    if !verify_certificate(d, &certificate) {
        return Err(Error::UnverifiedCertificate(format!(
            "fractional partition has slack {slack}"
        )));
    }
    Ok(FractionalReport {
        exists: false,
        certificate: Some(certificate),
        witness_source: Some(w.source),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::transitive_tournament;

    fn c4() -> Digraph {
        Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_slice(n, vs).unwrap()
    }

    #[test]
    fn decompose_c4() {
        let dec = match decompose(&c4(), P3Policy::StrictPath) {
            Decision::Decomposable(dec) => dec,
            other => panic!("{other:?}"),
        };
        assert_eq!(dec, P3Decomposition::from_triples([(0, 1, 2), (2, 3, 0)]));
    }

    #[test]
    fn decompose_refutations() {
        let tt3 = transitive_tournament(3).unwrap();
        assert_eq!(
            decompose(&tt3, P3Policy::StrictPath),
            Decision::Refuted(Certificate::OddArcCount { m: 3 })
        );
        let d = Digraph::new(3, [(0, 2), (1, 2)]).unwrap();
        assert_eq!(
            decompose(&d, P3Policy::StrictPath),
            Decision::Refuted(Certificate::GenericTutte {
                s: vec![],
                odd_components: 2,
                policy: P3Policy::StrictPath
            })
        );
    }

    #[test]
    fn verify_decomposition_examples() {
        let strict = P3Policy::StrictPath;
        let good = P3Decomposition::from_triples([(0, 1, 2), (2, 3, 0)]);
        assert!(verify_decomposition(&c4(), &good, strict));
        let reuse = P3Decomposition::from_triples([(0, 1, 2), (0, 1, 2)]);
        assert!(!verify_decomposition(&c4(), &reuse, strict));
        let missing = P3Decomposition::from_triples([(0, 1, 2)]);
        assert!(!verify_decomposition(&c4(), &missing, strict));
        let bogus = P3Decomposition::from_triples([(0, 2, 3), (3, 0, 1)]);
        assert!(!verify_decomposition(&c4(), &bogus, strict));

        let digon = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let closed = P3Decomposition::from_triples([(0, 1, 0)]);
        assert!(verify_decomposition(&digon, &closed, P3Policy::AllowClosed));
        assert!(!verify_decomposition(&digon, &closed, strict));
    }

    #[test]
    fn verify_certificate_examples() {
        let tt3 = transitive_tournament(3).unwrap();
        let p = Partition3::new(set(3, &[0]), set(3, &[2]), set(3, &[1])).unwrap();
        let c = Certificate::TournamentPartition {
            partition: p.clone(),
            slack: -1,
        };
        assert!(verify_certificate(&tt3, &c));
        let lying = Certificate::TournamentPartition {
            partition: p,
            slack: -5,
        };
        assert!(!verify_certificate(&tt3, &lying));

        assert!(!verify_certificate(&c4(), &Certificate::OddArcCount { m: 4 }));

        let t = Certificate::GenericTutte {
            s: vec![],
            odd_components: 1,
            policy: P3Policy::StrictPath,
        };
        assert!(verify_certificate(&tt3, &t));
        let t = Certificate::GenericTutte {
            s: vec![0],
            odd_components: 1,
            policy: P3Policy::StrictPath,
        };
        assert!(!verify_certificate(&tt3, &t));
    }

    #[test]
    fn fractional_examples() {
        let c3 = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(check_fractional(&c3, P3Policy::StrictPath).unwrap().exists);
        assert!(check_fractional(&c4(), P3Policy::StrictPath).unwrap().exists);

        let tt3 = transitive_tournament(3).unwrap();
        let r = check_fractional(&tt3, P3Policy::StrictPath).unwrap();
        assert!(!r.exists);
        let expected = Partition3::new(set(3, &[0]), set(3, &[2]), set(3, &[1])).unwrap();
        assert_eq!(
            r.certificate,
            Some(Certificate::FractionalPartition {
                partition: expected,
                slack: -1
            })
        );
    }

    #[test]
    fn certificate_json_shape() {
        let p = Partition3::new(set(3, &[0]), set(3, &[2]), set(3, &[1])).unwrap();
        let c = Certificate::TournamentPartition {
            partition: p,
            slack: -1,
        };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"kind":"tournament_partition","x":[0],"y":[2],"z":[1],"slack":-1}"#
        );
    }
}
