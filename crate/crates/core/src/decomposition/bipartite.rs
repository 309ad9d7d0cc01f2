//! Bipartite digraphs `D[X, Y]`: `L(D)` is bipartite with sides `A(X, Y)` and
//! `A(Y, X)`, so the decision is a bipartite matching and a refutation is a
//! degree imbalance or a Hall violator mapped back to `X1 = tails(S)`,
//! `Y1 = heads(S)`.
//!
//! Line graphs here count the closed walk `x -> y -> x` around a digon as a
//! path; the neighbourhood count `|N(S)| = d+(Y1) + d-(X1) - a(Y1, X1)` only
//! holds with that convention.

use super::{hall_sides, triples_from_pairs, verify_certificate, Certificate, CheckReport};
use crate::linegraph::build_line_graph;
use crate::matching::{bipartite_max_matching, hall_violator};
use crate::{Digraph, Error, P3Policy, Result, VertexSet};

pub fn check_bipartite(d: &Digraph, x: &VertexSet) -> Result<CheckReport> {
    if x.universe() != d.order() {
        return Err(Error::SetSizeMismatch {
            expected: d.order(),
            found: x.universe(),
        });
    }
    if let Some(a) = d
        .arcs()
        .iter()
        .find(|a| x.contains(a.tail) == x.contains(a.head))
    {
        return Err(Error::NotBipartiteAsGiven(a.tail, a.head));
    }
    let (d_plus_x, d_minus_x) = d.cut_degrees(x)?;
    if d_plus_x != d_minus_x {
        let c = Certificate::BipartiteImbalance {
            x: x.clone(),
            d_plus_x,
            d_minus_x,
        };
        debug_assert!(verify_certificate(d, &c));
        return Ok(CheckReport::no(Some(c), None));
    }

    let policy = P3Policy::AllowClosed;
    let l = build_line_graph(d, policy);
    let forward: Vec<usize> = (0..d.size()).filter(|&a| x.contains(d.arc(a).tail)).collect();
    let left = VertexSet::from_slice(d.size(), &forward)?;
    let m = bipartite_max_matching(l.graph(), &left)?;
    if m.is_perfect() {
        return Ok(CheckReport::yes(triples_from_pairs(d, policy, &m.pairs())));
    }

    let hv = hall_violator(l.graph(), &left)?;
    let n = d.order();
    let mut x1 = VertexSet::empty(n);
    let mut y1 = VertexSet::empty(n);
    for &a in &hv.s {
        x1.insert(d.arc(a).tail);
        y1.insert(d.arc(a).head);
    }
    let (lhs, rhs) = hall_sides(d, &x1, &y1)?;
    let c = Certificate::BipartiteHall {
        x: x.clone(),
        x1,
        y1,
        lhs,
        rhs,
    };
    if !verify_certificate(d, &c) {
        return Err(Error::UnverifiedCertificate(format!(
            "Hall violator maps to lhs {lhs} <= rhs {rhs}"
        )));
    }
    Ok(CheckReport::no(Some(c), None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{verify_decomposition, P3Decomposition};

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_slice(n, vs).unwrap()
    }

    #[test]
    fn single_chaining_pair() {
        let d = Digraph::new(3, [(0, 2), (2, 1)]).unwrap();
        let r = check_bipartite(&d, &set(3, &[0, 1])).unwrap();
        assert!(r.decomposable);
        assert_eq!(
            r.decomposition,
            Some(P3Decomposition::from_triples([(0, 2, 1)]))
        );
    }

    #[test]
    fn imbalance() {
        let d = Digraph::new(3, [(0, 2), (1, 2)]).unwrap();
        let r = check_bipartite(&d, &set(3, &[0, 1])).unwrap();
        assert!(!r.decomposable);
        assert_eq!(
            r.certificate,
            Some(Certificate::BipartiteImbalance {
                x: set(3, &[0, 1]),
                d_plus_x: 2,
                d_minus_x: 0
            })
        );
    }

    #[test]
    fn digon_closes_on_itself() {
        let d = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let r = check_bipartite(&d, &set(2, &[0])).unwrap();
        let dec = r.decomposition.unwrap();
        assert_eq!(dec, P3Decomposition::from_triples([(0, 1, 0)]));
        assert!(verify_decomposition(&d, &dec, P3Policy::AllowClosed));
        // the Hall inequality holds with equality: 2 <= 2
        assert_eq!(hall_sides(&d, &set(2, &[0]), &set(2, &[1])), Ok((2, 2)));
    }

    #[test]
    fn hall_violation() {
        // X = {0, 1, 4}, Y = {2, 3}. Balanced, but both forward arcs enter 2
        // and only one arc leaves it.
        let d = Digraph::new(5, [(0, 2), (1, 2), (2, 4), (3, 4)]).unwrap();
        let r = check_bipartite(&d, &set(5, &[0, 1, 4])).unwrap();
        assert!(!r.decomposable);
        let c = r.certificate.unwrap();
        assert!(verify_certificate(&d, &c));
        assert!(matches!(c, Certificate::BipartiteHall { lhs, rhs, .. } if lhs > rhs));
    }

    #[test]
    fn rejects_same_side_arc() {
        let d = Digraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            check_bipartite(&d, &set(3, &[0, 1])),
            Err(Error::NotBipartiteAsGiven(0, 1))
        );
    }
}
