//! Strict digraphs, vertex subsets, and the arc-count arithmetic `a(X, Y)`,
//! `d+(X)`, `d-(X)` that every characterization is phrased in.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::{Error, Result};

pub type VertexId = usize;
/// Position of an arc in the digraph's construction-order arc list.
pub type ArcId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Arc {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Arc { tail, head }
    }

    pub fn reversed(self) -> Self {
        Arc::new(self.head, self.tail)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tail, self.head)
    }
}

/// A subset of `[0, n)` stored as a fixed-width bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_slice(n: usize, vertices: &[VertexId]) -> Result<Self> {
        let mut set = VertexSet::empty(n);
        for (index, &v) in vertices.iter().enumerate() {
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    index,
                    vertex: v,
                    n,
                });
            }
            set.bits.insert(v);
        }
        Ok(set)
    }

    /// Bit `i` of `mask` selects vertex `i`. Bits at or above `n` are ignored.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut set = VertexSet::empty(n);
        for v in 0..n.min(64) {
            if mask >> v & 1 == 1 {
                set.bits.insert(v);
            }
        }
        set
    }

    /// Order of the ground set this subset lives in.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: VertexId) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: VertexId) {
        self.bits.set(v, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &VertexSet) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        VertexSet { bits }
    }

    fn check_universe(&self, n: usize) -> Result<()> {
        if self.universe() != n {
            return Err(Error::SetSizeMismatch {
                expected: n,
                found: self.universe(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// Ordered partition `(X, Y, Z)` of the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition3 {
    pub x: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
}

impl Partition3 {
    pub fn new(x: VertexSet, y: VertexSet, z: VertexSet) -> Result<Self> {
        let n = x.universe();
        if y.universe() != n || z.universe() != n {
            return Err(Error::InvalidPartition(
                "parts are sized for different vertex ranges".into(),
            ));
        }
        if !x.is_disjoint(&y) || !x.is_disjoint(&z) || !y.is_disjoint(&z) {
            return Err(Error::InvalidPartition("parts overlap".into()));
        }
        if x.len() + y.len() + z.len() != n {
            return Err(Error::InvalidPartition("parts do not cover V".into()));
        }
        Ok(Partition3 { x, y, z })
    }

    /// `X` and `Y` as given, `Z` the rest.
    pub fn with_rest(x: VertexSet, y: VertexSet) -> Result<Self> {
        let z = x.union(&y).complement();
        Partition3::new(x, y, z)
    }

    /// Label 0 puts a vertex in `X`, 1 in `Y`, 2 in `Z`.
    pub fn from_labels(labels: &[u8]) -> Result<Self> {
        let n = labels.len();
        let mut parts = [
            VertexSet::empty(n),
            VertexSet::empty(n),
            VertexSet::empty(n),
        ];
        for (v, &l) in labels.iter().enumerate() {
            match l {
                0..=2 => parts[l as usize].insert(v),
                _ => {
                    return Err(Error::InvalidPartition(format!(
                        "label {l} for vertex {v}"
                    )))
                }
            }
        }
        let [x, y, z] = parts;
        Ok(Partition3 { x, y, z })
    }

    /// Mixed-radix decoding: base-3 digit `v` of `mask` places vertex `v`,
    /// with 0 = Z, 1 = X, 2 = Y. Mask 0 is the all-`Z` partition.
    pub fn from_base3(n: usize, mut mask: u64) -> Self {
        let labels: Vec<u8> = (0..n)
            .map(|_| {
                let l = [2, 0, 1][(mask % 3) as usize];
                mask /= 3;
                l
            })
            .collect();
        Partition3::from_labels(&labels).expect("labels are < 3")
    }

    pub fn labels(&self) -> Vec<u8> {
        (0..self.x.universe())
            .map(|v| {
                if self.x.contains(v) {
                    0
                } else if self.y.contains(v) {
                    1
                } else {
                    2
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralPredicates {
    pub is_tournament: bool,
    pub is_bipartite_with: Option<bool>,
    pub weakly_connected: bool,
    pub strongly_connected: bool,
}

/// A strict digraph: no loops, no parallel arcs. Digons are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
    index: HashMap<(VertexId, VertexId), ArcId>,
    asymmetric: bool,
}

impl Digraph {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut list = Vec::new();
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        let mut index = HashMap::new();
        for (i, (tail, head)) in arcs.into_iter().enumerate() {
            for v in [tail, head] {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        index: i,
                        vertex: v,
                        n,
                    });
                }
            }
            if tail == head {
                return Err(Error::LoopArc {
                    index: i,
                    vertex: tail,
                });
            }
            if index.insert((tail, head), i).is_some() {
                return Err(Error::ParallelArc {
                    index: i,
                    tail,
                    head,
                });
            }
            out_arcs[tail].push(i);
            in_arcs[head].push(i);
            list.push(Arc::new(tail, head));
        }
        let asymmetric = list.iter().all(|a| !index.contains_key(&(a.head, a.tail)));
        Ok(Digraph {
            n,
            arcs: list,
            out_arcs,
            in_arcs,
            index,
            asymmetric,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> Arc {
        self.arcs[id]
    }

    pub fn arc_id(&self, tail: VertexId, head: VertexId) -> Option<ArcId> {
        self.index.get(&(tail, head)).copied()
    }

    pub fn has_arc(&self, tail: VertexId, head: VertexId) -> bool {
        self.index.contains_key(&(tail, head))
    }

    /// Out-arcs of `v` in increasing arc id order.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v]
    }

    /// In-arcs of `v` in increasing arc id order.
    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_arcs[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_arcs[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_arcs[v].len()
    }

    pub fn is_isolated(&self, v: VertexId) -> bool {
        self.out_arcs[v].is_empty() && self.in_arcs[v].is_empty()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.is_isolated(v))
    }

    /// Always true: construction rejects loops and parallel arcs.
    pub fn is_strict(&self) -> bool {
        true
    }

    pub fn is_asymmetric(&self) -> bool {
        self.asymmetric
    }

    /// `a(X, Y)`: arcs with tail in `X` and head in `Y`.
    pub fn arc_count_between(&self, x: &VertexSet, y: &VertexSet) -> Result<usize> {
        x.check_universe(self.n)?;
        y.check_universe(self.n)?;
        Ok(self
            .arcs
            .iter()
            .filter(|a| x.contains(a.tail) && y.contains(a.head))
            .count())
    }

    /// `(d+(X), d-(X))`: sizes of the outcut and incut of `X`.
    pub fn cut_degrees(&self, x: &VertexSet) -> Result<(usize, usize)> {
        x.check_universe(self.n)?;
        let mut out = 0;
        let mut inc = 0;
        for a in &self.arcs {
            match (x.contains(a.tail), x.contains(a.head)) {
                (true, false) => out += 1,
                (false, true) => inc += 1,
                _ => {}
            }
        }
        Ok((out, inc))
    }

    /// `a(Y,X) + a(X) + a(Y) + a(Z,X) + a(Y,Z) - a(X,Y)`. Negative exactly when
    /// the partition violates the fractional-matching inequality.
    pub fn partition_slack(&self, p: &Partition3) -> Result<i64> {
        let p = Partition3::new(p.x.clone(), p.y.clone(), p.z.clone())?;
        if p.x.universe() != self.n {
            return Err(Error::SetSizeMismatch {
                expected: self.n,
                found: p.x.universe(),
            });
        }
        let a = |s: &VertexSet, t: &VertexSet| self.arc_count_between(s, t).map(|c| c as i64);
        let (x, y, z) = (&p.x, &p.y, &p.z);
        Ok(a(y, x)? + a(x, x)? + a(y, y)? + a(z, x)? + a(y, z)? - a(x, y)?)
    }

    /// Exactly one arc per unordered pair of distinct vertices.
    pub fn is_tournament(&self) -> bool {
        self.asymmetric && self.arcs.len() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Every arc has exactly one end in `x`.
    pub fn is_bipartite_with(&self, x: &VertexSet) -> bool {
        x.universe() == self.n
            && self
                .arcs
                .iter()
                .all(|a| x.contains(a.tail) != x.contains(a.head))
    }

    /// The underlying undirected graph is connected (vacuously true for n = 0).
    pub fn is_weakly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.reach(0, true, true).iter().all(|&r| r)
    }

    /// Every nonempty proper subset has a nonempty outcut.
    pub fn is_strongly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.reach(0, true, false).iter().all(|&r| r)
            && self.reach(0, false, true).iter().all(|&r| r)
    }

    pub fn structural_predicates(&self, x: Option<&VertexSet>) -> StructuralPredicates {
        StructuralPredicates {
            is_tournament: self.is_tournament(),
            is_bipartite_with: x.map(|x| self.is_bipartite_with(x)),
            weakly_connected: self.is_weakly_connected(),
            strongly_connected: self.is_strongly_connected(),
        }
    }

    fn reach(&self, start: VertexId, forward: bool, backward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            let fwd = self.out_arcs[v].iter().map(|&a| self.arcs[a].head);
            let bwd = self.in_arcs[v].iter().map(|&a| self.arcs[a].tail);
            let next: Vec<VertexId> = match (forward, backward) {
                (true, true) => fwd.chain(bwd).collect(),
                (true, false) => fwd.collect(),
                (false, true) => bwd.collect(),
                (false, false) => Vec::new(),
            };
            for u in next {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }
}
