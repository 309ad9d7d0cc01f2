//! Brute-force ground truth at desk scale: exhaustive decomposition search,
//! all `3^n` vertex partitions, all vertex subsets for the Tutte / fractional
//! / Hall conditions, induced-pattern scans, and exhaustive instance
//! enumerators.
//!
//! Nothing here calls the matching engines. Budgets are hard: exceeding one
//! is an error, never a silent sample.

use itertools::Itertools;
use serde::Serialize;
use serde_json::{json, Value};

use crate::decomposition::{check_bipartite, check_fractional, check_tournament, decompose};
use crate::generate::{generate, GraphKind};
use crate::linegraph::build_line_graph;
use crate::matching::UGraph;
use crate::rng::SplitMix64;
use crate::{
    verify_certificate, ArcId, Certificate, Decision, Digraph, Error, P3Decomposition, P3Policy,
    Partition3, Result, VertexSet,
};

pub const DECOMPOSE_ARC_LIMIT: usize = 16;
pub const PARTITION_ORDER_LIMIT: usize = 12;
pub const SUBSET_VERTEX_LIMIT: usize = 16;
pub const HALL_ORDER_LIMIT: usize = 12;
pub const PATTERN_SUBSET_LIMIT: u64 = 5_000_000;
pub const TOURNAMENT_ORDER_LIMIT: usize = 6;
pub const BIPARTITE_PAIR_LIMIT: usize = 6;

fn budget(what: String) -> Error {
    Error::BudgetExceeded(what)
}

fn chains(d: &Digraph, policy: P3Policy, first: ArcId, second: ArcId) -> bool {
    let (a, b) = (d.arc(first), d.arc(second));
    a.head == b.tail && (policy == P3Policy::AllowClosed || a.tail != b.head)
}

fn search(
    d: &Digraph,
    policy: P3Policy,
    used: &mut [bool],
    acc: &mut Vec<(usize, usize, usize)>,
    count_all: bool,
    found: &mut usize,
) -> bool {
    let Some(a) = used.iter().position(|&u| !u) else {
        *found += 1;
        return !count_all;
    };
    used[a] = true;
    for b in 0..d.size() {
        if used[b] {
            continue;
        }
        let triple = if chains(d, policy, a, b) {
            (d.arc(a).tail, d.arc(a).head, d.arc(b).head)
        } else if chains(d, policy, b, a) {
            (d.arc(b).tail, d.arc(b).head, d.arc(a).head)
        } else {
            continue;
        };
        used[b] = true;
        acc.push(triple);
        if search(d, policy, used, acc, count_all, found) {
            return true;
        }
        acc.pop();
        used[b] = false;
    }
    used[a] = false;
    false
}

/// Backtracking: the lowest unused arc is paired with each chaining partner
/// in increasing id order. Returns the first decomposition found.
pub fn brute_decompose(d: &Digraph, policy: P3Policy) -> Result<Option<P3Decomposition>> {
    if d.size() > DECOMPOSE_ARC_LIMIT {
        return Err(budget(format!("{} arcs > {DECOMPOSE_ARC_LIMIT}", d.size())));
    }
    if d.size() % 2 == 1 {
        return Ok(None);
    }
    let mut used = vec![false; d.size()];
    let mut acc = Vec::new();
    let mut found = 0;
    Ok(search(d, policy, &mut used, &mut acc, false, &mut found)
        .then(|| P3Decomposition::from_triples(acc)))
}

pub fn count_decompositions(d: &Digraph, policy: P3Policy) -> Result<usize> {
    if d.size() > DECOMPOSE_ARC_LIMIT {
        return Err(budget(format!("{} arcs > {DECOMPOSE_ARC_LIMIT}", d.size())));
    }
    if d.size() % 2 == 1 {
        return Ok(0);
    }
    let mut used = vec![false; d.size()];
    let mut found = 0;
    search(d, policy, &mut used, &mut Vec::new(), true, &mut found);
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionScan {
    pub min_slack: i64,
    pub argmin: Partition3,
}

/// Minimum of `a(Y,X)+a(X)+a(Y)+a(Z,X)+a(Y,Z)-a(X,Y)` over every labelling
/// of the vertices; ties go to the lowest base-3 mask (vertex 0 least
/// significant, digit 0 = Z, 1 = X, 2 = Y).
pub fn brute_partition3(d: &Digraph) -> Result<PartitionScan> {
    let n = d.order();
    if n > PARTITION_ORDER_LIMIT {
        return Err(budget(format!("order {n} > {PARTITION_ORDER_LIMIT}")));
    }
    let total = 3u64.pow(n as u32);
    let mut best = (i64::MAX, 0u64);
    for mask in 0..total {
        let mut labels = [0u8; PARTITION_ORDER_LIMIT];
        let mut rest = mask;
        for l in labels.iter_mut().take(n) {
            *l = (rest % 3) as u8;
            rest /= 3;
        }
        // counts[s][t] = a(part s, part t)
        let mut counts = [[0i64; 3]; 3];
        for a in d.arcs() {
            counts[labels[a.tail] as usize][labels[a.head] as usize] += 1;
        }
        let (z, x, y) = (0, 1, 2);
        let slack = counts[y][x] + counts[x][x] + counts[y][y] + counts[z][x] + counts[y][z]
            - counts[x][y];
        if slack < best.0 {
            best = (slack, mask);
        }
    }
    Ok(PartitionScan {
        min_slack: best.0,
        argmin: Partition3::from_base3(n, best.1),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetViolator {
    pub s: Vec<usize>,
    /// `c_o(G-S) - |S|` or `i(G-S) - |S|`, always positive.
    pub deficiency: i64,
}

/// Component sizes of `G - S` by union-find, written independently of
/// [`UGraph::components_without`].
fn component_sizes(g: &UGraph, mask: u64) -> Vec<usize> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for &(u, v) in g.edges() {
        if mask >> u & 1 == 0 && mask >> v & 1 == 0 {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
    }
    let mut size = vec![0; n];
    for v in (0..n).filter(|&v| mask >> v & 1 == 0) {
        let r = find(&mut parent, v);
        size[r] += 1;
    }
    size.into_iter().filter(|&s| s > 0).collect()
}

fn subset_scan(g: &UGraph, score: impl Fn(u64) -> i64) -> Result<Option<SubsetViolator>> {
    let n = g.vertex_count();
    if n > SUBSET_VERTEX_LIMIT {
        return Err(budget(format!("{n} vertices > {SUBSET_VERTEX_LIMIT}")));
    }
    let mut best: Option<(i64, u64)> = None;
    for mask in 0u64..1 << n {
        let s = score(mask) - mask.count_ones() as i64;
        if s > 0 && best.is_none_or(|(b, _)| s > b) {
            best = Some((s, mask));
        }
    }
    Ok(best.map(|(deficiency, mask)| SubsetViolator {
        s: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
        deficiency,
    }))
}

/// Worst `S` for `c_o(G - S) <= |S|`, or `None` when the condition holds.
pub fn brute_tutte(g: &UGraph) -> Result<Option<SubsetViolator>> {
    subset_scan(g, |mask| {
        component_sizes(g, mask).iter().filter(|&&s| s % 2 == 1).count() as i64
    })
}

/// Worst `S` for `i(G - S) <= |S|`, or `None` when the condition holds.
pub fn brute_fractional(g: &UGraph) -> Result<Option<SubsetViolator>> {
    subset_scan(g, |mask| {
        (0..g.vertex_count())
            .filter(|&v| mask >> v & 1 == 0)
            .filter(|&v| g.neighbors(v).iter().all(|&u| mask >> u & 1 == 1))
            .count() as i64
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HallCheck {
    Holds,
    Imbalance { d_plus: usize, d_minus: usize },
    Violator {
        x1: Vec<usize>,
        y1: Vec<usize>,
        lhs: usize,
        rhs: usize,
    },
}

/// The bipartite condition: `d+(X) = d-(X)` and, for every `X1 ⊆ X`,
/// `Y1 ⊆ Y`, `a(X1,Y1) + a(Y1,X1) <= d+(Y1) + d-(X1)`. Returns the violator
/// with the largest gap.
pub fn brute_hall(d: &Digraph, x: &VertexSet) -> Result<HallCheck> {
    let n = d.order();
    if n > HALL_ORDER_LIMIT {
        return Err(budget(format!("order {n} > {HALL_ORDER_LIMIT}")));
    }
    if x.universe() != n || !d.is_bipartite_with(x) {
        return Err(Error::PreconditionViolated("not bipartite with the given side".into()));
    }
    let xs = x.to_vec();
    let ys: Vec<usize> = (0..n).filter(|v| !x.contains(*v)).collect();
    let in_set = |bits: u64, list: &[usize], v: usize| {
        list.iter().position(|&w| w == v).is_some_and(|i| bits >> i & 1 == 1)
    };
    let (mut d_plus, mut d_minus) = (0, 0);
    for a in d.arcs() {
        if x.contains(a.tail) {
            d_plus += 1;
        } else {
            d_minus += 1;
        }
    }
    if d_plus != d_minus {
        return Ok(HallCheck::Imbalance { d_plus, d_minus });
    }
    let mut best: Option<(i64, u64, u64, usize, usize)> = None;
    for bx in 0u64..1 << xs.len() {
        for by in 0u64..1 << ys.len() {
            let member = |v: usize| in_set(bx, &xs, v) || in_set(by, &ys, v);
            let (mut lhs, mut rhs) = (0, 0);
            for a in d.arcs() {
                let (t, h) = (member(a.tail), member(a.head));
                if t && h {
                    lhs += 1;
                }
                // d+(Y1) and d-(X1); an arc Y1 -> X1 counts in both
                if in_set(by, &ys, a.tail) {
                    rhs += 1;
                }
                if in_set(bx, &xs, a.head) {
                    rhs += 1;
                }
            }
            let gap = lhs as i64 - rhs as i64;
            if gap > 0 && best.is_none_or(|b| gap > b.0) {
                best = Some((gap, bx, by, lhs, rhs));
            }
        }
    }
    Ok(match best {
        None => HallCheck::Holds,
        Some((_, bx, by, lhs, rhs)) => HallCheck::Violator {
            x1: xs.iter().enumerate().filter(|(i, _)| bx >> i & 1 == 1).map(|(_, &v)| v).collect(),
            y1: ys.iter().enumerate().filter(|(i, _)| by >> i & 1 == 1).map(|(_, &v)| v).collect(),
            lhs,
            rhs,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    /// `K4` minus one edge: 4 vertices, 5 edges.
    K4MinusE,
    /// `K3,3` minus one edge: 6 vertices, 8 edges, bipartite 3 + 3.
    K33MinusE,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn induces(g: &UGraph, vs: &[usize], pattern: Pattern) -> bool {
    let edges = vs
        .iter()
        .tuple_combinations()
        .filter(|(&a, &b)| g.has_edge(a, b))
        .count();
    match pattern {
        Pattern::K4MinusE => edges == 5,
        Pattern::K33MinusE => {
            edges == 8
                && vs[1..].iter().combinations(2).any(|mates| {
                    let side: Vec<usize> = std::iter::once(vs[0]).chain(mates.into_iter().copied()).collect();
                    let other: Vec<usize> = vs.iter().copied().filter(|v| !side.contains(v)).collect();
                    let independent = |part: &[usize]| {
                        part.iter().tuple_combinations().all(|(&a, &b)| !g.has_edge(a, b))
                    };
                    independent(&side) && independent(&other)
                })
        }
    }
}

/// First vertex tuple (lexicographic) inducing `pattern`.
pub fn induced_pattern_scan(g: &UGraph, pattern: Pattern) -> Result<Option<Vec<usize>>> {
    let k = match pattern {
        Pattern::K4MinusE => 4,
        Pattern::K33MinusE => 6,
    };
    let n = g.vertex_count();
    let work = binomial(n as u64, k as u64);
    if work > PATTERN_SUBSET_LIMIT {
        return Err(budget(format!("C({n}, {k}) = {work} subsets")));
    }
    Ok((0..n).combinations(k).find(|vs| induces(g, vs, pattern)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceFamily {
    /// All `2^(n(n-1)/2)` orientations of `K_n`; bit `i` of the mask flips
    /// the `i`-th pair `(u, v)`, `u < v`, in lexicographic order.
    Tournaments { n: usize },
    /// All `4^(ab)` bipartite digraphs with `X = 0..a`, `Y = a..a+b`; base-4
    /// digit per pair: 0 none, 1 `x -> y`, 2 `y -> x`, 3 both.
    BipartiteDigraphs { a: usize, b: usize },
}

impl InstanceFamily {
    pub fn count(&self) -> u64 {
        match *self {
            InstanceFamily::Tournaments { n } => 1 << (n * n.saturating_sub(1) / 2),
            InstanceFamily::BipartiteDigraphs { a, b } => 1 << (2 * a * b),
        }
    }

    pub fn side(&self) -> Option<VertexSet> {
        match *self {
            InstanceFamily::Tournaments { .. } => None,
            InstanceFamily::BipartiteDigraphs { a, b } => {
                Some(VertexSet::from_slice(a + b, &(0..a).collect::<Vec<_>>()).expect("a <= a + b"))
            }
        }
    }

    pub fn instance(&self, mask: u64) -> Digraph {
        match *self {
            InstanceFamily::Tournaments { n } => {
                let arcs = (0..n)
                    .tuple_combinations()
                    .enumerate()
                    .map(|(i, (u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) });
                Digraph::new(n, arcs).expect("orientation of K_n is strict")
            }
            InstanceFamily::BipartiteDigraphs { a, b } => {
                let mut arcs = Vec::new();
                let pairs = (0..a).cartesian_product(a..a + b);
                for (i, (x, y)) in pairs.enumerate() {
                    let state = mask >> (2 * i) & 3;
                    if state & 1 == 1 {
                        arcs.push((x, y));
                    }
                    if state & 2 == 2 {
                        arcs.push((y, x));
                    }
                }
                Digraph::new(a + b, arcs).expect("bipartite arcs are strict")
            }
        }
    }
}

/// Every instance of the family, in ascending mask order.
pub fn enumerate_instances(
    family: InstanceFamily,
) -> Result<impl Iterator<Item = (u64, Digraph)>> {
    match family {
        InstanceFamily::Tournaments { n } if n > TOURNAMENT_ORDER_LIMIT => {
            return Err(budget(format!("tournaments of order {n} > {TOURNAMENT_ORDER_LIMIT}")))
        }
        InstanceFamily::BipartiteDigraphs { a, b } if a * b > BIPARTITE_PAIR_LIMIT => {
            return Err(budget(format!("{a} x {b} pairs > {BIPARTITE_PAIR_LIMIT}")))
        }
        _ => {}
    }
    Ok((0..family.count()).map(move |mask| (mask, family.instance(mask))))
}

/// Seeded corpus of strict asymmetric digraphs with orders in `2..=max_n`.
/// Instance `i` draws its order, density, and arcs from its own stream.
pub fn random_asymmetric_corpus(
    count: usize,
    max_n: usize,
    seed: u64,
    no_isolated: bool,
) -> Result<Vec<(u64, Digraph)>> {
    if max_n < 2 {
        return Err(Error::InfeasibleParams("max_n must be at least 2".into()));
    }
    let mut meta = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let instance_seed = meta.next_u64();
        let mut pick = SplitMix64::new(instance_seed);
        let n = 2 + pick.below(max_n - 1);
        let p = 0.2 + 0.7 * pick.unit();
        let d = generate(
            &GraphKind::RandomStrict {
                n,
                p,
                asymmetric: true,
            },
            pick.next_u64(),
        )?;
        if no_isolated && d.has_isolated_vertex() {
            continue;
        }
        out.push((instance_seed, d));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub suite: String,
    pub instance: String,
    pub engine: bool,
    pub oracle: bool,
    pub agreement: bool,
    pub engine_witness: Value,
    pub oracle_witness: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// `decompose` against [`brute_decompose`].
    Decompose { family: InstanceFamily, policy: P3Policy },
    /// `check_tournament` against [`brute_partition3`] (even-size orders).
    Tournament { n: usize },
    /// `check_fractional` against [`brute_partition3`] on a random corpus.
    Fractional { count: usize, max_n: usize, seed: u64 },
    /// `check_bipartite` against [`brute_hall`].
    Bipartite { a: usize, b: usize },
}

fn certificate_value(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("certificates serialize")
}

fn instance_label(d: &Digraph) -> String {
    let arcs = d.arcs().iter().map(|a| format!("{} {}", a.tail, a.head)).join(",");
    format!("n={} arcs=[{arcs}]", d.order())
}

fn report_one(suite: &Suite, mask: u64, d: &Digraph) -> Result<OracleReport> {
    let (name, label) = match suite {
        Suite::Decompose { .. } => ("decompose", format!("mask={mask}")),
        Suite::Tournament { .. } => ("tournament", format!("mask={mask}")),
        Suite::Fractional { .. } => ("fractional", format!("seed={mask}")),
        Suite::Bipartite { .. } => ("bipartite", format!("mask={mask}")),
    };
    let (engine, engine_witness, oracle, oracle_witness, sound) = match *suite {
        Suite::Decompose { policy, .. } => {
            let decision = decompose(d, policy);
            let brute = brute_decompose(d, policy)?;
            let (yes, w, sound) = match &decision {
                Decision::Decomposable(dec) => (true, json!(dec), true),
                Decision::Refuted(c) => (false, certificate_value(c), verify_certificate(d, c)),
            };
            (yes, w, brute.is_some(), json!(brute), sound)
        }
        Suite::Tournament { .. } => {
            let r = check_tournament(d)?;
            let scan = brute_partition3(d)?;
            let sound = r.certificate.as_ref().is_none_or(|c| verify_certificate(d, c))
                && (r.decomposable || r.certificate.is_some());
            (r.decomposable, json!(r), scan.min_slack >= 0, json!(scan), sound)
        }
        Suite::Fractional { .. } => {
            let r = check_fractional(d, P3Policy::StrictPath)?;
            let scan = brute_partition3(d)?;
            let sound = r.certificate.as_ref().is_none_or(|c| verify_certificate(d, c));
            (r.exists, json!(r), scan.min_slack >= 0, json!(scan), sound)
        }
        Suite::Bipartite { a, b } => {
            let x = InstanceFamily::BipartiteDigraphs { a, b }.side().expect("bipartite");
            let r = check_bipartite(d, &x)?;
            let hall = brute_hall(d, &x)?;
            let sound = r.certificate.as_ref().is_none_or(|c| verify_certificate(d, c));
            (r.decomposable, json!(r), hall == HallCheck::Holds, json!(hall), sound)
        }
    };
    Ok(OracleReport {
        suite: name.to_string(),
        instance: format!("{label} {}", instance_label(d)),
        engine,
        oracle,
        agreement: engine == oracle && sound,
        engine_witness,
        oracle_witness,
    })
}

fn suite_instances(suite: &Suite) -> Result<Vec<(u64, Digraph)>> {
    Ok(match *suite {
        Suite::Decompose { family, .. } => enumerate_instances(family)?.collect(),
        Suite::Tournament { n } => {
            if (n * n.saturating_sub(1) / 2) % 2 == 1 {
                return Err(Error::OddSize(n * (n - 1) / 2));
            }
            enumerate_instances(InstanceFamily::Tournaments { n })?.collect()
        }
        Suite::Fractional { count, max_n, seed } => {
            if max_n > PARTITION_ORDER_LIMIT {
                return Err(budget(format!("order {max_n} > {PARTITION_ORDER_LIMIT}")));
            }
            random_asymmetric_corpus(count, max_n, seed, false)?
        }
        Suite::Bipartite { a, b } => {
            enumerate_instances(InstanceFamily::BipartiteDigraphs { a, b })?.collect()
        }
    })
}

/// Runs a suite, splitting instances over `jobs` threads. Reports come back
/// in instance order regardless of `jobs`.
pub fn run_suite(suite: Suite, jobs: usize) -> Result<Vec<OracleReport>> {
    let instances = suite_instances(&suite)?;
    let jobs = jobs.max(1);
    let chunk = instances.len().div_ceil(jobs).max(1);
    let results: Vec<Result<Vec<OracleReport>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = instances
            .chunks(chunk)
            .map(|part| {
                let suite = &suite;
                scope.spawn(move || {
                    part.iter()
                        .map(|(mask, d)| report_one(suite, *mask, d))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("oracle worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(instances.len());
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// `L(D)` under `policy`, for callers that want to scan it directly.
pub fn line_graph_of(d: &Digraph, policy: P3Policy) -> UGraph {
    build_line_graph(d, policy).graph().clone()
}
