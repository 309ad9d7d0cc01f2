//! Seeded digraph families. Every generator is a pure function of its
//! parameters and the seed (see [`crate::rng`] for the stream).
//!
//! Bipartite families put side `X` on vertices `0..a` and `Y` on `a..a+b`.

use crate::rng::SplitMix64;
use crate::{Digraph, Error, Result, VertexId};

#[derive(Clone, Debug, PartialEq)]
pub enum GraphKind {
    /// Every pair oriented low to high.
    TransitiveTournament { n: usize },
    /// Every pair oriented by an independent fair coin.
    RandomTournament { n: usize },
    /// All `a * b` arcs from `X` to `Y`.
    CompleteBipartiteOrientation { a: usize, b: usize },
    /// Each of the `2ab` possible crossing arcs present with probability `p`.
    RandomBipartite { a: usize, b: usize, p: f64 },
    /// With `asymmetric`, each pair gets one arc (random direction) with
    /// probability `p`; otherwise each ordered pair independently.
    RandomStrict { n: usize, p: f64, asymmetric: bool },
    /// Weakly connected, asymmetric, `d+(v) = d-(v)` everywhere, exactly `m`
    /// arcs, built as a union of random directed cycles of length >= 3.
    RandomEulerian { n: usize, m: usize },
}

impl GraphKind {
    pub fn is_randomized(&self) -> bool {
        !matches!(
            self,
            GraphKind::TransitiveTournament { .. } | GraphKind::CompleteBipartiteOrientation { .. }
        )
    }

    /// Side `X` size for bipartite families.
    pub fn bipartition(&self) -> Option<usize> {
        match self {
            GraphKind::CompleteBipartiteOrientation { a, .. }
            | GraphKind::RandomBipartite { a, .. } => Some(*a),
            _ => None,
        }
    }
}

pub fn generate(kind: &GraphKind, seed: u64) -> Result<Digraph> {
    let mut rng = SplitMix64::new(seed);
    match *kind {
        GraphKind::TransitiveTournament { n } => transitive_tournament(n),
        GraphKind::RandomTournament { n } => {
            let mut arcs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    arcs.push(if rng.chance(0.5) { (j, i) } else { (i, j) });
                }
            }
            Digraph::new(n, arcs)
        }
        GraphKind::CompleteBipartiteOrientation { a, b } => complete_bipartite_orientation(a, b),
        GraphKind::RandomBipartite { a, b, p } => {
            check_probability(p)?;
            let mut arcs = Vec::new();
            for x in 0..a {
                for y in a..a + b {
                    if rng.chance(p) {
                        arcs.push((x, y));
                    }
                    if rng.chance(p) {
                        arcs.push((y, x));
                    }
                }
            }
            Digraph::new(a + b, arcs)
        }
        GraphKind::RandomStrict { n, p, asymmetric } => {
            check_probability(p)?;
            let mut arcs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if asymmetric {
                        if rng.chance(p) {
                            arcs.push(if rng.chance(0.5) { (j, i) } else { (i, j) });
                        }
                    } else {
                        if rng.chance(p) {
                            arcs.push((i, j));
                        }
                        if rng.chance(p) {
                            arcs.push((j, i));
                        }
                    }
                }
            }
            Digraph::new(n, arcs)
        }
        GraphKind::RandomEulerian { n, m } => random_eulerian(n, m, &mut rng),
    }
}

pub fn transitive_tournament(n: usize) -> Result<Digraph> {
    let arcs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Digraph::new(n, arcs)
}

pub fn complete_bipartite_orientation(a: usize, b: usize) -> Result<Digraph> {
    let arcs = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y)));
    Digraph::new(a + b, arcs)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InfeasibleParams(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

const EULERIAN_RESTARTS: usize = 200;
const CYCLE_ATTEMPTS: usize = 200;

fn random_eulerian(n: usize, m: usize, rng: &mut SplitMix64) -> Result<Digraph> {
    if m < 3 {
        return Err(Error::InfeasibleParams(format!(
            "eulerian digraph needs m >= 3, got {m}"
        )));
    }
    if n < 3 || m > n * (n - 1) / 2 {
        return Err(Error::InfeasibleParams(format!(
            "no asymmetric eulerian digraph with n = {n}, m = {m}"
        )));
    }
    'restart: for _ in 0..EULERIAN_RESTARTS {
        let mut present = vec![vec![false; n]; n];
        let mut touched = vec![false; n];
        let mut arcs: Vec<(VertexId, VertexId)> = Vec::new();
        while arcs.len() < m {
            let remaining = m - arcs.len();
            let lengths: Vec<usize> = (3..=n.min(remaining))
                .filter(|&len| !matches!(remaining - len, 1 | 2))
                .collect();
            if lengths.is_empty() {
                continue 'restart;
            }
            let mut placed = false;
            for _ in 0..CYCLE_ATTEMPTS {
                let len = lengths[rng.below(lengths.len())];
                let mut pool: Vec<VertexId> = (0..n).collect();
                rng.shuffle(&mut pool);
                let cycle = &pool[..len];
                if !arcs.is_empty() && !cycle.iter().any(|&v| touched[v]) {
                    continue;
                }
                let fits = (0..len).all(|i| {
                    let (u, v) = (cycle[i], cycle[(i + 1) % len]);
                    !present[u][v] && !present[v][u]
                });
                if !fits {
                    continue;
                }
                for i in 0..len {
                    let (u, v) = (cycle[i], cycle[(i + 1) % len]);
                    present[u][v] = true;
                    touched[u] = true;
                    arcs.push((u, v));
                }
                placed = true;
                break;
            }
            if !placed {
                continue 'restart;
            }
        }
        rng.shuffle(&mut arcs);
        return Digraph::new(n, arcs);
    }
    Err(Error::InfeasibleParams(format!(
        "could not pack {m} arcs into cycles on {n} vertices"
    )))
}
