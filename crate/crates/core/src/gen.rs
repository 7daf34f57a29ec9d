//! Seeded instance generators.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{MultiGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("planted instance needs n > k (got n = {n}, k = {k})")]
    TooFewVertices { n: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    RandomGnp { n: usize, p: f64 },
    /// A random block graph on `n - k` vertices plus `k` noise vertices.
    PlantedBgvd { n: usize, k: usize },
    /// `petals` induced C4s sharing vertex 0.
    Flower { petals: usize },
    DisjointC4 { t: usize },
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Result<MultiGraph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::Probability(p));
    }
    let mut g = MultiGraph::with_vertices(n);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
    }
    Ok(g)
}

/// A connected block graph on `n` vertices: cliques glued along a random
/// tree, each new clique attached at one existing vertex.
pub fn block_graph(n: usize, rng: &mut impl Rng) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(n);
    if n == 0 {
        return g;
    }
    let mut placed = 1u32;
    while (placed as usize) < n {
        let anchor = VertexId(rng.gen_range(0..placed));
        let size = rng.gen_range(1..=4).min(n - placed as usize) as u32;
        let mut clique = vec![anchor];
        clique.extend((placed..placed + size).map(VertexId));
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                g.add_edge(a, b).unwrap();
            }
        }
        placed += size;
    }
    g
}

pub fn planted(n: usize, k: usize, rng: &mut impl Rng) -> Result<(MultiGraph, BTreeSet<VertexId>), GenError> {
    if n <= k {
        return Err(GenError::TooFewVertices { n, k });
    }
    let base = n - k;
    let mut g = block_graph(base, rng);
    let mut noise = BTreeSet::new();
    for _ in 0..k {
        let v = g.add_vertex();
        noise.insert(v);
        let mut others: Vec<VertexId> = g.vertices().filter(|u| *u != v).collect();
        others.shuffle(rng);
        let deg = rng.gen_range(2..=others.len().clamp(2, 6)).min(others.len());
        for u in others.into_iter().take(deg) {
            g.add_edge(v, u).unwrap();
        }
    }
    Ok((g, noise))
}

pub fn flower(petals: usize) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(1 + 3 * petals);
    for p in 0..petals as u32 {
        let (a, b, c) = (1 + 3 * p, 2 + 3 * p, 3 + 3 * p);
        for (x, y) in [(0, a), (a, b), (b, c), (c, 0)] {
            g.add_edge(VertexId(x), VertexId(y)).unwrap();
        }
    }
    g
}

pub fn disjoint_c4(t: usize) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(4 * t);
    for i in 0..t as u32 {
        for j in 0..4 {
            g.add_edge(VertexId(4 * i + j), VertexId(4 * i + (j + 1) % 4)).unwrap();
        }
    }
    g
}

pub fn generate(profile: &Profile, seed: u64) -> Result<MultiGraph, GenError> {
    let mut r = rng(seed);
    match *profile {
        Profile::RandomGnp { n, p } => gnp(n, p, &mut r),
        Profile::PlantedBgvd { n, k } => planted(n, k, &mut r).map(|(g, _)| g),
        Profile::Flower { petals } => Ok(flower(petals)),
        Profile::DisjointC4 { t } => Ok(disjoint_c4(t)),
    }
}

/// A named benchmark instance with its budget.
#[derive(Clone, Debug)]
pub struct SuiteInstance {
    pub name: String,
    pub graph: MultiGraph,
    pub k: usize,
}

/// Planted instances on `2k + 10` vertices, `per_k` for each budget.
pub fn planted_suite(k_range: std::ops::RangeInclusive<usize>, per_k: usize, seed: u64) -> Vec<SuiteInstance> {
    let mut out = Vec::new();
    for k in k_range {
        for i in 0..per_k {
            let n = 2 * k + 10;
            let s = seed.wrapping_mul(1_000_003).wrapping_add((k * 1000 + i) as u64);
            let (graph, _) = planted(n, k, &mut rng(s)).expect("n > k");
            out.push(SuiteInstance { name: format!("planted-n{n}-k{k}-{i}"), graph, k });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::is_block_graph;
    use crate::oracle::brute_min_bvd;

    #[test]
    fn planted_is_deterministic_and_solvable() {
        let p = Profile::PlantedBgvd { n: 20, k: 3 };
        assert_eq!(generate(&p, 7).unwrap(), generate(&p, 7).unwrap());
        for seed in 0..50 {
            let (g, noise) = planted(14, 3, &mut rng(seed)).unwrap();
            assert_eq!(g.vertex_count(), 14);
            assert!(is_block_graph(&g.without(&noise)));
        }
    }

    #[test]
    fn block_graphs_are_block_graphs() {
        for seed in 0..100 {
            let g = block_graph(seed as usize % 30, &mut rng(seed));
            assert!(is_block_graph(&g));
            assert!(g.connected_components().len() <= 1);
        }
    }

    #[test]
    fn disjoint_c4_optimum() {
        assert_eq!(brute_min_bvd(&disjoint_c4(3)).unwrap().0, 3);
        assert_eq!(flower(5).vertex_count(), 16);
    }

    #[test]
    fn bad_parameters() {
        assert!(generate(&Profile::RandomGnp { n: 3, p: 1.5 }, 0).is_err());
        assert!(generate(&Profile::PlantedBgvd { n: 3, k: 3 }, 0).is_err());
    }
}
