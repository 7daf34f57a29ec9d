//! Base case of the disjoint weighted FVS solver: every free vertex is nice
//! (degree two into R) or a tent (degree three into R). Contracting the
//! forest formed by the edges of G[R] plus one chosen edge per tent leaves a
//! graph H whose edges split into one pair per free vertex, and a kept set
//! of free vertices leaves a forest exactly when the union of their pairs is
//! acyclic in H.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::graph::{GraphError, MultiGraph, VertexId, Weight, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParityError {
    #[error("vertex {0} is neither nice nor a tent")]
    NotBaseCase(VertexId),
    #[error("retained edges plus tent edges contain a cycle at {0}-{1}")]
    ForestCycle(VertexId, VertexId),
    #[error("contraction would merge a multiple edge or loop at {0}-{1}")]
    BadContraction(VertexId, VertexId),
    #[error("graph error during contraction: {0}")]
    Graph(#[from] GraphError),
    #[error("pair edges do not partition the contracted graph")]
    PairMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityPair {
    /// The free vertex this pair stands for.
    pub vertex: VertexId,
    /// Both edges as endpoints in `H`.
    pub edges: [(VertexId, VertexId); 2],
    pub weight: Weight,
}

#[derive(Clone, Debug)]
pub struct ParityInstance {
    pub h: MultiGraph,
    pub pairs: Vec<ParityPair>,
    /// w(V) - w(R): the total weight of the free vertices.
    pub free_weight: Weight,
}

/// Classification of a free vertex in a base-case instance.
fn classify(g: &MultiGraph, retained: &BTreeSet<VertexId>, v: VertexId) -> Option<Vec<VertexId>> {
    if g.loops(v) > 0 {
        return None;
    }
    let mut ends = Vec::new();
    for (u, c) in g.incident(v) {
        if !retained.contains(&u) {
            return None;
        }
        for _ in 0..c {
            ends.push(u);
        }
    }
    if ends.len() == 2 || ends.len() == 3 {
        Some(ends)
    } else {
        None
    }
}

/// Builds `H` and the edge pairs for a base-case instance.
pub fn build_parity_instance(
    g: &WeightedGraph,
    retained: &BTreeSet<VertexId>,
) -> Result<ParityInstance, ParityError> {
    let graph = &g.graph;
    let free: Vec<VertexId> = graph.vertices().filter(|v| !retained.contains(v)).collect();
    let mut labels: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &v in &free {
        let ends = classify(graph, retained, v).ok_or(ParityError::NotBaseCase(v))?;
        labels.insert(v, ends);
    }

    let mut h = graph.clone();
    let mut rep: BTreeMap<VertexId, VertexId> = graph.vertices().map(|v| (v, v)).collect();
    let contract = |h: &mut MultiGraph,
                        rep: &mut BTreeMap<VertexId, VertexId>,
                        a: VertexId,
                        b: VertexId|
     -> Result<(), ParityError> {
        let (ra, rb) = (rep[&a], rep[&b]);
        if ra == rb {
            return Err(ParityError::ForestCycle(a, b));
        }
        if h.multiplicity(ra, rb) != 1 || h.loops(ra) > 0 || h.loops(rb) > 0 {
            return Err(ParityError::BadContraction(a, b));
        }
        let (next, merged) = h.contract_edge(ra, rb)?;
        *h = next;
        for r in rep.values_mut() {
            if *r == ra || *r == rb {
                *r = merged;
            }
        }
        Ok(())
    };

    let r_edges: Vec<(VertexId, VertexId)> = graph
        .induced(retained)
        .edges()
        .flat_map(|(u, v, c)| std::iter::repeat((u, v)).take(c as usize))
        .collect();
    for (u, v) in r_edges {
        contract(&mut h, &mut rep, u, v)?;
    }

    let mut pairs = Vec::new();
    for &v in &free {
        let ends = &labels[&v];
        let pair_ends: Vec<VertexId> = if ends.len() == 2 {
            ends.clone()
        } else {
            // Tent: contract the edge to the lowest-id neighbour that keeps
            // the contracted set a forest.
            let mut sorted = ends.clone();
            sorted.sort();
            let pick = sorted
                .iter()
                .position(|r| rep[r] != rep[&v] && h.multiplicity(rep[r], rep[&v]) == 1)
                .ok_or(ParityError::ForestCycle(v, sorted[0]))?;
            let r0 = sorted[pick];
            contract(&mut h, &mut rep, v, r0)?;
            sorted.remove(pick);
            sorted
        };
        pairs.push((v, pair_ends));
    }

    let pairs: Vec<ParityPair> = pairs
        .into_iter()
        .map(|(v, ends)| ParityPair {
            vertex: v,
            edges: [(rep[&v], rep[&ends[0]]), (rep[&v], rep[&ends[1]])],
            weight: g.weight(v).clone(),
        })
        .collect();

    // E(H) must be exactly the union of the pairs.
    let mut from_pairs: BTreeMap<(VertexId, VertexId), u32> = BTreeMap::new();
    for p in &pairs {
        for &(a, b) in &p.edges {
            *from_pairs.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    let in_h: BTreeMap<(VertexId, VertexId), u32> = h.edges().map(|(a, b, c)| ((a, b), c)).collect();
    if from_pairs != in_h {
        return Err(ParityError::PairMismatch);
    }

    let free_weight = g.total(&free);
    Ok(ParityInstance { h, pairs, free_weight })
}

/// Union-find over the vertices of `H` that can be cheaply cloned.
#[derive(Clone)]
struct Forest {
    parent: Vec<usize>,
}

impl Forest {
    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Adds the edges if they keep the forest acyclic.
    fn add(&mut self, edges: &[(usize, usize)]) -> bool {
        let mut trial = self.clone();
        for &(a, b) in edges {
            let (ra, rb) = (trial.find(a), trial.find(b));
            if ra == rb {
                return false;
            }
            trial.parent[ra.max(rb)] = ra.min(rb);
        }
        *self = trial;
        true
    }
}

/// True iff the union of the chosen pairs is acyclic in `H`.
pub fn is_independent(pi: &ParityInstance, chosen: &[usize]) -> bool {
    let index: BTreeMap<VertexId, usize> = pi.h.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let mut f = Forest { parent: (0..index.len()).collect() };
    chosen.iter().all(|&i| {
        let e: Vec<(usize, usize)> = pi.pairs[i].edges.iter().map(|(a, b)| (index[a], index[b])).collect();
        f.add(&e)
    })
}

struct Search<'a> {
    pairs: &'a [ParityPair],
    edges: Vec<[(usize, usize); 2]>,
    suffix: Vec<Weight>,
    max_excluded: usize,
    best: Option<(Weight, Vec<usize>)>,
}

impl Search<'_> {
    /// (weight desc, pair count desc, excluded vertex list lexicographic).
    fn better(&self, weight: &Weight, chosen: &[usize]) -> bool {
        let Some((bw, bc)) = &self.best else { return true };
        if weight != bw {
            return weight > bw;
        }
        if chosen.len() != bc.len() {
            return chosen.len() > bc.len();
        }
        let excluded = |c: &[usize]| -> Vec<VertexId> {
            let keep: BTreeSet<usize> = c.iter().copied().collect();
            let mut x: Vec<VertexId> = (0..self.pairs.len())
                .filter(|i| !keep.contains(i))
                .map(|i| self.pairs[i].vertex)
                .collect();
            x.sort();
            x
        };
        excluded(chosen) < excluded(bc)
    }

    fn run(&mut self, i: usize, forest: &Forest, chosen: &mut Vec<usize>, weight: &Weight, excluded: usize) {
        if let Some((bw, _)) = &self.best {
            if weight + &self.suffix[i] < *bw {
                return;
            }
        }
        if i == self.pairs.len() {
            if self.better(weight, chosen) {
                self.best = Some((weight.clone(), chosen.clone()));
            }
            return;
        }
        let mut f = forest.clone();
        if f.add(&self.edges[i]) {
            chosen.push(i);
            let w = weight + &self.pairs[i].weight;
            self.run(i + 1, &f, chosen, &w, excluded);
            chosen.pop();
        }
        if excluded < self.max_excluded {
            self.run(i + 1, forest, chosen, weight, excluded + 1);
        }
    }
}

/// Maximum-weight independent pair set leaving at most `max_excluded` pairs
/// out, or `None` when every independent set leaves more out. Ties prefer
/// more pairs, then the lexicographically smallest excluded vertex list.
pub fn solve_parity_bounded(pi: &ParityInstance, max_excluded: usize) -> Option<Vec<usize>> {
    let index: BTreeMap<VertexId, usize> = pi.h.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let edges: Vec<[(usize, usize); 2]> = pi
        .pairs
        .iter()
        .map(|p| {
            [
                (index[&p.edges[0].0], index[&p.edges[0].1]),
                (index[&p.edges[1].0], index[&p.edges[1].1]),
            ]
        })
        .collect();
    let mut suffix = vec![Weight::zero(); pi.pairs.len() + 1];
    for i in (0..pi.pairs.len()).rev() {
        suffix[i] = &suffix[i + 1] + &pi.pairs[i].weight;
    }
    let mut s = Search {
        pairs: &pi.pairs,
        edges,
        suffix,
        max_excluded,
        best: None,
    };
    let forest = Forest { parent: (0..index.len()).collect() };
    s.run(0, &forest, &mut Vec::new(), &Weight::zero(), 0);
    s.best.map(|(_, c)| c)
}

/// Unbounded maximum-weight independent pair set.
pub fn solve_parity(pi: &ParityInstance) -> Vec<usize> {
    solve_parity_bounded(pi, pi.pairs.len()).expect("the empty pair set is independent")
}

/// The free vertices whose pairs were not chosen, with their weight
/// computed as w(V) - w(R) - w_M(I).
pub fn lift_solution(pi: &ParityInstance, chosen: &[usize]) -> (BTreeSet<VertexId>, Weight) {
    let keep: BTreeSet<usize> = chosen.iter().copied().collect();
    let x: BTreeSet<VertexId> = (0..pi.pairs.len())
        .filter(|i| !keep.contains(i))
        .map(|i| pi.pairs[i].vertex)
        .collect();
    let kept_weight = chosen.iter().fold(Weight::zero(), |acc, &i| acc + &pi.pairs[i].weight);
    (x, &pi.free_weight - kept_weight)
}
