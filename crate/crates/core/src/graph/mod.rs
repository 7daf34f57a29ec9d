//! Undirected multigraphs with loops and the structural primitives shared by
//! every solver in the crate.
//!
//! Vertex identifiers are stable: deleting a vertex never frees its id, and
//! every vertex created by an operation (contraction, subdivision, gadget
//! insertion) draws a fresh id from the graph's allocator.

mod blocks;
mod dense;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use blocks::{BlockCutForest, BlockKind};
pub(crate) use dense::Dense;

/// Exact vertex weight.
pub type Weight = BigRational;

/// Builds an integral weight.
pub fn weight_int(value: i64) -> Weight {
    BigRational::from_integer(BigInt::from(value))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("no edge between {0} and {1}")]
    MissingEdge(VertexId, VertexId),
    #[error("cannot contract the loop at {0}")]
    ContractLoop(VertexId),
    #[error("vertex {0} carries a self loop")]
    LoopAt(VertexId),
    #[error("parallel edges between {0} and {1}")]
    NotSimple(VertexId, VertexId),
    #[error("vertex id {0} is already in use")]
    DuplicateVertex(VertexId),
}

/// Finite undirected multigraph. `adj[u][v]` is the multiplicity of the edge
/// `uv`; `adj[v][v]` counts loops at `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiGraph {
    adj: BTreeMap<VertexId, BTreeMap<VertexId, u32>>,
    next_id: u32,
}

impl MultiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` without edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Simple graph from an edge list over vertices `0..n`.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))
                .expect("edge endpoints must be below n");
        }
        g
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.adj.insert(id, BTreeMap::new());
        id
    }

    /// Inserts a vertex with a caller-chosen id. Later fresh ids are
    /// allocated above it.
    pub fn add_vertex_with_id(&mut self, id: VertexId) -> Result<(), GraphError> {
        if self.adj.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        self.adj.insert(id, BTreeMap::new());
        self.next_id = self.next_id.max(id.0 + 1);
        Ok(())
    }

    /// Adds one copy of the edge `uv` (a loop when `u == v`).
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.add_edge_multiplicity(u, v, 1)
    }

    pub fn add_edge_multiplicity(
        &mut self,
        u: VertexId,
        v: VertexId,
        count: u32,
    ) -> Result<(), GraphError> {
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(GraphError::MissingVertex(x));
            }
        }
        if count == 0 {
            return Ok(());
        }
        *self.adj.get_mut(&u).unwrap().entry(v).or_insert(0) += count;
        if u != v {
            *self.adj.get_mut(&v).unwrap().entry(u).or_insert(0) += count;
        }
        Ok(())
    }

    /// Sets the multiplicity of `uv`; zero removes the edge.
    pub fn set_multiplicity(&mut self, u: VertexId, v: VertexId, count: u32) -> Result<(), GraphError> {
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(GraphError::MissingVertex(x));
            }
        }
        if count == 0 {
            self.adj.get_mut(&u).unwrap().remove(&v);
            self.adj.get_mut(&v).unwrap().remove(&u);
        } else {
            self.adj.get_mut(&u).unwrap().insert(v, count);
            self.adj.get_mut(&v).unwrap().insert(u, count);
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if self.multiplicity(u, v) == 0 {
            return Err(GraphError::MissingEdge(u, v));
        }
        self.set_multiplicity(u, v, 0)
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let nbrs = self.adj.remove(&v).ok_or(GraphError::MissingVertex(v))?;
        for u in nbrs.keys() {
            if *u != v {
                self.adj.get_mut(u).unwrap().remove(&v);
            }
        }
        Ok(())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Number of edges counted with multiplicity, loops included.
    pub fn edge_count(&self) -> usize {
        self.edges().map(|(_, _, m)| m as usize).sum()
    }

    /// The id the next fresh vertex will receive.
    pub fn next_id(&self) -> VertexId {
        VertexId(self.next_id)
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u32 {
        self.adj
            .get(&u)
            .and_then(|m| m.get(&v))
            .copied()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.multiplicity(u, v) > 0
    }

    pub fn loops(&self, v: VertexId) -> u32 {
        self.multiplicity(v, v)
    }

    /// Distinct neighbours of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj
            .get(&v)
            .into_iter()
            .flat_map(move |m| m.keys().copied().filter(move |&u| u != v))
    }

    /// Neighbours of `v` with edge multiplicities, excluding loops.
    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.adj
            .get(&v)
            .into_iter()
            .flat_map(move |m| m.iter().filter(move |(u, _)| **u != v).map(|(u, c)| (*u, *c)))
    }

    pub fn neighbor_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.neighbors(v).collect()
    }

    /// Degree with multiplicities; every loop counts twice.
    pub fn degree(&self, v: VertexId) -> u32 {
        self.adj
            .get(&v)
            .map(|m| m.iter().map(|(u, c)| if *u == v { 2 * c } else { *c }).sum())
            .unwrap_or(0)
    }

    /// Every edge class once as `(u, v, multiplicity)` with `u <= v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, u32)> + '_ {
        self.adj.iter().flat_map(|(u, m)| {
            m.iter()
                .filter(move |(v, _)| *u <= **v)
                .map(move |(v, c)| (*u, *v, *c))
        })
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        self.edges().all(|(u, v, m)| u != v && m == 1)
    }

    /// Fails with the first loop or parallel edge found.
    pub fn check_simple(&self) -> Result<(), GraphError> {
        for (u, v, m) in self.edges() {
            if u == v {
                return Err(GraphError::LoopAt(u));
            }
            if m > 1 {
                return Err(GraphError::NotSimple(u, v));
            }
        }
        Ok(())
    }

    /// `G[keep]`. The id allocator is inherited so fresh ids stay unique.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> MultiGraph {
        let adj = self
            .adj
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(v, m)| {
                let m = m
                    .iter()
                    .filter(|(u, _)| keep.contains(u))
                    .map(|(u, c)| (*u, *c))
                    .collect();
                (*v, m)
            })
            .collect();
        MultiGraph {
            adj,
            next_id: self.next_id,
        }
    }

    /// `G \ remove`.
    pub fn without<'a, I>(&self, remove: I) -> MultiGraph
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let remove: BTreeSet<VertexId> = remove.into_iter().copied().collect();
        let keep = self.vertices().filter(|v| !remove.contains(v)).collect();
        self.induced(&keep)
    }

    /// Contracts the edge `uv` into a fresh vertex. Edges from a common
    /// neighbour become parallel edges at the merged vertex; additional
    /// parallel copies of `uv` become loops, so exactly one edge disappears.
    pub fn contract_edge(&self, u: VertexId, v: VertexId) -> Result<(MultiGraph, VertexId), GraphError> {
        for x in [u, v] {
            if !self.contains(x) {
                return Err(GraphError::MissingVertex(x));
            }
        }
        if u == v {
            return Err(GraphError::ContractLoop(u));
        }
        for x in [u, v] {
            if self.loops(x) > 0 {
                return Err(GraphError::LoopAt(x));
            }
        }
        let mult = self.multiplicity(u, v);
        if mult == 0 {
            return Err(GraphError::MissingEdge(u, v));
        }
        let mut g = self.clone();
        let merged = g.add_vertex();
        for x in [u, v] {
            for (w, c) in self.incident(x) {
                if w != u && w != v {
                    g.add_edge_multiplicity(merged, w, c).unwrap();
                }
            }
        }
        if mult > 1 {
            g.add_edge_multiplicity(merged, merged, mult - 1).unwrap();
        }
        g.remove_vertex(u).unwrap();
        g.remove_vertex(v).unwrap();
        Ok((g, merged))
    }

    /// True iff the graph has no cycle; a loop or a parallel pair is a cycle.
    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.vertices());
        for (u, v, m) in self.edges() {
            if u == v || m > 1 || !uf.union(u, v) {
                return false;
            }
        }
        true
    }

    pub fn connected_components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen.insert(s);
            while let Some(x) = queue.pop_front() {
                comp.insert(x);
                for y in self.neighbors(x) {
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Blocks and cut vertices of the underlying simple graph.
    pub fn block_cut_forest(&self) -> BlockCutForest {
        blocks::block_cut_forest(self)
    }

    /// Classes of vertices with identical closed neighbourhoods.
    pub fn true_twin_classes(&self) -> Result<Vec<BTreeSet<VertexId>>, GraphError> {
        for (u, v, m) in self.edges() {
            if u != v && m > 1 {
                return Err(GraphError::NotSimple(u, v));
            }
        }
        let mut classes: BTreeMap<BTreeSet<VertexId>, BTreeSet<VertexId>> = BTreeMap::new();
        for v in self.vertices() {
            let mut closed = self.neighbor_set(v);
            closed.insert(v);
            classes.entry(closed).or_default().insert(v);
        }
        let mut out: Vec<_> = classes.into_values().collect();
        out.sort();
        Ok(out)
    }
}

/// Disjoint-set forest keyed by vertex id.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: BTreeMap<VertexId, VertexId>,
}

impl UnionFind {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        UnionFind {
            parent: vertices.into_iter().map(|v| (v, v)).collect(),
        }
    }

    pub fn find(&mut self, v: VertexId) -> VertexId {
        let mut root = v;
        while let Some(&p) = self.parent.get(&root) {
            if p == root {
                break;
            }
            root = p;
        }
        let mut cur = v;
        while cur != root {
            let next = self.parent[&cur];
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: VertexId, b: VertexId) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent.insert(hi, lo);
        true
    }
}

/// A multigraph together with exact vertex weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    pub graph: MultiGraph,
    weights: BTreeMap<VertexId, Weight>,
}

impl WeightedGraph {
    /// Every vertex gets weight one.
    pub fn unit(graph: MultiGraph) -> Self {
        let weights = graph.vertices().map(|v| (v, Weight::one())).collect();
        WeightedGraph { graph, weights }
    }

    /// Missing entries default to one; entries for absent vertices are dropped.
    pub fn new(graph: MultiGraph, weights: BTreeMap<VertexId, Weight>) -> Self {
        let weights = graph
            .vertices()
            .map(|v| (v, weights.get(&v).cloned().unwrap_or_else(Weight::one)))
            .collect();
        WeightedGraph { graph, weights }
    }

    pub fn weight(&self, v: VertexId) -> &Weight {
        &self.weights[&v]
    }

    pub fn set_weight(&mut self, v: VertexId, w: Weight) {
        assert!(self.graph.contains(v), "weight for a vertex outside the graph");
        self.weights.insert(v, w);
    }

    pub fn weights(&self) -> &BTreeMap<VertexId, Weight> {
        &self.weights
    }

    pub fn total<'a, I>(&self, set: I) -> Weight
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        set.into_iter()
            .fold(Weight::zero(), |acc, v| acc + self.weight(*v))
    }

    pub fn total_weight(&self) -> Weight {
        self.weights.values().fold(Weight::zero(), |acc, w| acc + w)
    }

    pub fn without<'a, I>(&self, remove: I) -> WeightedGraph
    where
        I: IntoIterator<Item = &'a VertexId>,
    {
        let graph = self.graph.without(remove);
        let weights = self
            .weights
            .iter()
            .filter(|(v, _)| graph.contains(**v))
            .map(|(v, w)| (*v, w.clone()))
            .collect();
        WeightedGraph { graph, weights }
    }

    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> WeightedGraph {
        let graph = self.graph.induced(keep);
        let weights = self
            .weights
            .iter()
            .filter(|(v, _)| keep.contains(v))
            .map(|(v, w)| (*v, w.clone()))
            .collect();
        WeightedGraph { graph, weights }
    }

    pub fn has_negative_weight(&self) -> bool {
        self.weights.values().any(|w| *w < Weight::zero())
    }
}
