//! Per-vertex structure: many disjoint obstructions, a large flower, or a
//! small set hitting every obstruction through the vertex.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{MultiGraph, VertexId};
use crate::obstruction::{
    apath_packing, find_obstruction, is_block_graph, pack_disjoint_obstructions, Obstruction, ObstructionKind,
    PackMode,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StructureResult {
    DisjointPack(Vec<Obstruction>),
    Flower(VertexId, Vec<Obstruction>),
    HittingSet(BTreeSet<VertexId>),
}

/// `G - v` with every edge inside `N(v)` removed.
pub fn neighbourhood_split(g: &MultiGraph, v: VertexId) -> MultiGraph {
    let nbrs = g.neighbor_set(v);
    let mut h = g.without(&[v]);
    for &a in &nbrs {
        for &b in nbrs.range(a..).skip(1) {
            if h.has_edge(a, b) {
                h.set_multiplicity(a, b, 0).unwrap();
            }
        }
    }
    h
}

/// Greedy packing of diamonds in `G[N[v]]` having `v` as a degree-three
/// vertex, pairwise meeting only at `v`.
fn diamonds_at(g: &MultiGraph, v: VertexId) -> Vec<Obstruction> {
    let mut closed = g.neighbor_set(v);
    closed.insert(v);
    let mut h = g.induced(&closed);
    let mut out = Vec::new();
    loop {
        let nbrs: Vec<VertexId> = h.neighbors(v).collect();
        let mut found = None;
        'search: for &a in &nbrs {
            for &c in &nbrs {
                if c == a || !h.has_edge(a, c) {
                    continue;
                }
                for &d in &nbrs {
                    if d != a && d != c && c < d && h.has_edge(a, d) && !h.has_edge(c, d) {
                        found = Some([v, a, c, d]);
                        break 'search;
                    }
                }
            }
        }
        let Some(dm) = found else { break };
        for x in &dm[1..] {
            h.remove_vertex(*x).unwrap();
        }
        out.push(Obstruction { kind: ObstructionKind::Diamond, vertices: dm.to_vec() });
    }
    out
}

/// Three-way structure at `v` with threshold `k + 1`.
pub fn structure_at(g: &MultiGraph, k: usize, v: VertexId) -> StructureResult {
    let free = pack_disjoint_obstructions(g, k + 1, PackMode::Free);
    if free.len() > k {
        debug_assert!(free.iter().all(|o| o.verify(g)));
        return StructureResult::DisjointPack(free);
    }
    let petals = pack_disjoint_obstructions(g, k + 1, PackMode::Flower(v));
    if petals.len() > k {
        return StructureResult::Flower(v, petals);
    }
    let mut from_petals: BTreeSet<VertexId> = petals.iter().flat_map(|o| o.vertices.iter().copied()).collect();
    from_petals.remove(&v);

    let split = neighbourhood_split(g, v);
    let cover = apath_packing(&split, &g.neighbor_set(v), usize::MAX).cover.unwrap_or_default();
    let rest = g.without(&cover);
    let mut composite: BTreeSet<VertexId> = diamonds_at(&rest, v).iter().flat_map(|o| o.vertices.iter().copied()).collect();
    composite.extend(cover);
    composite.remove(&v);

    let hits = |s: &BTreeSet<VertexId>| find_obstruction(&g.without(s), Some(v)).is_none();
    debug_assert!(hits(&from_petals));
    let chosen = if composite.len() < from_petals.len() && hits(&composite) { composite } else { from_petals };
    assert!(hits(&chosen), "hitting set at {v} misses an obstruction");
    StructureResult::HittingSet(chosen)
}

/// A block vertex deletion set avoiding `v`, built from the approximate
/// solution and a hitting set at `v`.
pub fn compute_sv(g: &MultiGraph, approx: &BTreeSet<VertexId>, v: VertexId, hitting: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let s = if !approx.contains(&v) {
        approx.clone()
    } else {
        let mut s: BTreeSet<VertexId> = approx.iter().copied().filter(|x| *x != v).collect();
        s.extend(hitting.iter().copied());
        s
    };
    debug_assert!(!s.contains(&v));
    debug_assert!(is_block_graph(&g.without(&s)));
    s
}
