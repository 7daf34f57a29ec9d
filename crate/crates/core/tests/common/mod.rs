//! Instance families shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use blockdel::gen::{block_graph, gnp};
use blockdel::graph::weight_int;
use blockdel::obstruction::find_small_obstruction;
use blockdel::{MultiGraph, VertexId, WeightedGraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn v(x: u32) -> VertexId {
    VertexId(x)
}

pub fn weighted_multigraph(r: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> WeightedGraph {
    let n = r.gen_range(1..=max_n);
    let mut g = MultiGraph::with_vertices(n);
    for _ in 0..r.gen_range(0..=max_m) {
        g.add_edge(v(r.gen_range(0..n as u32)), v(r.gen_range(0..n as u32))).unwrap();
    }
    let mut wg = WeightedGraph::unit(g);
    for x in 0..n as u32 {
        wg.set_weight(v(x), weight_int(r.gen_range(1..=9)));
    }
    wg
}

/// A {C4, D4}-free graph: random edges, then delete an edge of every small
/// obstruction until none is left.
pub fn c4d4_free(r: &mut ChaCha8Rng, max_n: usize) -> MultiGraph {
    let n = r.gen_range(1..=max_n);
    let mut g = gnp(n, r.gen_range(0.15..0.7), r).unwrap();
    while let Some(o) = find_small_obstruction(&g) {
        let vs = &o.vertices;
        let edges: Vec<(VertexId, VertexId)> = (0..vs.len())
            .flat_map(|i| (i + 1..vs.len()).map(move |j| (vs[i], vs[j])))
            .filter(|(a, b)| g.has_edge(*a, *b))
            .collect();
        let (a, b) = *edges.choose(r).unwrap();
        g.remove_edge(a, b).unwrap();
    }
    g
}

/// Disjoint-problem instance in which every free vertex is nice or a
/// tent, and no free vertex has two edges into one retained component.
pub fn base_case(r: &mut ChaCha8Rng, max_free: usize) -> (WeightedGraph, BTreeSet<VertexId>) {
    let comps = r.gen_range(2..=5usize);
    let mut g = MultiGraph::new();
    let mut members: Vec<Vec<VertexId>> = Vec::new();
    for _ in 0..comps {
        let size = r.gen_range(1..=3);
        let mut c: Vec<VertexId> = Vec::new();
        for _ in 0..size {
            let x = g.add_vertex();
            if let Some(&p) = c.choose(r) {
                g.add_edge(x, p).unwrap();
            }
            c.push(x);
        }
        members.push(c);
    }
    let retained: BTreeSet<VertexId> = g.vertex_set();
    let free = r.gen_range(0..=max_free);
    for _ in 0..free {
        let arity = if comps >= 3 && r.gen_bool(0.4) { 3 } else { 2 };
        let mut picks: Vec<usize> = (0..comps).collect();
        picks.shuffle(r);
        let x = g.add_vertex();
        for &c in &picks[..arity] {
            let t = *members[c].choose(r).unwrap();
            g.add_edge(x, t).unwrap();
        }
    }
    let mut wg = WeightedGraph::unit(g);
    for x in wg.graph.vertex_set() {
        wg.set_weight(x, weight_int(r.gen_range(0..=9)));
    }
    (wg, retained)
}

/// Random simple graph on at most `max_n` vertices with some vertices blown
/// up into cliques of true twins.
pub fn with_twins(r: &mut ChaCha8Rng, max_n: usize) -> MultiGraph {
    let n = r.gen_range(3..=max_n.min(7));
    let mut g = gnp(n, r.gen_range(0.2..0.8), r).unwrap();
    while g.vertex_count() < max_n && r.gen_bool(0.7) {
        let base = v(r.gen_range(0..n as u32));
        for _ in 0..r.gen_range(1..=4) {
            if g.vertex_count() >= max_n {
                break;
            }
            let t = g.add_vertex();
            let mut nbrs = g.neighbor_set(base);
            nbrs.insert(base);
            for u in nbrs {
                g.add_edge(t, u).unwrap();
            }
        }
    }
    g
}

/// An induced path t1 t2 t3 t4 with cliques S1, S2, S3 attached, closed
/// into a larger graph through random outside vertices at t1 and t4.
pub fn path_gadget(r: &mut ChaCha8Rng, max_n: usize) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(4);
    for i in 0..3 {
        g.add_edge(v(i), v(i + 1)).unwrap();
    }
    for i in 0..3u32 {
        let size = r.gen_range(0..=2);
        let s: Vec<VertexId> = (0..size).map(|_| g.add_vertex()).collect();
        for (j, &a) in s.iter().enumerate() {
            g.add_edge(a, v(i)).unwrap();
            g.add_edge(a, v(i + 1)).unwrap();
            for &b in &s[j + 1..] {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    let room = max_n.saturating_sub(g.vertex_count());
    let extra: Vec<VertexId> = (0..r.gen_range(1..=room.max(1))).map(|_| g.add_vertex()).collect();
    let p = r.gen_range(0.2..0.7);
    for (i, &a) in extra.iter().enumerate() {
        for &b in &extra[i + 1..] {
            if r.gen_bool(p) {
                g.add_edge(a, b).unwrap();
            }
        }
        for t in [v(0), v(3)] {
            if r.gen_bool(0.5) {
                g.add_edge(a, t).unwrap();
            }
        }
    }
    if !g.has_edge(extra[0], v(0)) {
        g.add_edge(extra[0], v(0)).unwrap();
    }
    let last = *extra.last().unwrap();
    if !g.has_edge(last, v(3)) {
        g.add_edge(last, v(3)).unwrap();
    }
    g
}

/// Vertex 0 with `2m` neighbours paired up by private middle vertices, so
/// there are `m` disjoint N(0)-paths, plus random noise.
pub fn neighbourhood_paths(r: &mut ChaCha8Rng, m: usize, noise: usize) -> MultiGraph {
    let mut g = MultiGraph::with_vertices(1);
    let mut ends = Vec::new();
    for _ in 0..m {
        let a = g.add_vertex();
        let b = g.add_vertex();
        let x = g.add_vertex();
        for (p, q) in [(v(0), a), (v(0), b), (a, x), (x, b)] {
            g.add_edge(p, q).unwrap();
        }
        ends.extend([a, b, x]);
    }
    for _ in 0..noise {
        let y = g.add_vertex();
        let mut others: Vec<VertexId> = g.vertices().filter(|u| *u != y).collect();
        others.shuffle(r);
        for u in others.into_iter().take(r.gen_range(1..=3)) {
            g.add_edge(y, u).unwrap();
        }
    }
    let all: Vec<VertexId> = g.vertices().collect();
    for _ in 0..r.gen_range(0..=3) {
        let a = *all.choose(r).unwrap();
        let b = *all.choose(r).unwrap();
        if a != b && !g.has_edge(a, b) {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

/// A vertex `0` with many small cliques hanging off it, all touching a set
/// `S` whose removal leaves a block graph. Returns the graph and `S`.
pub fn component_star(r: &mut ChaCha8Rng, max_n: usize) -> (MultiGraph, BTreeSet<VertexId>) {
    let s_size = if max_n >= 10 && r.gen_bool(0.3) { 2 } else { 1 };
    let mut g = MultiGraph::with_vertices(1);
    let s: Vec<VertexId> = (0..s_size).map(|_| g.add_vertex()).collect();
    let need = 3 * s_size + 1;
    let mut comps = 0;
    while g.vertex_count() < max_n && (comps < need || r.gen_bool(0.3)) {
        let room = max_n - g.vertex_count();
        let size = if room >= 2 && r.gen_bool(0.3) { 2 } else { 1 };
        let q: Vec<VertexId> = (0..size).map(|_| g.add_vertex()).collect();
        if size == 2 {
            g.add_edge(q[0], q[1]).unwrap();
        }
        let to_v = if size == 2 && r.gen_bool(0.5) { q.clone() } else { vec![q[0]] };
        for &x in &to_v {
            g.add_edge(v(0), x).unwrap();
        }
        let hit = *s.choose(r).unwrap();
        g.add_edge(*q.choose(r).unwrap(), hit).unwrap();
        for &x in &q {
            for &t in &s {
                if !g.has_edge(x, t) && r.gen_bool(0.2) {
                    g.add_edge(x, t).unwrap();
                }
            }
        }
        comps += 1;
    }
    for &t in &s {
        if r.gen_bool(0.4) {
            g.add_edge(v(0), t).unwrap();
        }
    }
    if s_size == 2 && r.gen_bool(0.5) {
        g.add_edge(s[0], s[1]).unwrap();
    }
    (g, s.into_iter().collect())
}

pub fn random_block_graph(r: &mut ChaCha8Rng, n: usize) -> MultiGraph {
    block_graph(n, r)
}
