//! Block graph recognition and obstruction machinery: diamonds, holes,
//! anchored searches, clique structure of {C4, D4}-free graphs, greedy
//! obstruction packings and A-path packings.
//!
//! A block graph is a graph that is chordal and diamond-free, so the
//! obstructions are the diamond K4 - e and every chordless cycle of length
//! at least four.

mod apath;

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Dense, MultiGraph, VertexId};

pub use apath::{apath_exists, apath_packing, is_apath, APathPacking};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ObstructionKind {
    Diamond,
    Hole,
}

/// A witness that a graph is not a block graph. Diamonds list the two
/// degree-three vertices first; holes list the cycle in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub vertices: Vec<VertexId>,
}

impl Obstruction {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Checks the induced-subgraph shape against the host graph.
    pub fn verify(&self, g: &MultiGraph) -> bool {
        let vs = &self.vertices;
        if vs.iter().any(|v| !g.contains(*v)) || self.vertex_set().len() != vs.len() {
            return false;
        }
        match self.kind {
            ObstructionKind::Diamond => {
                if vs.len() != 4 {
                    return false;
                }
                let (a, b, c, d) = (vs[0], vs[1], vs[2], vs[3]);
                g.has_edge(a, b)
                    && g.has_edge(a, c)
                    && g.has_edge(a, d)
                    && g.has_edge(b, c)
                    && g.has_edge(b, d)
                    && !g.has_edge(c, d)
            }
            ObstructionKind::Hole => {
                let n = vs.len();
                if n < 4 {
                    return false;
                }
                for i in 0..n {
                    for j in i + 1..n {
                        let consecutive = j == i + 1 || (i == 0 && j == n - 1);
                        if g.has_edge(vs[i], vs[j]) != consecutive {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("maximal cliques {0:?} and {1:?} share two or more vertices; the graph contains a C4 or diamond")]
    CliquesOverlap(Vec<VertexId>, Vec<VertexId>),
    #[error("edge clique {0:?} is not complete; the graph contains a diamond")]
    NotAClique(Vec<VertexId>),
}

/// Every block induces a complete graph. Loops and parallel edges make the
/// answer false.
pub fn is_block_graph(g: &MultiGraph) -> bool {
    if !g.is_simple() {
        return false;
    }
    let forest = g.block_cut_forest();
    forest.blocks.iter().all(|b| {
        b.iter()
            .all(|u| b.iter().all(|w| u >= w || g.has_edge(*u, *w)))
    })
}

/// Chordality by maximum cardinality search followed by a perfect
/// elimination ordering check.
fn is_chordal(d: &Dense) -> bool {
    let n = d.len();
    let mut weight = vec![0usize; n];
    let mut alpha = vec![usize::MAX; n];
    let mut order = vec![0usize; n];
    for i in (0..n).rev() {
        let v = (0..n)
            .filter(|&x| alpha[x] == usize::MAX)
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .unwrap();
        alpha[v] = i;
        order[i] = v;
        for &w in &d.adj[v] {
            if alpha[w] == usize::MAX {
                weight[w] += 1;
            }
        }
    }
    for &v in &order {
        let later: Vec<usize> = d.adj[v].iter().copied().filter(|&w| alpha[w] > alpha[v]).collect();
        if let Some(&p) = later.iter().min_by_key(|&&w| alpha[w]) {
            if later.iter().any(|&w| w != p && !d.mat[p][w]) {
                return false;
            }
        }
    }
    true
}

fn nonadjacent_pair(d: &Dense, set: &[usize]) -> Option<(usize, usize)> {
    for (i, &a) in set.iter().enumerate() {
        for &c in &set[i + 1..] {
            if !d.mat[a][c] {
                return Some((a, c));
            }
        }
    }
    None
}

fn common(d: &Dense, u: usize, w: usize) -> Vec<usize> {
    d.adj[u].iter().copied().filter(|&x| d.mat[w][x]).collect()
}

fn any_diamond(d: &Dense) -> Option<[usize; 4]> {
    for u in 0..d.len() {
        for &w in d.adj[u].iter().filter(|&&w| w > u) {
            if let Some((a, c)) = nonadjacent_pair(d, &common(d, u, w)) {
                return Some([u, w, a, c]);
            }
        }
    }
    None
}

fn any_c4(d: &Dense) -> Option<[usize; 4]> {
    let n = d.len();
    for u in 0..n {
        for w in u + 1..n {
            if d.mat[u][w] {
                continue;
            }
            if let Some((x, y)) = nonadjacent_pair(d, &common(d, u, w)) {
                return Some([u, x, w, y]);
            }
        }
    }
    None
}

fn diamond_through(d: &Dense, v: usize) -> Option<[usize; 4]> {
    // v as one of the two degree-three vertices.
    for &b in &d.adj[v] {
        if let Some((a, c)) = nonadjacent_pair(d, &common(d, v, b)) {
            return Some([v, b, a, c]);
        }
    }
    // v as a degree-two vertex: an edge ab inside N(v) with a common
    // neighbour outside N[v].
    for &a in &d.adj[v] {
        for &b in d.adj[v].iter().filter(|&&b| b > a && d.mat[a][b]) {
            if let Some(&x) = common(d, a, b).iter().find(|&&x| x != v && !d.mat[v][x]) {
                return Some([a, b, v, x]);
            }
        }
    }
    None
}

/// Shortest hole through `v`: for each neighbour `x`, a breadth-first search
/// from `x` avoiding `N[v]` until it touches a neighbour of `v` that is not
/// adjacent to `x`.
fn shortest_hole_through(d: &Dense, v: usize) -> Option<Vec<usize>> {
    let n = d.len();
    let mut closed = vec![false; n];
    closed[v] = true;
    for &x in &d.adj[v] {
        closed[x] = true;
    }
    let mut best: Option<Vec<usize>> = None;
    let mut parent = vec![usize::MAX; n];
    for &x in &d.adj[v] {
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        parent[x] = x;
        let mut queue = VecDeque::from([x]);
        let mut hit = None;
        'bfs: while let Some(c) = queue.pop_front() {
            for &w in &d.adj[c] {
                if closed[w] {
                    if c != x && w != x && !d.mat[x][w] {
                        hit = Some((c, w));
                        break 'bfs;
                    }
                } else if parent[w] == usize::MAX {
                    parent[w] = c;
                    queue.push_back(w);
                }
            }
        }
        if let Some((c, w)) = hit {
            let mut path = vec![w, c];
            let mut cur = c;
            while cur != x {
                cur = parent[cur];
                path.push(cur);
            }
            path.push(v);
            path.reverse();
            // path = v, x, ..., c, w
            if best.as_ref().map_or(true, |b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    best
}

fn to_obstruction(d: &Dense, kind: ObstructionKind, idx: &[usize]) -> Obstruction {
    Obstruction {
        kind,
        vertices: idx.iter().map(|&i| d.ids[i]).collect(),
    }
}

fn min_obstruction_dense(d: &Dense) -> Option<Obstruction> {
    if let Some(dm) = any_diamond(d) {
        return Some(to_obstruction(d, ObstructionKind::Diamond, &dm));
    }
    if is_chordal(d) {
        return None;
    }
    if let Some(c4) = any_c4(d) {
        return Some(to_obstruction(d, ObstructionKind::Hole, &c4));
    }
    let mut best: Option<Vec<usize>> = None;
    for v in 0..d.len() {
        if let Some(h) = shortest_hole_through(d, v) {
            if best.as_ref().map_or(true, |b| h.len() < b.len()) {
                best = Some(h);
            }
        }
    }
    best.map(|h| to_obstruction(d, ObstructionKind::Hole, &h))
}

fn min_obstruction_through_dense(d: &Dense, v: usize) -> Option<Obstruction> {
    if let Some(dm) = diamond_through(d, v) {
        return Some(to_obstruction(d, ObstructionKind::Diamond, &dm));
    }
    shortest_hole_through(d, v).map(|h| to_obstruction(d, ObstructionKind::Hole, &h))
}

/// Finds an obstruction, or one containing `anchor` when given. The result
/// is a minimum-size obstruction of the requested kind (diamonds first).
/// Loops and parallel edges are ignored; callers pass simple graphs.
pub fn find_obstruction(g: &MultiGraph, anchor: Option<VertexId>) -> Option<Obstruction> {
    let d = Dense::new(g);
    let found = match anchor {
        None => min_obstruction_dense(&d),
        Some(v) => {
            let i = *d.index.get(&v)?;
            min_obstruction_through_dense(&d, i)
        }
    };
    debug_assert!(found.as_ref().map_or(true, |o| o.verify(g)));
    found
}

/// A diamond or an induced C4, if one exists.
pub fn find_small_obstruction(g: &MultiGraph) -> Option<Obstruction> {
    let d = Dense::new(g);
    if let Some(dm) = any_diamond(&d) {
        return Some(to_obstruction(&d, ObstructionKind::Diamond, &dm));
    }
    any_c4(&d).map(|c| to_obstruction(&d, ObstructionKind::Hole, &c))
}

/// Maximal cliques of a {C4, D4}-free graph: the clique of an edge is the
/// edge plus the common neighbours of its ends. Isolated vertices are
/// singleton cliques.
pub fn maximal_cliques_c4d4_free(g: &MultiGraph) -> Result<Vec<BTreeSet<VertexId>>, ObstructionError> {
    let d = Dense::new(g);
    let mut cliques: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for u in 0..d.len() {
        if d.adj[u].is_empty() {
            cliques.insert(BTreeSet::from([u]));
        }
        for &w in d.adj[u].iter().filter(|&&w| w > u) {
            let mut c: BTreeSet<usize> = common(&d, u, w).into_iter().collect();
            c.insert(u);
            c.insert(w);
            cliques.insert(c);
        }
    }
    let ids = |c: &BTreeSet<usize>| -> Vec<VertexId> { c.iter().map(|&i| d.ids[i]).collect() };
    let list: Vec<BTreeSet<usize>> = cliques.into_iter().collect();
    for c in &list {
        let members: Vec<usize> = c.iter().copied().collect();
        if nonadjacent_pair(&d, &members).is_some() {
            return Err(ObstructionError::NotAClique(ids(c)));
        }
    }
    for (i, a) in list.iter().enumerate() {
        for b in &list[i + 1..] {
            if a.intersection(b).count() >= 2 {
                return Err(ObstructionError::CliquesOverlap(ids(a), ids(b)));
            }
        }
    }
    Ok(list
        .iter()
        .map(|c| c.iter().map(|&i| d.ids[i]).collect())
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackMode {
    /// Any obstructions, pairwise vertex-disjoint.
    Free,
    /// Obstructions through the given vertex, pairwise meeting only there.
    Flower(VertexId),
    /// Diamonds and induced C4s only, pairwise vertex-disjoint.
    SmallOnly,
}

/// Greedy packing: repeatedly take a minimum obstruction of the requested
/// kind and delete its vertices (keeping the flower centre).
pub fn pack_disjoint_obstructions(g: &MultiGraph, limit: usize, mode: PackMode) -> Vec<Obstruction> {
    let mut out = Vec::new();
    let mut h = g.clone();
    while out.len() < limit {
        let next = match mode {
            PackMode::Free => find_obstruction(&h, None),
            PackMode::Flower(v) => {
                if !h.contains(v) {
                    None
                } else {
                    find_obstruction(&h, Some(v))
                }
            }
            PackMode::SmallOnly => find_small_obstruction(&h),
        };
        let Some(o) = next else { break };
        let remove: Vec<VertexId> = match mode {
            PackMode::Flower(v) => o.vertices.iter().copied().filter(|x| *x != v).collect(),
            _ => o.vertices.clone(),
        };
        for x in remove {
            h.remove_vertex(x).unwrap();
        }
        out.push(o);
    }
    out
}
