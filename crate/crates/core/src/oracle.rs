//! Brute-force reference implementations. Everything here is deliberately
//! naive and shares no obstruction-detection code with the solvers.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use thiserror::Error;

use crate::graph::{MultiGraph, VertexId, Weight, WeightedGraph};

pub const MAX_BVD_VERTICES: usize = 16;
pub const MAX_WFVS_VERTICES: usize = 14;
pub const MAX_APATH_VERTICES: usize = 14;
pub const MAX_DISJOINT_FREE_VERTICES: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {got} vertices, the oracle accepts at most {limit}")]
    TooLarge { got: usize, limit: usize },
}

fn guard(got: usize, limit: usize) -> Result<(), OracleError> {
    if got > limit {
        Err(OracleError::TooLarge { got, limit })
    } else {
        Ok(())
    }
}

/// Bitmask adjacency of a simple graph with at most 32 vertices.
struct Masks {
    ids: Vec<VertexId>,
    adj: Vec<u32>,
}

impl Masks {
    fn new(g: &MultiGraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        assert!(ids.len() <= 32);
        let pos = |v: VertexId| ids.iter().position(|x| *x == v).unwrap();
        let mut adj = vec![0u32; ids.len()];
        for (i, v) in ids.iter().enumerate() {
            for u in g.neighbors(*v) {
                adj[i] |= 1 << pos(u);
            }
        }
        Masks { ids, adj }
    }

    fn to_set(&self, mask: u32) -> BTreeSet<VertexId> {
        (0..self.ids.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.ids[i])
            .collect()
    }

    /// Component label per vertex of `alive`; `u8::MAX` for dead vertices.
    fn components(&self, alive: u32) -> Vec<u8> {
        let mut label = vec![u8::MAX; self.ids.len()];
        let mut next = 0u8;
        let mut rest = alive;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            let mut comp = 1u32 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let x = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[x] & alive & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            let mut c = comp;
            while c != 0 {
                let x = c.trailing_zeros() as usize;
                c &= c - 1;
                label[x] = next;
            }
            next += 1;
        }
        label
    }

    /// Every two nonadjacent vertices of one component are split apart by
    /// deleting a single third vertex. This holds exactly when every
    /// 2-connected piece is complete.
    fn is_block(&self, alive: u32) -> bool {
        let n = self.ids.len();
        let base = self.components(alive);
        let cuts: Vec<(usize, Vec<u8>)> = (0..n)
            .filter(|x| alive >> x & 1 == 1)
            .map(|x| (x, self.components(alive & !(1 << x))))
            .collect();
        for u in 0..n {
            if alive >> u & 1 == 0 {
                continue;
            }
            for w in u + 1..n {
                if alive >> w & 1 == 0 || self.adj[u] >> w & 1 == 1 || base[u] != base[w] {
                    continue;
                }
                if !cuts
                    .iter()
                    .any(|(x, lab)| *x != u && *x != w && lab[u] != lab[w])
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Definition-based block graph test. Loops and parallel edges make the
/// answer false.
pub fn is_block_graph_naive(g: &MultiGraph) -> bool {
    if !g.is_simple() {
        return false;
    }
    if g.vertex_count() <= 32 {
        let m = Masks::new(g);
        return m.is_block((((1u64) << m.ids.len()) - 1) as u32);
    }
    // Large graphs: same criterion over explicit sets.
    let comps_without = |x: Option<VertexId>| {
        let h = match x {
            Some(x) => g.without(&[x]),
            None => g.clone(),
        };
        let mut label = std::collections::BTreeMap::new();
        for (i, c) in h.connected_components().into_iter().enumerate() {
            for v in c {
                label.insert(v, i);
            }
        }
        label
    };
    let base = comps_without(None);
    let cuts: Vec<_> = g.vertices().map(|x| (x, comps_without(Some(x)))).collect();
    for u in g.vertices() {
        for w in g.vertices().filter(|w| *w > u) {
            if g.has_edge(u, w) || base[&u] != base[&w] {
                continue;
            }
            if !cuts
                .iter()
                .any(|(x, lab)| *x != u && *x != w && lab[&u] != lab[&w])
            {
                return false;
            }
        }
    }
    true
}

/// Visits every `size`-subset of `0..n` as a bitmask in lexicographic order
/// of the sorted index lists; stops when `f` returns true.
fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(u32) -> bool) -> bool {
    fn rec(start: usize, n: usize, left: usize, mask: u32, f: &mut dyn FnMut(u32) -> bool) -> bool {
        if left == 0 {
            return f(mask);
        }
        for i in start..=n - left {
            if rec(i + 1, n, left - 1, mask | 1 << i, f) {
                return true;
            }
        }
        false
    }
    if size > n {
        return false;
    }
    rec(0, n, size, 0, &mut f)
}

/// Minimum block vertex deletion set by exhaustive search over subsets of
/// increasing size. The witness is the lexicographically first optimum.
pub fn brute_min_bvd(g: &MultiGraph) -> Result<(usize, BTreeSet<VertexId>), OracleError> {
    guard(g.vertex_count(), MAX_BVD_VERTICES)?;
    let simple = {
        let mut h = g.clone();
        let loops: Vec<_> = h.edges().filter(|(u, v, _)| u == v).map(|(u, _, _)| u).collect();
        for v in loops {
            h.set_multiplicity(v, v, 0).unwrap();
        }
        h
    };
    // A vertex with a loop or parallel edge must be deleted; try subsets
    // over the simple underlying graph and test the real graph.
    let m = Masks::new(&simple);
    let n = m.ids.len();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let bad: Vec<(usize, usize)> = g
        .edges()
        .filter(|(u, v, c)| u == v || *c > 1)
        .map(|(u, v, _)| {
            let pu = m.ids.iter().position(|x| *x == u).unwrap();
            let pv = m.ids.iter().position(|x| *x == v).unwrap();
            (pu, pv)
        })
        .collect();
    for size in 0..=n {
        let mut found = None;
        for_each_subset(n, size, |del| {
            let alive = full & !del;
            let clean = bad
                .iter()
                .all(|&(a, b)| alive >> a & 1 == 0 || alive >> b & 1 == 0);
            if clean && m.is_block(alive) {
                found = Some(del);
                true
            } else {
                false
            }
        });
        if let Some(del) = found {
            return Ok((size, m.to_set(del)));
        }
    }
    unreachable!("deleting every vertex leaves a block graph")
}

/// Minimum-weight feedback vertex set among sets of size at most `k`.
/// Ties go to smaller size, then the lexicographically first set.
pub fn brute_min_wfvs(
    g: &WeightedGraph,
    k: usize,
) -> Result<Option<(Weight, BTreeSet<VertexId>)>, OracleError> {
    guard(g.graph.vertex_count(), MAX_WFVS_VERTICES)?;
    let ids: Vec<VertexId> = g.graph.vertices().collect();
    let n = ids.len();
    let mut best: Option<(Weight, BTreeSet<VertexId>)> = None;
    for size in 0..=k.min(n) {
        for_each_subset(n, size, |mask| {
            let set: BTreeSet<VertexId> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
            if g.graph.without(&set).is_forest() {
                let w = g.total(&set);
                if best.as_ref().map_or(true, |(bw, _)| w < *bw) {
                    best = Some((w, set));
                }
            }
            false
        });
    }
    Ok(best)
}

/// Whether a set `X` avoiding `retained` with `|X| <= k` leaves a forest.
pub fn brute_disjoint_fvs_exists(
    g: &MultiGraph,
    retained: &BTreeSet<VertexId>,
    k: usize,
) -> Result<bool, OracleError> {
    let free: Vec<VertexId> = g.vertices().filter(|v| !retained.contains(v)).collect();
    guard(free.len(), MAX_DISJOINT_FREE_VERTICES)?;
    if !g.induced(retained).is_forest() {
        return Ok(false);
    }
    let n = free.len();
    for size in 0..=k.min(n) {
        let hit = for_each_subset(n, size, |mask| {
            let set: Vec<VertexId> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| free[i]).collect();
            g.without(&set).is_forest()
        });
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All A-paths of `g` grouped by vertex set (as bitmasks over the sorted
/// vertex list).
fn apath_vertex_sets(m: &Masks, a: u32, avail: u32) -> Vec<u32> {
    fn extend(m: &Masks, a: u32, avail: u32, end: usize, used: u32, start: usize, out: &mut BTreeSet<u32>) {
        let mut nbrs = m.adj[end] & avail & !used;
        while nbrs != 0 {
            let x = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            let used2 = used | 1 << x;
            if a >> x & 1 == 1 {
                if x > start {
                    out.insert(used2);
                }
            } else {
                extend(m, a, avail, x, used2, start, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut starts = a & avail;
    while starts != 0 {
        let s = starts.trailing_zeros() as usize;
        starts &= starts - 1;
        extend(m, a, avail, s, 1 << s, s, &mut out);
    }
    out.into_iter().collect()
}

fn anchor_mask(m: &Masks, anchors: &BTreeSet<VertexId>) -> u32 {
    m.ids
        .iter()
        .enumerate()
        .filter(|(_, v)| anchors.contains(v))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Maximum number of pairwise vertex-disjoint A-paths. Dynamic program over
/// the set of still-available vertices: the lowest available anchor is
/// either left unused or ends one path.
pub fn brute_max_apaths(g: &MultiGraph, anchors: &BTreeSet<VertexId>) -> Result<usize, OracleError> {
    guard(g.vertex_count(), MAX_APATH_VERTICES)?;
    let m = Masks::new(g);
    let a = anchor_mask(&m, anchors);
    let full = ((1u64 << m.ids.len()) - 1) as u32;
    let mut memo = HashMap::new();
    Ok(apath_dp(&m, a, full, &mut memo))
}

fn apath_dp(m: &Masks, a: u32, avail: u32, memo: &mut HashMap<u32, usize>) -> usize {
    let live = a & avail;
    if live.count_ones() < 2 {
        return 0;
    }
    if let Some(&r) = memo.get(&avail) {
        return r;
    }
    let s = live.trailing_zeros() as usize;
    let mut best = apath_dp(m, a, avail & !(1 << s), memo);
    // Paths starting at s: enumerate by vertex set.
    let mut sets = BTreeSet::new();
    fn walk(m: &Masks, a: u32, avail: u32, end: usize, used: u32, out: &mut BTreeSet<u32>) {
        let mut nbrs = m.adj[end] & avail & !used;
        while nbrs != 0 {
            let x = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            let used2 = used | 1 << x;
            if a >> x & 1 == 1 {
                out.insert(used2);
            } else {
                walk(m, a, avail, x, used2, out);
            }
        }
    }
    walk(m, a, avail, s, 1 << s, &mut sets);
    for used in sets {
        best = best.max(1 + apath_dp(m, a, avail & !used, memo));
    }
    memo.insert(avail, best);
    best
}

/// Second, independently structured coding of the A-path maximum: list
/// every A-path vertex set, then search for the largest pairwise disjoint
/// subfamily.
pub fn brute_max_apaths_setpack(g: &MultiGraph, anchors: &BTreeSet<VertexId>) -> Result<usize, OracleError> {
    guard(g.vertex_count(), MAX_APATH_VERTICES)?;
    let m = Masks::new(g);
    let a = anchor_mask(&m, anchors);
    let full = ((1u64 << m.ids.len()) - 1) as u32;
    let mut sets = apath_vertex_sets(&m, a, full);
    // Minimal vertex sets dominate: a packing using a superset can swap in
    // any subset that is itself an A-path set.
    sets.sort_by_key(|s| s.count_ones());
    let mut minimal: Vec<u32> = Vec::new();
    for s in sets {
        if !minimal.iter().any(|t| t & s == *t) {
            minimal.push(s);
        }
    }
    fn pack(sets: &[u32], used: u32, count: usize, best: &mut usize) {
        if count + sets.len() <= *best {
            return;
        }
        match sets.split_first() {
            None => *best = (*best).max(count),
            Some((&s, rest)) => {
                if s & used == 0 {
                    pack(rest, used | s, count + 1, best);
                }
                pack(rest, used, count, best);
            }
        }
    }
    let mut best = 0;
    pack(&minimal, 0, 0, &mut best);
    Ok(best)
}

/// Total weight helper used by tests that compare against the oracle.
pub fn zero_weight() -> Weight {
    Weight::zero()
}
