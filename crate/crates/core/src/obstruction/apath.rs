//! Vertex-disjoint A-paths: paths with at least one edge whose two ends lie
//! in A and whose internal vertices avoid A.
//!
//! Maximum packings come from Gallai's reduction: every vertex outside A is
//! split into two adjacent copies, every edge joins all copies of its ends,
//! and a maximum matching of the split graph exceeds |V \ A| by exactly the
//! maximum number of disjoint A-paths.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::matching::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::Serialize;

use crate::graph::{Dense, MultiGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct APathPacking {
    pub anchors: BTreeSet<VertexId>,
    pub paths: Vec<Vec<VertexId>>,
    /// A vertex set meeting every A-path; present when the packing is
    /// smaller than requested.
    pub cover: Option<BTreeSet<VertexId>>,
}

impl APathPacking {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.paths.iter().flatten().copied().collect()
    }
}

/// Checks that `path` is an A-path of `g`.
pub fn is_apath(g: &MultiGraph, anchors: &BTreeSet<VertexId>, path: &[VertexId]) -> bool {
    if path.len() < 2 {
        return false;
    }
    let distinct: BTreeSet<_> = path.iter().collect();
    if distinct.len() != path.len() || path.iter().any(|v| !g.contains(*v)) {
        return false;
    }
    let (first, last) = (path[0], path[path.len() - 1]);
    anchors.contains(&first)
        && anchors.contains(&last)
        && path[1..path.len() - 1].iter().all(|v| !anchors.contains(v))
        && path.windows(2).all(|w| w[0] != w[1] && g.has_edge(w[0], w[1]))
}

/// True iff `g - removed` still has an A-path (anchors restricted to the
/// surviving vertices).
pub fn apath_exists(g: &MultiGraph, anchors: &BTreeSet<VertexId>, removed: &BTreeSet<VertexId>) -> bool {
    let alive = |v: &VertexId| !removed.contains(v);
    let live: BTreeSet<VertexId> = anchors.iter().copied().filter(|v| alive(v) && g.contains(*v)).collect();
    for &a in &live {
        if g.neighbors(a).any(|b| b != a && live.contains(&b)) {
            return true;
        }
    }
    let rest: BTreeSet<VertexId> = g
        .vertices()
        .filter(|v| alive(v) && !anchors.contains(v))
        .collect();
    for comp in g.induced(&rest).connected_components() {
        let mut touched = BTreeSet::new();
        for &x in &comp {
            for y in g.neighbors(x) {
                if live.contains(&y) {
                    touched.insert(y);
                    if touched.len() >= 2 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn maximum_apaths(g: &MultiGraph, anchors: &BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
    let d = Dense::new(g);
    let n = d.len();
    let mut split: UnGraph<(), ()> = UnGraph::new_undirected();
    let mut copies: Vec<Vec<NodeIndex>> = Vec::with_capacity(n);
    let mut owner: BTreeMap<NodeIndex, usize> = BTreeMap::new();
    let mut twin: BTreeMap<NodeIndex, NodeIndex> = BTreeMap::new();
    for i in 0..n {
        let c1 = split.add_node(());
        owner.insert(c1, i);
        if anchors.contains(&d.ids[i]) {
            copies.push(vec![c1]);
        } else {
            let c2 = split.add_node(());
            owner.insert(c2, i);
            split.add_edge(c1, c2, ());
            twin.insert(c1, c2);
            twin.insert(c2, c1);
            copies.push(vec![c1, c2]);
        }
    }
    for i in 0..n {
        for &j in d.adj[i].iter().filter(|&&j| j > i) {
            for &a in &copies[i] {
                for &b in &copies[j] {
                    split.add_edge(a, b, ());
                }
            }
        }
    }
    let matching = maximum_matching(&split);

    // Components of M xor N0 that start at an anchor and end at an anchor
    // after alternating M, N0, M, ... are the paths.
    let mut paths = Vec::new();
    let mut seen = vec![false; n];
    for i in 0..n {
        if copies[i].len() != 1 || seen[i] {
            continue;
        }
        let start = copies[i][0];
        let Some(mut cur) = matching.mate(start) else { continue };
        let mut path = vec![i];
        let ok = loop {
            let v = owner[&cur];
            path.push(v);
            if copies[v].len() == 1 {
                break true;
            }
            let other = twin[&cur];
            match matching.mate(other) {
                Some(next) if next != cur => cur = next,
                _ => break false,
            }
        };
        if ok {
            for &v in &path {
                seen[v] = true;
            }
            paths.push(path.into_iter().map(|x| d.ids[x]).collect::<Vec<_>>());
        }
    }
    let non_anchor = (0..n).filter(|&i| copies[i].len() == 2).count();
    debug_assert_eq!(paths.len(), matching.len() - non_anchor);
    paths
}

/// Maximum packing of vertex-disjoint A-paths. When fewer than `need` paths
/// exist, a cover of all A-paths is attached: the packed vertices, shrunk
/// greedily while the cover property survives.
pub fn apath_packing(g: &MultiGraph, anchors: &BTreeSet<VertexId>, need: usize) -> APathPacking {
    let anchors: BTreeSet<VertexId> = anchors.iter().copied().filter(|v| g.contains(*v)).collect();
    let paths = maximum_apaths(g, &anchors);
    debug_assert!(paths.iter().all(|p| is_apath(g, &anchors, p)));
    let cover = if paths.len() < need {
        let mut cover: BTreeSet<VertexId> = paths.iter().flatten().copied().collect();
        let order: Vec<VertexId> = cover.iter().copied().collect();
        for x in order {
            cover.remove(&x);
            if apath_exists(g, &anchors, &cover) {
                cover.insert(x);
            }
        }
        debug_assert!(!apath_exists(g, &anchors, &cover));
        Some(cover)
    } else {
        None
    };
    APathPacking { anchors, paths, cover }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_max_apaths, brute_max_apaths_setpack};
    use proptest::prelude::*;

    fn set(xs: &[u32]) -> BTreeSet<VertexId> {
        xs.iter().map(|&x| VertexId(x)).collect()
    }

    #[test]
    fn three_parallel_paths_share_their_ends() {
        let g = MultiGraph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let p = apath_packing(&g, &set(&[0, 1]), 3);
        assert_eq!(p.len(), 1);
        let cover = p.cover.unwrap();
        assert!(!apath_exists(&g, &set(&[0, 1]), &cover));
    }

    #[test]
    fn triangle_and_matching() {
        let tri = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(apath_packing(&tri, &set(&[0, 1, 2]), 1).len(), 1);
        let m = MultiGraph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]);
        let p = apath_packing(&m, &set(&[0, 1, 2, 3, 4, 5]), 3);
        assert_eq!(p.len(), 3);
        assert!(p.cover.is_none());
    }

    fn graph_with_anchors() -> impl Strategy<Value = (MultiGraph, BTreeSet<VertexId>)> {
        (2usize..=12, 0.15f64..0.6).prop_flat_map(|(n, p)| {
            (
                proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2),
                proptest::collection::vec(proptest::bool::weighted(0.4), n),
            )
                .prop_map(move |(bits, anchor_bits)| {
                    let mut g = MultiGraph::with_vertices(n);
                    let mut it = bits.into_iter();
                    for a in 0..n as u32 {
                        for b in a + 1..n as u32 {
                            if it.next().unwrap() {
                                g.add_edge(VertexId(a), VertexId(b)).unwrap();
                            }
                        }
                    }
                    let anchors = anchor_bits
                        .into_iter()
                        .enumerate()
                        .filter(|(_, b)| *b)
                        .map(|(i, _)| VertexId(i as u32))
                        .collect();
                    (g, anchors)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn packing_is_maximum_and_cover_is_valid((g, a) in graph_with_anchors()) {
            let p = apath_packing(&g, &a, usize::MAX);
            let used: Vec<VertexId> = p.paths.iter().flatten().copied().collect();
            let distinct: BTreeSet<_> = used.iter().collect();
            prop_assert_eq!(distinct.len(), used.len());
            for path in &p.paths {
                prop_assert!(is_apath(&g, &a, path));
            }
            let best = brute_max_apaths(&g, &a).unwrap();
            prop_assert_eq!(p.len(), best);
            prop_assert_eq!(best, brute_max_apaths_setpack(&g, &a).unwrap());
            let cover = p.cover.unwrap();
            prop_assert!(!apath_exists(&g, &a, &cover));
        }
    }
}
