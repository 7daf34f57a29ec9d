//! Exact block graph vertex deletion: branch on diamonds and induced C4s,
//! then solve the remaining {C4, D4}-free instance as a weighted feedback
//! vertex set problem on the clique-incidence graph.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{GraphError, MultiGraph, VertexId, Weight, WeightedGraph};
use crate::obstruction::{find_small_obstruction, is_block_graph, maximal_cliques_c4d4_free, ObstructionError};
use crate::wfvs::{solve_wfvs_with, WfvsError, WfvsOptions, WfvsStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BgvdError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cliques(#[from] ObstructionError),
    #[error(transparent)]
    Wfvs(#[from] WfvsError),
    #[error("feedback vertex set of the clique-incidence graph uses clique vertex {0}")]
    CliqueVertexInSolution(VertexId),
}

/// Bipartite graph on `V(G)` and one vertex per maximal clique, joining each
/// clique to its external members (those lying in at least two maximal
/// cliques). Graph vertices weigh 1, clique vertices `n^4`.
#[derive(Clone, Debug)]
pub struct CliqueIncidenceGraph {
    pub graph: WeightedGraph,
    pub original: BTreeSet<VertexId>,
    pub cliques: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl CliqueIncidenceGraph {
    pub fn is_clique_vertex(&self, v: VertexId) -> bool {
        self.cliques.contains_key(&v)
    }
}

pub fn build_clique_incidence(g: &MultiGraph) -> Result<CliqueIncidenceGraph, BgvdError> {
    g.check_simple()?;
    let cliques = maximal_cliques_c4d4_free(g)?;
    let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
    for c in &cliques {
        for v in c {
            *count.entry(*v).or_default() += 1;
        }
    }
    let n = g.vertex_count() as i64;
    let heavy = Weight::from_integer((n * n * n * n).into());
    let mut h = MultiGraph::new();
    for v in g.vertices() {
        h.add_vertex_with_id(v)?;
    }
    let mut next = g.next_id().0;
    let mut weights = BTreeMap::new();
    let mut origin = BTreeMap::new();
    for c in cliques {
        let id = VertexId(next);
        next += 1;
        h.add_vertex_with_id(id)?;
        for v in c.iter().filter(|v| count[v] >= 2) {
            h.add_edge(*v, id)?;
        }
        weights.insert(id, heavy.clone());
        origin.insert(id, c);
    }
    let mut graph = WeightedGraph::unit(h);
    for (v, w) in weights {
        graph.set_weight(v, w);
    }
    Ok(CliqueIncidenceGraph { graph, original: g.vertex_set(), cliques: origin })
}

#[derive(Clone, Debug, Default)]
pub struct BgvdStats {
    /// Nodes of the branching tree, summed over all budgets tried.
    pub nodes: usize,
    /// Nodes of the branching tree for the last budget tried.
    pub last_nodes: usize,
    pub restricted_calls: usize,
    pub wfvs: WfvsStats,
}

/// Minimum block vertex deletion set of size at most `k` for a {C4,
/// D4}-free graph.
pub fn solve_restricted_with(
    g: &MultiGraph,
    k: usize,
    stats: &mut BgvdStats,
) -> Result<Option<BTreeSet<VertexId>>, BgvdError> {
    stats.restricted_calls += 1;
    let ghat = build_clique_incidence(g)?;
    let k = k.min(g.vertex_count());
    let sol = solve_wfvs_with(&ghat.graph, k, &mut stats.wfvs, &WfvsOptions::default())?;
    let Some(sol) = sol else { return Ok(None) };
    if sol.weight > Weight::from_integer((k as i64).into()) {
        return Ok(None);
    }
    if let Some(c) = sol.set.iter().find(|v| ghat.is_clique_vertex(**v)) {
        return Err(BgvdError::CliqueVertexInSolution(*c));
    }
    Ok(Some(sol.set))
}

pub fn solve_restricted(g: &MultiGraph, k: usize) -> Result<Option<BTreeSet<VertexId>>, BgvdError> {
    solve_restricted_with(g, k, &mut BgvdStats::default())
}

fn branch(g: &MultiGraph, k: usize, stats: &mut BgvdStats) -> Result<Option<BTreeSet<VertexId>>, BgvdError> {
    stats.nodes += 1;
    stats.last_nodes += 1;
    let Some(o) = find_small_obstruction(g) else {
        return solve_restricted_with(g, k, stats);
    };
    if k == 0 {
        return Ok(None);
    }
    let mut order = o.vertices.clone();
    order.sort();
    for v in order {
        if let Some(mut s) = branch(&g.without(&[v]), k - 1, stats)? {
            s.insert(v);
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// A minimum block vertex deletion set of size at most `k`, found by trying
/// budgets `0, 1, ..., k` in turn.
pub fn solve_bgvd_with(
    g: &MultiGraph,
    k: usize,
    stats: &mut BgvdStats,
) -> Result<Option<BTreeSet<VertexId>>, BgvdError> {
    g.check_simple()?;
    for budget in 0..=k.min(g.vertex_count()) {
        stats.last_nodes = 0;
        if let Some(s) = branch(g, budget, stats)? {
            debug_assert!(is_block_graph(&g.without(&s)));
            return Ok(Some(s));
        }
    }
    Ok(None)
}

pub fn solve_bgvd(g: &MultiGraph, k: usize) -> Result<Option<BTreeSet<VertexId>>, BgvdError> {
    solve_bgvd_with(g, k, &mut BgvdStats::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_min_bvd;
    use proptest::prelude::*;

    fn cycle(n: u32) -> MultiGraph {
        let e: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n as usize, &e)
    }

    #[test]
    fn clique_incidence_examples() {
        let tri = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let h = build_clique_incidence(&tri).unwrap();
        assert_eq!(h.cliques.len(), 1);
        assert_eq!(h.graph.graph.edge_count(), 0);

        let bowtie = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let h = build_clique_incidence(&bowtie).unwrap();
        assert_eq!(h.cliques.len(), 2);
        assert_eq!(h.graph.graph.edge_count(), 2);
        assert_eq!(h.graph.graph.degree(VertexId(2)), 2);
        assert_eq!(h.graph.weight(VertexId(5)), &Weight::from_integer(625.into()));

        let c6 = build_clique_incidence(&cycle(6)).unwrap();
        assert_eq!(c6.cliques.len(), 6);
        let g = &c6.graph.graph;
        assert_eq!(g.edge_count(), 12);
        assert!(g.vertices().all(|v| g.degree(v) == 2));
        assert_eq!(g.connected_components().len(), 1);
    }

    #[test]
    fn diamond_is_rejected_by_the_builder() {
        let d = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!(matches!(build_clique_incidence(&d), Err(BgvdError::Cliques(_))));
    }

    #[test]
    fn restricted_examples() {
        let bowtie = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(solve_restricted(&bowtie, 0).unwrap(), Some(BTreeSet::new()));
        assert_eq!(solve_restricted(&cycle(6), 1).unwrap().unwrap().len(), 1);
        assert_eq!(solve_restricted(&cycle(6), 0).unwrap(), None);
    }

    #[test]
    fn bgvd_examples() {
        assert_eq!(solve_bgvd(&cycle(4), 1).unwrap().unwrap().len(), 1);
        let d = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        let s = solve_bgvd(&d, 1).unwrap().unwrap();
        assert_eq!(s.len(), 1);
        assert!(is_block_graph(&d.without(&s)));
        let two = MultiGraph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)]);
        assert_eq!(solve_bgvd(&two, 1).unwrap(), None);
        assert_eq!(solve_bgvd(&two, 2).unwrap().unwrap().len(), 2);
    }

    fn simple_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
        (1usize..=max_n, 0.1f64..0.9).prop_flat_map(|(n, p)| {
            proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = MultiGraph::with_vertices(n);
                let mut it = bits.into_iter();
                for a in 0..n as u32 {
                    for b in a + 1..n as u32 {
                        if it.next().unwrap() {
                            g.add_edge(VertexId(a), VertexId(b)).unwrap();
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn bgvd_matches_oracle(g in simple_graph(10), k in 0usize..4) {
            let (opt, _) = brute_min_bvd(&g).unwrap();
            let got = solve_bgvd(&g, k).unwrap();
            prop_assert_eq!(got.is_some(), opt <= k);
            if let Some(s) = got {
                prop_assert_eq!(s.len(), opt);
                prop_assert!(is_block_graph(&g.without(&s)));
            }
        }

        #[test]
        fn clique_incidence_forest_iff_block(g in simple_graph(10), pick in any::<u16>()) {
            prop_assume!(find_small_obstruction(&g).is_none());
            let h = build_clique_incidence(&g).unwrap();
            let s: BTreeSet<VertexId> = g.vertices().filter(|v| pick >> v.0 & 1 == 1).collect();
            prop_assert_eq!(is_block_graph(&g.without(&s)), h.graph.graph.without(&s).is_forest());
        }
    }
}
