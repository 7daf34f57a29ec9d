//! Approximations: a local-ratio factor-2 weighted feedback vertex set and
//! the factor-4 block graph vertex deletion built on it.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::bgvd::{build_clique_incidence, BgvdError};
use crate::graph::{MultiGraph, VertexId, Weight, WeightedGraph};
use crate::obstruction::{find_small_obstruction, pack_disjoint_obstructions, Obstruction, PackMode};

fn strip_low_degree(g: &mut MultiGraph) {
    loop {
        let low: Vec<VertexId> = g.vertices().filter(|v| g.degree(*v) <= 1).collect();
        if low.is_empty() {
            return;
        }
        for v in low {
            g.remove_vertex(v).unwrap();
        }
    }
}

/// A cycle in which every vertex but at most one has degree two. Assumes
/// minimum degree two.
fn semidisjoint_cycle(g: &MultiGraph) -> Option<Vec<VertexId>> {
    if let Some(v) = g.vertices().find(|v| g.loops(*v) > 0) {
        return Some(vec![v]);
    }
    let two: BTreeSet<VertexId> = g.vertices().filter(|v| g.degree(*v) == 2).collect();
    let sub = g.induced(&two);
    for comp in sub.connected_components() {
        let mut outside: Vec<VertexId> = Vec::new();
        for &x in &comp {
            for (y, c) in g.incident(x) {
                if !two.contains(&y) {
                    outside.extend(std::iter::repeat(y).take(c as usize));
                }
            }
        }
        let closed = outside.is_empty() || (outside.len() == 2 && outside[0] == outside[1]);
        if closed {
            let mut cyc: Vec<VertexId> = comp.into_iter().collect();
            if let Some(&u) = outside.first() {
                cyc.push(u);
            }
            return Some(cyc);
        }
    }
    None
}

/// Local-ratio 2-approximation for minimum-weight feedback vertex set.
/// Weights must be nonnegative.
pub fn approx_wfvs_2(wg: &WeightedGraph) -> BTreeSet<VertexId> {
    let mut g = wg.graph.clone();
    let mut w: BTreeMap<VertexId, Weight> = wg.graph.vertices().map(|v| (v, wg.weight(v).clone())).collect();
    let mut stack: Vec<VertexId> = Vec::new();
    loop {
        strip_low_degree(&mut g);
        if g.is_empty() {
            break;
        }
        let zero: Vec<VertexId> = g.vertices().filter(|v| w[v].is_zero()).collect();
        if !zero.is_empty() {
            for v in zero {
                g.remove_vertex(v).unwrap();
                stack.push(v);
            }
            continue;
        }
        if let Some(cyc) = semidisjoint_cycle(&g) {
            let delta = cyc.iter().map(|v| w[v].clone()).min().unwrap();
            for v in &cyc {
                let x = w.get_mut(v).unwrap();
                *x -= &delta;
            }
        } else {
            let scale = |v: &VertexId| Weight::from_integer((g.degree(*v) as i64 - 1).into());
            let gamma = g.vertices().map(|v| &w[&v] / scale(&v)).min().unwrap();
            for v in g.vertices() {
                let x = w.get_mut(&v).unwrap();
                *x -= &gamma * scale(&v);
            }
        }
    }
    let mut sol: BTreeSet<VertexId> = stack.iter().copied().collect();
    for v in stack.into_iter().rev() {
        sol.remove(&v);
        if !wg.graph.without(&sol).is_forest() {
            sol.insert(v);
        }
    }
    debug_assert!(wg.graph.without(&sol).is_forest());
    sol
}

/// Parts of the factor-4 solution.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub packing: Vec<Obstruction>,
    pub packed: BTreeSet<VertexId>,
    pub rest: BTreeSet<VertexId>,
    pub solution: BTreeSet<VertexId>,
}

/// Block vertex deletion set of size at most four times the optimum.
pub fn approx_bgvd_4_detailed(g: &MultiGraph) -> Result<Approximation, BgvdError> {
    g.check_simple()?;
    let packing = pack_disjoint_obstructions(g, usize::MAX, PackMode::SmallOnly);
    let packed: BTreeSet<VertexId> = packing.iter().flat_map(|o| o.vertices.iter().copied()).collect();
    let rest_graph = g.without(&packed);
    assert!(find_small_obstruction(&rest_graph).is_none(), "small-obstruction packing is not maximal");
    let ghat = build_clique_incidence(&rest_graph)?;
    let rest = approx_wfvs_2(&ghat.graph);
    if let Some(c) = rest.iter().find(|v| ghat.is_clique_vertex(**v)) {
        return Err(BgvdError::CliqueVertexInSolution(*c));
    }
    let solution = packed.union(&rest).copied().collect();
    Ok(Approximation { packing, packed, rest, solution })
}

pub fn approx_bgvd_4(g: &MultiGraph) -> Result<BTreeSet<VertexId>, BgvdError> {
    approx_bgvd_4_detailed(g).map(|a| a.solution)
}
