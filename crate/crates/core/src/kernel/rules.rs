//! The six reduction rules. Each `ruleN` looks for its lowest-id witness
//! and returns the trace entry that applies it, or a No verdict.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{MultiGraph, VertexId};
use crate::obstruction::{apath_packing, is_block_graph, pack_disjoint_obstructions, Obstruction, PackMode};

use super::expansion::expansion;
use super::structure::{compute_sv, neighbourhood_split, structure_at, StructureResult};
use super::trace::{apply_op, Op, TraceEntry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Apply(TraceEntry),
    No { rule: u8, witness: Vec<Obstruction> },
}

fn entry(rule: u8, k: usize, k_after: usize, ops: Vec<Op>, witness: Vec<VertexId>, detail: &str) -> Outcome {
    Outcome::Apply(TraceEntry { rule, k_before: k, k_after, ops, witness, detail: detail.to_string() })
}

fn sorted(s: &BTreeSet<VertexId>) -> Vec<VertexId> {
    s.iter().copied().collect()
}

/// Remove a connected component that is a block graph.
pub fn rule1(g: &MultiGraph, k: usize) -> Option<Outcome> {
    g.connected_components()
        .into_iter()
        .find(|c| is_block_graph(&g.induced(c)))
        .map(|c| entry(1, k, k, vec![Op::RemoveVertices(sorted(&c))], sorted(&c), "block component"))
}

/// Remove a component `H` of `G - v` with `G[{v} + H]` a connected block
/// graph.
pub fn rule2(g: &MultiGraph, k: usize) -> Option<Outcome> {
    for v in g.vertices() {
        let h = g.without(&[v]);
        for comp in h.connected_components() {
            if !comp.iter().any(|u| g.has_edge(*u, v)) {
                continue;
            }
            let mut with_v = comp.clone();
            with_v.insert(v);
            if is_block_graph(&g.induced(&with_v)) {
                let mut witness = vec![v];
                witness.extend(comp.iter().copied());
                return Some(entry(2, k, k, vec![Op::RemoveVertices(sorted(&comp))], witness, "pendant block graph"));
            }
        }
    }
    None
}

/// Shrink a true-twin class to `k + 2` vertices. With only `k + 1` kept, a
/// solution could delete all but one twin, and that twin may be a cut
/// vertex; two surviving twins in a block graph are always simplicial.
pub fn rule3(g: &MultiGraph, k: usize) -> Option<Outcome> {
    let classes = g.true_twin_classes().ok()?;
    let class = classes.into_iter().find(|c| c.len() > k + 2)?;
    let drop: Vec<VertexId> = class.iter().copied().skip(k + 2).collect();
    Some(entry(3, k, k, vec![Op::RemoveVertices(drop)], sorted(&class), "twin class"))
}

/// The sets of an induced-path gadget `t1 t2 t3 t4` with cliques `S1`,
/// `S2`, `S3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathGadget {
    pub t: [VertexId; 4],
    pub s: [BTreeSet<VertexId>; 3],
}

fn is_clique(g: &MultiGraph, s: &BTreeSet<VertexId>) -> bool {
    s.iter().all(|a| s.range(*a..).skip(1).all(|b| g.has_edge(*a, *b)))
}

/// Checks both gadget conditions literally.
pub fn is_path_gadget(g: &MultiGraph, p: &PathGadget) -> bool {
    let t = p.t;
    let ts: BTreeSet<VertexId> = t.iter().copied().collect();
    if ts.len() != 4 || t.iter().any(|x| !g.contains(*x)) {
        return false;
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if g.has_edge(t[i], t[j]) != (j == i + 1) {
                return false;
            }
        }
    }
    for (i, s) in p.s.iter().enumerate() {
        if s.iter().any(|x| ts.contains(x) || !g.contains(*x)) || !is_clique(g, s) {
            return false;
        }
        let ends = BTreeSet::from([t[i], t[i + 1]]);
        for &x in s {
            let outside: BTreeSet<VertexId> = g.neighbor_set(x).difference(s).copied().collect();
            if outside != ends {
                return false;
            }
        }
    }
    for i in 1..3 {
        let mut want: BTreeSet<VertexId> = BTreeSet::from([t[i - 1], t[i + 1]]);
        want.extend(p.s[i - 1].iter().copied());
        want.extend(p.s[i].iter().copied());
        if g.neighbor_set(t[i]) != want {
            return false;
        }
    }
    true
}

pub fn find_path_gadget(g: &MultiGraph) -> Option<PathGadget> {
    for (t2, t3, _) in g.edges() {
        for (t2, t3) in [(t2, t3), (t3, t2)] {
            if t2 == t3 {
                continue;
            }
            let n2 = g.neighbor_set(t2);
            let n3 = g.neighbor_set(t3);
            let s2: BTreeSet<VertexId> = n2.intersection(&n3).copied().collect();
            let only2: Vec<VertexId> = n2.iter().copied().filter(|x| *x != t3 && !n3.contains(x)).collect();
            let only3: Vec<VertexId> = n3.iter().copied().filter(|x| *x != t2 && !n2.contains(x)).collect();
            for &t1 in &only2 {
                for &t4 in &only3 {
                    if t1 == t4 || g.has_edge(t1, t4) {
                        continue;
                    }
                    let s1 = only2.iter().copied().filter(|x| *x != t1).collect();
                    let s3 = only3.iter().copied().filter(|x| *x != t4).collect();
                    let p = PathGadget { t: [t1, t2, t3, t4], s: [s1, s2.clone(), s3] };
                    if is_path_gadget(g, &p) {
                        return Some(p);
                    }
                }
            }
        }
    }
    None
}

/// Entry removing `S2` and contracting `t2 t3` for a verified gadget.
pub fn rule4_apply(g: &MultiGraph, k: usize, p: &PathGadget) -> Outcome {
    debug_assert!(is_path_gadget(g, p));
    let s2 = sorted(&p.s[1]);
    let rest = g.without(&s2);
    let merged = rest.next_id();
    let mut witness = p.t.to_vec();
    for s in &p.s {
        witness.extend(s.iter().copied());
    }
    let ops = vec![Op::RemoveVertices(s2), Op::Contract { u: p.t[1], v: p.t[2], merged }];
    entry(4, k, k, ops, witness, "induced path gadget")
}

pub fn rule4(g: &MultiGraph, k: usize) -> Option<Outcome> {
    find_path_gadget(g).map(|p| rule4_apply(g, k, &p))
}

/// Many disjoint `N(v)`-paths outside `G[N(v)]` force `v` into every small
/// solution.
pub fn rule5(g: &MultiGraph, k: usize) -> Option<Outcome> {
    let need = 2 * k + 1;
    for v in g.vertices() {
        let nbrs = g.neighbor_set(v);
        if nbrs.len() < 2 * need {
            continue;
        }
        let packing = apath_packing(&neighbourhood_split(g, v), &nbrs, need);
        if packing.len() < need {
            continue;
        }
        let disjoint = pack_disjoint_obstructions(g, k + 1, PackMode::Free);
        if disjoint.len() > k {
            return Some(Outcome::No { rule: 5, witness: disjoint });
        }
        assert!(k >= 1, "an N(v)-path at k = 0 implies an obstruction");
        let witness = std::iter::once(v).chain(packing.vertices()).collect();
        return Some(entry(5, k, k - 1, vec![Op::RemoveVertices(vec![v])], witness, "neighbourhood paths"));
    }
    None
}

/// Components of `G - (S_v + v)` touching `v`, in order of their least
/// vertex.
pub fn components_at(g: &MultiGraph, v: VertexId, s_v: &BTreeSet<VertexId>) -> Vec<BTreeSet<VertexId>> {
    let mut removed = s_v.clone();
    removed.insert(v);
    g.without(&removed)
        .connected_components()
        .into_iter()
        .filter(|c| c.iter().any(|u| g.has_edge(*u, v)))
        .collect()
}

/// Applies the component-degree rule at `v` with the given `S_v`, if
/// `|C_v| > 3 |S_v|`.
pub fn rule6_apply(g: &MultiGraph, k: usize, v: VertexId, s_v: &BTreeSet<VertexId>) -> Option<Outcome> {
    if s_v.is_empty() || s_v.contains(&v) {
        return None;
    }
    let comps = components_at(g, v, s_v);
    if comps.len() <= 3 * s_v.len() {
        return None;
    }
    let xs: Vec<VertexId> = sorted(s_v);
    let index: BTreeMap<VertexId, usize> = xs.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let mut ys: Vec<usize> = Vec::new();
    let mut adj: Vec<Vec<usize>> = Vec::new();
    for (ci, c) in comps.iter().enumerate() {
        let mut a: BTreeSet<usize> = BTreeSet::new();
        for u in c {
            for w in g.neighbors(*u) {
                if let Some(&i) = index.get(&w) {
                    a.insert(i);
                }
            }
        }
        if !a.is_empty() {
            ys.push(ci);
            adj.push(a.into_iter().collect());
        }
    }
    if ys.len() < 3 * xs.len() {
        return None;
    }
    let e = expansion(3, xs.len(), &adj).expect("preconditions checked");
    let mut cut: Vec<(VertexId, VertexId)> = Vec::new();
    for &yi in &e.y {
        for u in &comps[ys[yi]] {
            if g.has_edge(*u, v) {
                cut.push((v, *u));
            }
        }
    }
    let mut ops = vec![Op::RemoveEdges(cut)];
    let mut next = g.next_id().0;
    let selected: Vec<VertexId> = e.x.iter().map(|i| xs[*i]).collect();
    for &s in &selected {
        for _ in 0..2 {
            ops.push(Op::AddPath { from: v, via: VertexId(next), to: s });
            next += 1;
        }
    }
    let mut after = g.clone();
    for op in &ops {
        apply_op(&mut after, op).expect("rule 6 operations apply");
    }
    let left = components_at(&after, v, s_v).len();
    assert!(left < comps.len(), "component degree of {v} did not drop: {} -> {left}", comps.len());
    let witness = std::iter::once(v).chain(selected.iter().copied()).collect();
    Some(entry(6, k, k, ops, witness, "component degree"))
}

/// Scans vertices for the component-degree rule. Vertices in `approx` use a
/// hitting set; the structure finder can also end the instance or force a
/// vertex into the solution.
pub fn rule6(g: &MultiGraph, k: usize, approx: &BTreeSet<VertexId>) -> Option<Outcome> {
    for v in g.vertices() {
        let deg = g.degree(v) as usize;
        let s_v = if !approx.contains(&v) {
            if deg <= 3 * approx.len() {
                continue;
            }
            approx.clone()
        } else {
            if deg <= 3 * (approx.len() - 1) {
                continue;
            }
            match structure_at(g, k, v) {
                StructureResult::DisjointPack(p) => return Some(Outcome::No { rule: 6, witness: p }),
                StructureResult::Flower(_, petals) => {
                    if k == 0 {
                        return Some(Outcome::No { rule: 5, witness: petals });
                    }
                    let witness = petals.iter().flat_map(|o| o.vertices.iter().copied()).collect::<BTreeSet<_>>();
                    let witness = std::iter::once(v).chain(witness.into_iter().filter(|x| *x != v)).collect();
                    return Some(entry(5, k, k - 1, vec![Op::RemoveVertices(vec![v])], witness, "flower"));
                }
                StructureResult::HittingSet(h) => compute_sv(g, approx, v, &h),
            }
        };
        if let Some(out) = rule6_apply(g, k, v, &s_v) {
            return Some(out);
        }
    }
    None
}
