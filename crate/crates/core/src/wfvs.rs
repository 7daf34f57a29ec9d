//! Exact weighted feedback vertex set: iterative compression around a
//! disjoint solver that reduces, branches on leaves of the free forest and
//! finishes with a matroid-parity base case.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::graph::{MultiGraph, UnionFind, VertexId, Weight, WeightedGraph};
use crate::parity::{build_parity_instance, lift_solution, solve_parity_bounded, ParityError};

/// Golden ratio rounded as in the leaf bound 1.618^(2k+2).
pub const PHI: f64 = 1.618;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WfvsError {
    #[error("vertex {0} has a negative weight")]
    NegativeWeight(VertexId),
    #[error("matroid parity base case failed: {0}")]
    Parity(#[from] ParityError),
}

/// A feedback vertex set with its exact weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub set: BTreeSet<VertexId>,
    pub weight: Weight,
}

impl Solution {
    fn empty() -> Self {
        Solution { set: BTreeSet::new(), weight: Weight::zero() }
    }

    /// Weight, then size, then the sorted vertex list.
    pub fn cmp_key(&self, other: &Solution) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then(self.set.len().cmp(&other.set.len()))
            .then_with(|| self.set.iter().cmp(other.set.iter()))
    }

    fn union(&self, other: &Solution) -> Solution {
        Solution {
            set: self.set.union(&other.set).copied().collect(),
            weight: &self.weight + &other.weight,
        }
    }
}

fn keep_better(best: &mut Option<Solution>, cand: Solution) {
    if best.as_ref().map_or(true, |b| cand.cmp_key(b) == Ordering::Less) {
        *best = Some(cand);
    }
}

/// State of the disjoint problem: find `X` avoiding `retained` with
/// `|X| <= k` and `G - X` a forest.
#[derive(Clone, Debug)]
pub struct DisjointInstance {
    pub graph: WeightedGraph,
    pub retained: BTreeSet<VertexId>,
    pub k: usize,
    /// Vertices already forced into the solution by the reductions.
    pub taken: Solution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measure {
    pub k: usize,
    pub rho: usize,
    pub eta: usize,
    pub tau: usize,
}

impl Measure {
    pub fn value(&self) -> i64 {
        self.k as i64 + self.rho as i64 - (self.eta + self.tau) as i64
    }
}

/// Which reduction fired last, for tracing and tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    LowDegree,
    Forced,
    Multiplicity,
    Subdivide,
}

/// Outcome of exhaustive reduction.
#[derive(Clone, Debug)]
pub enum Reduced {
    Instance(DisjointInstance, Vec<Reduction>),
    No,
}

impl DisjointInstance {
    pub fn new(graph: WeightedGraph, retained: BTreeSet<VertexId>, k: usize) -> Self {
        DisjointInstance { graph, retained, k, taken: Solution::empty() }
    }

    fn g(&self) -> &MultiGraph {
        &self.graph.graph
    }

    pub fn free_vertices(&self) -> Vec<VertexId> {
        self.g().vertices().filter(|v| !self.retained.contains(v)).collect()
    }

    fn in_r(&self, v: VertexId) -> bool {
        self.retained.contains(&v)
    }

    /// Degree inside the free forest `F = G - R`.
    fn free_degree(&self, v: VertexId) -> u32 {
        self.g()
            .incident(v)
            .filter(|(u, _)| !self.in_r(*u))
            .map(|(_, c)| c)
            .sum::<u32>()
            + 2 * self.g().loops(v)
    }

    /// Degree two, both edge ends in R.
    pub fn is_nice(&self, v: VertexId) -> bool {
        !self.in_r(v) && self.g().degree(v) == 2 && self.g().loops(v) == 0 && self.free_degree(v) == 0
    }

    /// Degree three, all edge ends in R.
    pub fn is_tent(&self, v: VertexId) -> bool {
        !self.in_r(v) && self.g().degree(v) == 3 && self.g().loops(v) == 0 && self.free_degree(v) == 0
    }

    pub fn retained_is_forest(&self) -> bool {
        self.g().induced(&self.retained).is_forest()
    }

    fn retained_components(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.retained.iter().copied());
        for (u, v, _) in self.g().induced(&self.retained).edges() {
            uf.union(u, v);
        }
        uf
    }

    pub fn measure(&self) -> Measure {
        let rho = self.g().induced(&self.retained).connected_components().len();
        let free = self.free_vertices();
        Measure {
            k: self.k,
            rho,
            eta: free.iter().filter(|v| self.is_nice(**v)).count(),
            tau: free.iter().filter(|v| self.is_tent(**v)).count(),
        }
    }

    /// `G[R + v]` has a cycle.
    fn closes_cycle(&self, v: VertexId, uf: &mut UnionFind) -> bool {
        if self.g().loops(v) > 0 {
            return true;
        }
        let mut roots = BTreeSet::new();
        for (u, c) in self.g().incident(v) {
            if self.in_r(u) && (c >= 2 || !roots.insert(uf.find(u))) {
                return true;
            }
        }
        false
    }

    fn delete(&mut self, v: VertexId) {
        self.graph = self.graph.without(&[v]);
        self.retained.remove(&v);
    }

    /// One application of the lowest-numbered applicable rule.
    fn reduce_once(&mut self) -> Option<Result<Reduction, ()>> {
        let low = self.g().vertices().find(|v| self.g().degree(*v) <= 1);
        if let Some(v) = low {
            self.delete(v);
            return Some(Ok(Reduction::LowDegree));
        }
        let mut uf = self.retained_components();
        if let Some(v) = self.free_vertices().into_iter().find(|v| self.closes_cycle(*v, &mut uf)) {
            if self.k == 0 {
                return Some(Err(()));
            }
            self.taken.set.insert(v);
            self.taken.weight += self.graph.weight(v);
            self.k -= 1;
            self.delete(v);
            return Some(Ok(Reduction::Forced));
        }
        let heavy = self.g().edges().find(|(_, _, c)| *c > 2);
        if let Some((u, v, _)) = heavy {
            self.graph.graph.set_multiplicity(u, v, 2).unwrap();
            return Some(Ok(Reduction::Multiplicity));
        }
        for x in self.free_vertices() {
            let free_nbrs: Vec<(VertexId, u32)> = self.g().incident(x).filter(|(u, _)| !self.in_r(*u)).collect();
            let r_edges: u32 = self.g().incident(x).filter(|(u, _)| self.in_r(*u)).map(|(_, c)| c).sum();
            if free_nbrs.len() == 1 && free_nbrs[0].1 == 1 && r_edges <= 2 && self.g().loops(x) == 0 {
                let y = free_nbrs[0].0;
                let g = &mut self.graph.graph;
                g.remove_edge(x, y).unwrap();
                let star = g.add_vertex();
                g.add_edge(x, star).unwrap();
                g.add_edge(star, y).unwrap();
                self.graph.set_weight(star, Weight::from_integer(1.into()));
                self.retained.insert(star);
                return Some(Ok(Reduction::Subdivide));
            }
        }
        None
    }
}

/// Applies the reductions to a fixpoint, lowest-numbered rule first.
pub fn reduce_disjoint(inst: &DisjointInstance) -> Reduced {
    let mut cur = inst.clone();
    let mut log = Vec::new();
    loop {
        let before = cur.measure().value();
        match cur.reduce_once() {
            None => return Reduced::Instance(cur, log),
            Some(Err(())) => return Reduced::No,
            Some(Ok(r)) => {
                debug_assert!(cur.measure().value() <= before, "rule {r:?} increased the measure");
                log.push(r);
            }
        }
    }
}

/// A disjoint instance pruned by the measure, kept for offline checking.
#[derive(Clone, Debug)]
pub struct PrunedInstance {
    pub graph: MultiGraph,
    pub retained: BTreeSet<VertexId>,
    pub k: usize,
    pub measure: i64,
}

/// Counters collected across one solver run.
#[derive(Clone, Debug, Default)]
pub struct WfvsStats {
    pub disjoint_calls: usize,
    pub nodes: usize,
    pub leaves: usize,
    pub measure_prunes: usize,
    pub base_cases: usize,
    pub max_base_pairs: usize,
    /// Largest leaf count of a single disjoint call divided by
    /// 1.618^(2k+2) for that call's budget.
    pub max_leaf_ratio: f64,
    /// Disjoint calls whose leaves exceeded 1.618^(2k+2).
    pub leaf_bound_exceeded: usize,
    pub pruned: Vec<PrunedInstance>,
}

#[derive(Clone, Debug, Default)]
pub struct WfvsOptions {
    /// Keep up to this many measure-pruned instances whose free part has at
    /// most `record_max_free` vertices.
    pub record_pruned: usize,
    pub record_max_free: usize,
}

struct Ctx<'a> {
    stats: &'a mut WfvsStats,
    opts: &'a WfvsOptions,
    leaves: usize,
    best: Option<Solution>,
    bound: Option<Weight>,
}

impl Ctx<'_> {
    fn leaf(&mut self) {
        self.leaves += 1;
        self.stats.leaves += 1;
    }

    fn hopeless(&self, taken: &Weight) -> bool {
        let over_best = self.best.as_ref().map_or(false, |b| *taken > b.weight);
        let over_bound = self.bound.as_ref().map_or(false, |b| taken > b);
        over_best || over_bound
    }
}

fn search(inst: DisjointInstance, ctx: &mut Ctx) -> Result<(), WfvsError> {
    ctx.stats.nodes += 1;
    if ctx.hopeless(&inst.taken.weight) || !inst.retained_is_forest() {
        ctx.leaf();
        return Ok(());
    }
    let inst = match reduce_disjoint(&inst) {
        Reduced::No => {
            ctx.leaf();
            return Ok(());
        }
        Reduced::Instance(i, _) => i,
    };
    if ctx.hopeless(&inst.taken.weight) {
        ctx.leaf();
        return Ok(());
    }
    let mu = inst.measure();
    if mu.value() < 0 {
        ctx.leaf();
        ctx.stats.measure_prunes += 1;
        let free = inst.free_vertices().len();
        if ctx.stats.pruned.len() < ctx.opts.record_pruned && free <= ctx.opts.record_max_free {
            ctx.stats.pruned.push(PrunedInstance {
                graph: inst.graph.graph.clone(),
                retained: inst.retained.clone(),
                k: inst.k,
                measure: mu.value(),
            });
        }
        return Ok(());
    }
    let free = inst.free_vertices();
    let pick = free
        .iter()
        .copied()
        .find(|v| !inst.is_nice(*v) && !inst.is_tent(*v) && inst.free_degree(*v) <= 1);
    let Some(v) = pick else {
        // Every free vertex is nice or a tent.
        debug_assert!(free.iter().all(|v| inst.is_nice(*v) || inst.is_tent(*v)));
        ctx.leaf();
        ctx.stats.base_cases += 1;
        ctx.stats.max_base_pairs = ctx.stats.max_base_pairs.max(free.len());
        assert!(
            free.len() as i64 <= inst.k as i64 + mu.rho as i64,
            "base case with {} pairs exceeds k + rho = {}",
            free.len(),
            inst.k + mu.rho
        );
        let pi = build_parity_instance(&inst.graph, &inst.retained)?;
        if let Some(chosen) = solve_parity_bounded(&pi, inst.k) {
            let (set, weight) = lift_solution(&pi, &chosen);
            debug_assert_eq!(weight, inst.graph.total(&set));
            let full = inst.taken.union(&Solution { set, weight });
            if ctx.bound.as_ref().map_or(true, |b| full.weight <= *b) {
                keep_better(&mut ctx.best, full);
            }
        }
        return Ok(());
    };
    let r_nbrs = inst.g().incident(v).filter(|(u, _)| inst.in_r(*u)).count();
    assert!(r_nbrs >= 3, "branching vertex {v} has only {r_nbrs} retained neighbours");

    if inst.k >= 1 {
        let mut take = inst.clone();
        take.taken.set.insert(v);
        take.taken.weight += inst.graph.weight(v);
        take.k -= 1;
        take.delete(v);
        debug_assert!(take.measure().value() <= mu.value() - 1);
        search(take, ctx)?;
    } else {
        ctx.stats.nodes += 1;
        ctx.leaf();
    }
    let mut keep = inst;
    keep.retained.insert(v);
    debug_assert!(keep.measure().value() <= mu.value() - 2);
    search(keep, ctx)
}

/// Minimum-weight `X` avoiding `R` with `|X| <= k` leaving a forest; `bound`
/// discards solutions heavier than it.
pub fn solve_disjoint_with(
    inst: &DisjointInstance,
    bound: Option<Weight>,
    stats: &mut WfvsStats,
    opts: &WfvsOptions,
) -> Result<Option<Solution>, WfvsError> {
    if let Some(v) = inst.graph.weights().iter().find(|(_, w)| **w < Weight::zero()).map(|(v, _)| *v) {
        return Err(WfvsError::NegativeWeight(v));
    }
    stats.disjoint_calls += 1;
    let mut ctx = Ctx { stats, opts, leaves: 0, best: None, bound };
    search(inst.clone(), &mut ctx)?;
    let ceiling = PHI.powi(2 * inst.k as i32 + 2);
    let ratio = ctx.leaves as f64 / ceiling;
    if ratio > ctx.stats.max_leaf_ratio {
        ctx.stats.max_leaf_ratio = ratio;
    }
    if ctx.leaves as f64 > ceiling {
        ctx.stats.leaf_bound_exceeded += 1;
    }
    Ok(ctx.best)
}

pub fn solve_disjoint(inst: &DisjointInstance) -> Result<Option<Solution>, WfvsError> {
    solve_disjoint_with(inst, None, &mut WfvsStats::default(), &WfvsOptions::default())
}

/// Visits subsets of `items` by increasing size.
fn subsets_by_size(items: &[VertexId], max: usize) -> Vec<BTreeSet<VertexId>> {
    let mut out = Vec::new();
    for size in 0..=max.min(items.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| items[i]).collect());
            let mut i = size;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if idx[i] < items.len() - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break true;
                }
            };
            if !advanced {
                break;
            }
        }
    }
    out
}

/// Best solution over all guesses `Y` of the part of the optimum inside `r`.
fn compress(
    g: &WeightedGraph,
    r: &BTreeSet<VertexId>,
    k: usize,
    first_only: bool,
    stats: &mut WfvsStats,
    opts: &WfvsOptions,
) -> Result<Option<Solution>, WfvsError> {
    let items: Vec<VertexId> = r.iter().copied().collect();
    let mut best: Option<Solution> = None;
    for y in subsets_by_size(&items, k) {
        let wy = g.total(&y);
        if best.as_ref().map_or(false, |b| wy > b.weight) {
            continue;
        }
        let rest: BTreeSet<VertexId> = r.difference(&y).copied().collect();
        if !g.graph.induced(&rest).is_forest() {
            continue;
        }
        let inst = DisjointInstance::new(g.without(&y), rest, k - y.len());
        let bound = best.as_ref().map(|b| &b.weight - &wy);
        if let Some(x) = solve_disjoint_with(&inst, bound, stats, opts)? {
            let cand = x.union(&Solution { set: y, weight: wy });
            keep_better(&mut best, cand);
            if first_only {
                break;
            }
        }
    }
    Ok(best)
}

/// Minimum-weight feedback vertex set of size at most `k`, or `None`.
pub fn solve_wfvs_with(
    g: &WeightedGraph,
    k: usize,
    stats: &mut WfvsStats,
    opts: &WfvsOptions,
) -> Result<Option<Solution>, WfvsError> {
    if let Some(v) = g.weights().iter().find(|(_, w)| **w < Weight::zero()).map(|(v, _)| *v) {
        return Err(WfvsError::NegativeWeight(v));
    }
    if g.graph.is_forest() {
        return Ok(Some(Solution::empty()));
    }
    let order: Vec<VertexId> = g.graph.vertices().collect();
    let mut s: BTreeSet<VertexId> = BTreeSet::new();
    let mut prefix: BTreeSet<VertexId> = BTreeSet::new();
    for (i, &v) in order.iter().enumerate() {
        prefix.insert(v);
        let last = i + 1 == order.len();
        let gi = g.induced(&prefix);
        if !last {
            if gi.graph.without(&s).is_forest() {
                continue;
            }
            let mut r = s.clone();
            r.insert(v);
            if r.len() <= k {
                s = r;
                continue;
            }
            match compress(&gi, &r, k, true, stats, opts)? {
                Some(sol) => s = sol.set,
                None => return Ok(None),
            }
        } else {
            let mut r = s.clone();
            r.insert(v);
            return compress(&gi, &r, k, false, stats, opts);
        }
    }
    unreachable!("the loop returns at the last vertex")
}

pub fn solve_wfvs(g: &WeightedGraph, k: usize) -> Result<Option<Solution>, WfvsError> {
    solve_wfvs_with(g, k, &mut WfvsStats::default(), &WfvsOptions::default())
}
