//! The q-expansion lemma, constructively: match q copies of every X vertex
//! into Y, peel off everything reachable from an unmatched copy along
//! alternating paths, and repeat until the matching saturates all copies.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::matching::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("|Y| = {y} is smaller than q|X| = {need}")]
    TooFewY { y: usize, need: usize },
    #[error("Y vertex {0} has no neighbour in X")]
    IsolatedY(usize),
    #[error("X is empty")]
    EmptyX,
}

/// Result of the lemma: `assignment` maps every vertex of `x` to its `q`
/// private partners in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub x: BTreeSet<usize>,
    pub y: BTreeSet<usize>,
    pub assignment: BTreeMap<usize, Vec<usize>>,
}

/// `adj[i]` lists the X-neighbours of Y vertex `i`; X vertices are
/// `0..x_count`.
pub fn expansion(q: usize, x_count: usize, adj: &[Vec<usize>]) -> Result<Expansion, ExpansionError> {
    if x_count == 0 {
        return Err(ExpansionError::EmptyX);
    }
    if adj.len() < q * x_count {
        return Err(ExpansionError::TooFewY { y: adj.len(), need: q * x_count });
    }
    if let Some(i) = adj.iter().position(|a| a.is_empty()) {
        return Err(ExpansionError::IsolatedY(i));
    }
    let mut xs: BTreeSet<usize> = (0..x_count).collect();
    let mut ys: BTreeSet<usize> = (0..adj.len()).collect();
    loop {
        let mut b: UnGraph<(), ()> = UnGraph::new_undirected();
        let mut copy_of: BTreeMap<NodeIndex, usize> = BTreeMap::new();
        let mut xnodes: BTreeMap<usize, Vec<NodeIndex>> = BTreeMap::new();
        for &x in &xs {
            let nodes: Vec<NodeIndex> = (0..q).map(|_| b.add_node(())).collect();
            for n in &nodes {
                copy_of.insert(*n, x);
            }
            xnodes.insert(x, nodes);
        }
        let mut ynode: BTreeMap<usize, NodeIndex> = BTreeMap::new();
        let mut y_of: BTreeMap<NodeIndex, usize> = BTreeMap::new();
        for &y in &ys {
            let n = b.add_node(());
            ynode.insert(y, n);
            y_of.insert(n, y);
            for x in adj[y].iter().filter(|x| xs.contains(x)) {
                for c in &xnodes[x] {
                    b.add_edge(*c, n, ());
                }
            }
        }
        let m = maximum_matching(&b);
        let unmatched: Vec<NodeIndex> = copy_of.keys().copied().filter(|c| m.mate(*c).is_none()).collect();
        if unmatched.is_empty() {
            let mut assignment: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (c, x) in &copy_of {
                assignment.entry(*x).or_default().push(y_of[&m.mate(*c).unwrap()]);
            }
            for v in assignment.values_mut() {
                v.sort();
            }
            return Ok(Expansion { x: xs, y: ys, assignment });
        }
        // Alternating reachability: X copy -> any Y neighbour -> its mate.
        let mut reach_x: BTreeSet<usize> = BTreeSet::new();
        let mut reach_y: BTreeSet<usize> = BTreeSet::new();
        let mut stack = unmatched;
        let mut seen: BTreeSet<NodeIndex> = stack.iter().copied().collect();
        while let Some(c) = stack.pop() {
            reach_x.insert(copy_of[&c]);
            for yn in b.neighbors(c) {
                if reach_y.insert(y_of[&yn]) {
                    if let Some(mate) = m.mate(yn) {
                        if seen.insert(mate) {
                            stack.push(mate);
                        }
                    }
                }
            }
        }
        for x in &reach_x {
            xs.remove(x);
        }
        for y in &reach_y {
            ys.remove(y);
        }
        debug_assert!(ys.iter().all(|y| adj[*y].iter().any(|x| xs.contains(x))));
        debug_assert!(!xs.is_empty());
    }
}
