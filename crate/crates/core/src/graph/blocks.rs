use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Dense, MultiGraph, UnionFind, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    /// At most one cut vertex.
    Leaf,
    /// Exactly two cut vertices.
    DegreeTwo,
    /// Three or more cut vertices.
    Higher,
}

/// Blocks and cut vertices of a graph. Isolated vertices form singleton
/// blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockCutForest {
    pub blocks: Vec<BTreeSet<VertexId>>,
    pub cut_vertices: BTreeSet<VertexId>,
    /// `(cut vertex, block index)` pairs.
    pub incidence: Vec<(VertexId, usize)>,
    pub kinds: Vec<BlockKind>,
}

impl BlockCutForest {
    /// Checks that the bipartite cut-vertex/block incidence graph is a forest.
    pub fn incidence_is_acyclic(&self) -> bool {
        // Blocks get ids above every cut vertex id to keep the two sides apart.
        let offset = self
            .cut_vertices
            .iter()
            .map(|v| v.0 + 1)
            .max()
            .unwrap_or(0);
        let nodes = self
            .cut_vertices
            .iter()
            .copied()
            .chain((0..self.blocks.len()).map(|i| VertexId(offset + i as u32)));
        let mut uf = UnionFind::new(nodes);
        self.incidence
            .iter()
            .all(|&(c, b)| uf.union(c, VertexId(offset + b as u32)))
    }

    pub fn count(&self, kind: BlockKind) -> usize {
        self.kinds.iter().filter(|k| **k == kind).count()
    }

    /// Vertices of `block` that are not cut vertices.
    pub fn internal(&self, block: usize) -> BTreeSet<VertexId> {
        self.blocks[block]
            .iter()
            .copied()
            .filter(|v| !self.cut_vertices.contains(v))
            .collect()
    }
}

pub(super) fn block_cut_forest(g: &MultiGraph) -> BlockCutForest {
    let d = Dense::new(g);
    let n = d.len();
    const NONE: usize = usize::MAX;
    let mut disc = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut raw: Vec<BTreeSet<usize>> = Vec::new();

    for root in 0..n {
        if disc[root] != NONE {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        if d.adj[root].is_empty() {
            raw.push(BTreeSet::from([root]));
            continue;
        }
        // Frames are (vertex, parent, next neighbour position).
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, NONE, 0)];
        while let Some(top) = frames.last_mut() {
            let (v, parent, pos) = *top;
            if pos < d.adj[v].len() {
                top.2 += 1;
                let w = d.adj[v][pos];
                if w == parent {
                    continue;
                }
                if disc[w] == NONE {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut comp = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.insert(a);
                            comp.insert(b);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        raw.push(comp);
                    }
                }
            }
        }
    }

    let mut blocks: Vec<BTreeSet<VertexId>> = raw
        .into_iter()
        .map(|b| b.into_iter().map(|i| d.ids[i]).collect())
        .collect();
    blocks.sort();

    let mut membership: BTreeMap<VertexId, usize> = BTreeMap::new();
    for b in &blocks {
        for v in b {
            *membership.entry(*v).or_insert(0) += 1;
        }
    }
    let cut_vertices: BTreeSet<VertexId> = membership
        .into_iter()
        .filter(|(_, c)| *c >= 2)
        .map(|(v, _)| v)
        .collect();
    let mut incidence = Vec::new();
    let mut kinds = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let cuts = b.iter().filter(|v| cut_vertices.contains(v)).count();
        for v in b.iter().filter(|v| cut_vertices.contains(v)) {
            incidence.push((*v, i));
        }
        kinds.push(match cuts {
            0 | 1 => BlockKind::Leaf,
            2 => BlockKind::DegreeTwo,
            _ => BlockKind::Higher,
        });
    }
    BlockCutForest {
        blocks,
        cut_vertices,
        incidence,
        kinds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> BTreeSet<VertexId> {
        xs.iter().map(|&x| VertexId(x)).collect()
    }

    #[test]
    fn bowtie() {
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let f = g.block_cut_forest();
        assert_eq!(f.blocks, vec![set(&[0, 1, 2]), set(&[2, 3, 4])]);
        assert_eq!(f.cut_vertices, set(&[2]));
        assert_eq!(f.count(BlockKind::Leaf), 2);
    }

    #[test]
    fn cycle_is_one_block() {
        let g = MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let f = g.block_cut_forest();
        assert_eq!(f.blocks.len(), 1);
        assert!(f.cut_vertices.is_empty());
    }

    #[test]
    fn path_p4() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let f = g.block_cut_forest();
        assert_eq!(f.blocks.len(), 3);
        assert_eq!(f.cut_vertices, set(&[1, 2]));
        assert_eq!(f.count(BlockKind::DegreeTwo), 1);
        assert!(f.incidence_is_acyclic());
    }

    #[test]
    fn multiplicities_and_loops_are_ignored() {
        let mut g = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]);
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        g.add_edge(VertexId(2), VertexId(2)).unwrap();
        let f = g.block_cut_forest();
        assert_eq!(f.blocks, vec![set(&[0, 1]), set(&[1, 2])]);
    }

    #[test]
    fn isolated_vertices_are_singleton_blocks() {
        let g = MultiGraph::from_edges(3, &[(0, 1)]);
        let f = g.block_cut_forest();
        assert_eq!(f.blocks, vec![set(&[0, 1]), set(&[2])]);
    }
}
