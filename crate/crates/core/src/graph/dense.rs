use std::collections::BTreeMap;

use super::{MultiGraph, VertexId};

/// Index-based simple view of a multigraph: loops dropped, multiplicities
/// collapsed. Indices follow increasing vertex id.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub ids: Vec<VertexId>,
    pub index: BTreeMap<VertexId, usize>,
    pub adj: Vec<Vec<usize>>,
    pub mat: Vec<Vec<bool>>,
}

impl Dense {
    pub fn new(g: &MultiGraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let n = ids.len();
        let mut adj = vec![Vec::new(); n];
        let mut mat = vec![vec![false; n]; n];
        for (i, v) in ids.iter().enumerate() {
            for u in g.neighbors(*v) {
                let j = index[&u];
                adj[i].push(j);
                mat[i][j] = true;
            }
        }
        Dense { ids, index, adj, mat }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }
}
