//! Exact, approximate and kernelization algorithms for Block Graph Vertex
//! Deletion, together with an exact weighted feedback vertex set solver.

pub mod approx;
pub mod bgvd;
pub mod gen;
pub mod graph;
pub mod kernel;
pub mod obstruction;
pub mod oracle;
pub mod parity;
pub mod wfvs;

pub use graph::{GraphError, MultiGraph, VertexId, Weight, WeightedGraph};
