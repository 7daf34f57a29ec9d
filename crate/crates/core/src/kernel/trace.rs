//! Rule-application records and their replay.

use std::fmt;

use serde::Serialize;

use crate::graph::{GraphError, MultiGraph, VertexId};

/// One primitive graph mutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Op {
    RemoveVertices(Vec<VertexId>),
    /// Contract `uv`; the merged vertex receives the recorded id.
    Contract { u: VertexId, v: VertexId, merged: VertexId },
    RemoveEdges(Vec<(VertexId, VertexId)>),
    /// A fresh vertex `via` adjacent to `from` and `to`.
    AddPath { from: VertexId, via: VertexId, to: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub rule: u8,
    pub k_before: usize,
    pub k_after: usize,
    pub ops: Vec<Op>,
    pub witness: Vec<VertexId>,
    pub detail: String,
}

impl TraceEntry {
    pub fn removed(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        for op in &self.ops {
            match op {
                Op::RemoveVertices(vs) => out.extend(vs.iter().copied()),
                Op::Contract { u, v, .. } => out.extend([*u, *v]),
                _ => {}
            }
        }
        out
    }

    pub fn added(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        for op in &self.ops {
            match op {
                Op::Contract { merged, .. } => out.push(*merged),
                Op::AddPath { via, .. } => out.push(*via),
                _ => {}
            }
        }
        out
    }
}

fn list(vs: &[VertexId]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.0.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RULE {} k={} removed={} added={} witness={}",
            self.rule,
            self.k_after,
            list(&self.removed()),
            list(&self.added()),
            list(&self.witness)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Reduced,
    TrivialYes,
    TrivialNo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub entries: Vec<TraceEntry>,
    pub verdict: Verdict,
}

/// Applies one operation; fresh ids must come out as recorded.
pub fn apply_op(g: &mut MultiGraph, op: &Op) -> Result<(), GraphError> {
    match op {
        Op::RemoveVertices(vs) => {
            for v in vs {
                g.remove_vertex(*v)?;
            }
        }
        Op::Contract { u, v, merged } => {
            let (h, m) = g.contract_edge(*u, *v)?;
            if m != *merged {
                return Err(GraphError::DuplicateVertex(*merged));
            }
            h.check_simple()?;
            *g = h;
        }
        Op::RemoveEdges(es) => {
            for (u, v) in es {
                g.remove_edge(*u, *v)?;
            }
        }
        Op::AddPath { from, via, to } => {
            if g.next_id() != *via {
                return Err(GraphError::DuplicateVertex(*via));
            }
            g.add_vertex();
            g.add_edge(*from, *via)?;
            g.add_edge(*via, *to)?;
        }
    }
    Ok(())
}

/// Replays a trace on the original graph and returns the final instance.
pub fn replay(g: &MultiGraph, k: usize, entries: &[TraceEntry]) -> Result<(MultiGraph, usize), GraphError> {
    let mut g = g.clone();
    let mut k = k;
    for e in entries {
        debug_assert_eq!(e.k_before, k);
        for op in &e.ops {
            apply_op(&mut g, op)?;
        }
        k = e.k_after;
    }
    Ok((g, k))
}
