//! Polynomial kernel for block graph vertex deletion: six reduction rules
//! applied lowest-numbered first until none applies.

pub mod expansion;
pub mod rules;
pub mod structure;
pub mod trace;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::approx::approx_bgvd_4;
use crate::bgvd::BgvdError;
use crate::graph::{BlockKind, MultiGraph, VertexId};
use crate::obstruction::Obstruction;

pub use expansion::{expansion, Expansion, ExpansionError};
pub use rules::{find_path_gadget, is_path_gadget, rule4_apply, rule6_apply, Outcome, PathGadget};
pub use structure::{compute_sv, structure_at, StructureResult};
pub use trace::{apply_op, replay, Op, ReductionTrace, TraceEntry, Verdict};

/// Upper bound on component-degree rule applications per vertex of the
/// input, since that rule adds vertices.
const RULE6_CAP_PER_VERTEX: usize = 4;

#[derive(Clone, Debug)]
pub struct KernelState {
    pub graph: MultiGraph,
    pub k: usize,
    /// Approximate solution for the current graph.
    pub approx: BTreeSet<VertexId>,
    pub trace: Vec<TraceEntry>,
    pub verdict: Option<Verdict>,
    pub no_witness: Vec<Obstruction>,
    rule6_left: usize,
}

impl KernelState {
    pub fn new(graph: MultiGraph, k: usize) -> Result<Self, BgvdError> {
        graph.check_simple()?;
        let approx = approx_bgvd_4(&graph)?;
        let rule6_left = RULE6_CAP_PER_VERTEX * graph.vertex_count().max(1);
        Ok(KernelState { graph, k, approx, trace: Vec::new(), verdict: None, no_witness: Vec::new(), rule6_left })
    }

    fn refresh(&mut self) -> Result<(), BgvdError> {
        self.approx = approx_bgvd_4(&self.graph)?;
        Ok(())
    }

    /// Settles trivial verdicts: an empty graph is Yes, an approximate
    /// solution larger than `4k` is No.
    fn settle(&mut self) -> bool {
        if self.verdict.is_some() {
            return true;
        }
        if self.graph.is_empty() {
            self.verdict = Some(Verdict::TrivialYes);
        } else if self.approx.len() > 4 * self.k {
            self.verdict = Some(Verdict::TrivialNo);
        }
        self.verdict.is_some()
    }

    /// Finds the lowest-numbered applicable rule and applies it once.
    /// Returns the rule id, or `None` at a fixpoint or once a verdict is
    /// reached.
    pub fn apply_next_rule(&mut self) -> Result<Option<u8>, BgvdError> {
        if self.settle() {
            return Ok(None);
        }
        let (g, k) = (&self.graph, self.k);
        let found = rules::rule1(g, k)
            .or_else(|| rules::rule2(g, k))
            .or_else(|| rules::rule3(g, k))
            .or_else(|| rules::rule4(g, k))
            .or_else(|| rules::rule5(g, k))
            .or_else(|| if self.rule6_left > 0 { rules::rule6(g, k, &self.approx) } else { None });
        match found {
            None => Ok(None),
            Some(Outcome::No { rule, witness }) => {
                self.verdict = Some(Verdict::TrivialNo);
                self.no_witness = witness;
                Ok(Some(rule))
            }
            Some(Outcome::Apply(e)) => {
                for op in &e.ops {
                    apply_op(&mut self.graph, op)?;
                }
                if e.rule == 6 {
                    self.rule6_left -= 1;
                }
                self.k = e.k_after;
                let rule = e.rule;
                self.trace.push(e);
                self.refresh()?;
                self.settle();
                Ok(Some(rule))
            }
        }
    }

    pub fn finish(self) -> Kernel {
        let verdict = self.verdict.unwrap_or(Verdict::Reduced);
        let stats = KernelStats::measure(&self.graph, &self.approx, &self.trace);
        Kernel {
            graph: self.graph,
            k: self.k,
            trace: ReductionTrace { entries: self.trace, verdict },
            no_witness: self.no_witness,
            stats,
        }
    }
}

/// Size statistics of a reduced instance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KernelStats {
    pub vertices: usize,
    pub edges: usize,
    pub approx_size: usize,
    /// Blocks of `G' - A`.
    pub blocks: usize,
    pub leaf_blocks: usize,
    pub max_internal: usize,
    pub rule_counts: [usize; 6],
}

impl KernelStats {
    fn measure(g: &MultiGraph, approx: &BTreeSet<VertexId>, trace: &[TraceEntry]) -> Self {
        let forest = g.without(approx).block_cut_forest();
        let mut rule_counts = [0; 6];
        for e in trace {
            rule_counts[e.rule as usize - 1] += 1;
        }
        KernelStats {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            approx_size: approx.len(),
            blocks: forest.blocks.len(),
            leaf_blocks: forest.count(BlockKind::Leaf),
            max_internal: (0..forest.blocks.len()).map(|b| forest.internal(b).len()).max().unwrap_or(0),
            rule_counts,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub graph: MultiGraph,
    pub k: usize,
    pub trace: ReductionTrace,
    pub no_witness: Vec<Obstruction>,
    pub stats: KernelStats,
}

impl Kernel {
    pub fn verdict(&self) -> Verdict {
        self.trace.verdict
    }
}

pub fn kernelize(g: &MultiGraph, k: usize) -> Result<Kernel, BgvdError> {
    let mut st = KernelState::new(g.clone(), k)?;
    while st.apply_next_rule()?.is_some() {}
    Ok(st.finish())
}
