//! Planted benchmark suite with instrumented bounds.

use std::fmt::Write as _;

use blockdel::approx::approx_bgvd_4;
use blockdel::bgvd::{solve_bgvd_with, BgvdError, BgvdStats};
use blockdel::gen::planted_suite;
use blockdel::kernel::kernelize;
use blockdel::oracle::{brute_min_bvd, is_block_graph_naive, MAX_BVD_VERTICES};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub solution: Option<usize>,
    pub branch_nodes: usize,
    pub node_ceiling: f64,
    pub leaf_ratio: f64,
    pub leaf_exceedances: usize,
    pub kernel_vertices: usize,
    pub kernel_per_k4: f64,
    pub approx: usize,
    pub oracle: Option<usize>,
    pub approx_ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub rows: Vec<Row>,
    pub max_node_fraction: f64,
    pub max_leaf_ratio: f64,
    pub max_kernel_per_k4: f64,
    pub max_approx_ratio: f64,
    pub violations: Vec<String>,
}

pub fn run(k_min: usize, k_max: usize, per_k: usize, seed: u64) -> Result<Report, BgvdError> {
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for inst in planted_suite(k_min..=k_max, per_k, seed) {
        let g = &inst.graph;
        let (n, k) = (g.vertex_count(), inst.k);
        let mut stats = BgvdStats::default();
        let sol = solve_bgvd_with(g, k, &mut stats)?;
        if let Some(s) = &sol {
            if !is_block_graph_naive(&g.without(s)) {
                violations.push(format!("{}: witness not certified", inst.name));
            }
        }
        let node_ceiling = 4f64.powi(k as i32 + 1) * (n as f64 + 1.0);
        if stats.nodes as f64 > node_ceiling {
            violations.push(format!("{}: {} branch nodes exceed {node_ceiling}", inst.name, stats.nodes));
        }
        if stats.wfvs.leaf_bound_exceeded > 0 {
            violations.push(format!("{}: disjoint leaf bound exceeded", inst.name));
        }
        let kernel = kernelize(g, k)?;
        let a = approx_bgvd_4(g)?;
        let oracle = if n <= MAX_BVD_VERTICES { brute_min_bvd(g).ok().map(|(o, _)| o) } else { None };
        let approx_ratio = oracle.map(|o| if o == 0 { 1.0 } else { a.len() as f64 / o as f64 });
        if approx_ratio.map_or(false, |r| r > 4.0) {
            violations.push(format!("{}: approximation ratio above 4", inst.name));
        }
        let kv = kernel.graph.vertex_count();
        rows.push(Row {
            name: inst.name,
            n,
            k,
            solution: sol.map(|s| s.len()),
            branch_nodes: stats.nodes,
            node_ceiling,
            leaf_ratio: stats.wfvs.max_leaf_ratio,
            leaf_exceedances: stats.wfvs.leaf_bound_exceeded,
            kernel_vertices: kv,
            kernel_per_k4: kv as f64 / (k.max(1) as f64).powi(4),
            approx: a.len(),
            oracle,
            approx_ratio,
        });
    }
    let max = |f: &dyn Fn(&Row) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    Ok(Report {
        max_node_fraction: max(&|r| r.branch_nodes as f64 / r.node_ceiling),
        max_leaf_ratio: max(&|r| r.leaf_ratio),
        max_kernel_per_k4: max(&|r| r.kernel_per_k4),
        max_approx_ratio: max(&|r| r.approx_ratio.unwrap_or(0.0)),
        rows,
        violations,
    })
}

impl Report {
    pub fn table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<22} {:>4} {:>3} {:>4} {:>8} {:>12} {:>7} {:>7} {:>9} {:>6} {:>6} {:>6}",
            "instance", "n", "k", "opt", "nodes", "ceiling", "leaf", "kernel", "kern/k^4", "approx", "oracle", "ratio"
        )
        .unwrap();
        for r in &self.rows {
            let opt = r.solution.map_or("-".to_string(), |s| s.to_string());
            let oracle = r.oracle.map_or("-".to_string(), |s| s.to_string());
            let ratio = r.approx_ratio.map_or("-".to_string(), |x| format!("{x:.2}"));
            writeln!(
                out,
                "{:<22} {:>4} {:>3} {:>4} {:>8} {:>12.0} {:>7.3} {:>7} {:>9.4} {:>6} {:>6} {:>6}",
                r.name, r.n, r.k, opt, r.branch_nodes, r.node_ceiling, r.leaf_ratio, r.kernel_vertices,
                r.kernel_per_k4, r.approx, oracle, ratio
            )
            .unwrap();
        }
        if !self.rows.is_empty() {
            writeln!(
                out,
                "max nodes/ceiling {:.4}  max leaf ratio {:.3}  max kernel/k^4 {:.4}  max approx ratio {:.2}",
                self.max_node_fraction, self.max_leaf_ratio, self.max_kernel_per_k4, self.max_approx_ratio
            )
            .unwrap();
        }
        for v in &self.violations {
            writeln!(out, "VIOLATION {v}").unwrap();
        }
        out
    }
}
