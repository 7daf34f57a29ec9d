//! A quick randomized invariant suite against the brute-force oracles.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use blockdel::approx::{approx_bgvd_4, approx_wfvs_2};
use blockdel::bgvd::{build_clique_incidence, solve_bgvd};
use blockdel::gen::{gnp, rng};
use blockdel::graph::weight_int;
use blockdel::kernel::kernelize;
use blockdel::kernel::Verdict;
use blockdel::obstruction::{find_small_obstruction, is_block_graph};
use blockdel::oracle::{brute_min_bvd, brute_min_wfvs};
use blockdel::wfvs::solve_wfvs;
use blockdel::{MultiGraph, VertexId, WeightedGraph};
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.failures == 0 { "PASS" } else { "FAIL" };
            writeln!(out, "{status} {} ({} cases, {} failures)", c.name, c.cases, c.failures).unwrap();
        }
        out
    }
}

fn bgvd_decision(g: &MultiGraph, k: usize) -> bool {
    brute_min_bvd(g).unwrap().0 <= k
}

pub fn run(cases: usize, seed: u64) -> Report {
    let mut r = rng(seed);
    let mut checks = Vec::new();
    let mut check = |name: &'static str, f: &mut dyn FnMut(&mut rand_chacha::ChaCha8Rng) -> bool, r: &mut rand_chacha::ChaCha8Rng| {
        let failures = (0..cases).filter(|_| !f(r)).count();
        checks.push(Check { name, cases, failures });
    };

    check("bgvd-vs-oracle", &mut |r| {
        let n = r.gen_range(1..=9);
        let g = gnp(n, r.gen_range(0.1..0.9), r).unwrap();
        let k = r.gen_range(0..=3);
        match solve_bgvd(&g, k).unwrap() {
            Some(s) => s.len() <= k && is_block_graph(&g.without(&s)) && bgvd_decision(&g, k),
            None => !bgvd_decision(&g, k),
        }
    }, &mut r);

    check("wfvs-vs-oracle", &mut |r| {
        let n = r.gen_range(1..=8);
        let mut g = MultiGraph::with_vertices(n);
        for _ in 0..r.gen_range(0..=14) {
            g.add_edge(VertexId(r.gen_range(0..n as u32)), VertexId(r.gen_range(0..n as u32))).unwrap();
        }
        let mut wg = WeightedGraph::unit(g);
        for v in 0..n as u32 {
            wg.set_weight(VertexId(v), weight_int(r.gen_range(1..=9)));
        }
        let k = r.gen_range(0..=3);
        let got = solve_wfvs(&wg, k).unwrap().map(|s| s.weight);
        let want = brute_min_wfvs(&wg, k).unwrap().map(|(w, _)| w);
        got == want
    }, &mut r);

    check("clique-incidence-biconditional", &mut |r| {
        let n = r.gen_range(1..=10);
        let g = gnp(n, r.gen_range(0.1..0.6), r).unwrap();
        if find_small_obstruction(&g).is_some() {
            return true;
        }
        let h = build_clique_incidence(&g).unwrap();
        let s: BTreeSet<VertexId> = g.vertices().filter(|_| r.gen_bool(0.3)).collect();
        is_block_graph(&g.without(&s)) == h.graph.graph.without(&s).is_forest()
    }, &mut r);

    check("approximation-ratios", &mut |r| {
        let n = r.gen_range(1..=10);
        let g = gnp(n, r.gen_range(0.1..0.9), r).unwrap();
        let a = approx_bgvd_4(&g).unwrap();
        let opt = brute_min_bvd(&g).unwrap().0;
        let wg = WeightedGraph::unit(g.clone());
        let f = approx_wfvs_2(&wg);
        let fopt = brute_min_wfvs(&wg, n).unwrap().unwrap().0;
        is_block_graph(&g.without(&a)) && a.len() <= 4 * opt && wg.total(&f) <= fopt * weight_int(2)
    }, &mut r);

    check("kernel-decision", &mut |r| {
        let n = r.gen_range(1..=10);
        let g = gnp(n, r.gen_range(0.1..0.9), r).unwrap();
        let k = r.gen_range(0..=3);
        let kr = kernelize(&g, k).unwrap();
        let before = bgvd_decision(&g, k);
        match kr.verdict() {
            Verdict::TrivialYes => before,
            Verdict::TrivialNo => !before,
            Verdict::Reduced => before == bgvd_decision(&kr.graph, kr.k),
        }
    }, &mut r);

    Report { checks }
}
