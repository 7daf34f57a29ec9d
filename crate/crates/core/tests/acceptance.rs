//! Acceptance checks. Each prints one PASS/FAIL line; the process exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use blockdel::approx::{approx_bgvd_4, approx_wfvs_2};
use blockdel::bgvd::{build_clique_incidence, solve_bgvd, solve_bgvd_with, BgvdStats};
use blockdel::gen::{disjoint_c4, gnp, planted_suite, rng};
use blockdel::graph::weight_int;
use blockdel::kernel::{find_path_gadget, is_path_gadget, kernelize, rule4_apply, rule6_apply, rules, apply_op, KernelState, Outcome, Verdict};
use blockdel::obstruction::find_obstruction;
use blockdel::oracle::{brute_disjoint_fvs_exists, brute_min_bvd, brute_min_wfvs, is_block_graph_naive};
use blockdel::parity::{build_parity_instance, is_independent, lift_solution, solve_parity, solve_parity_bounded};
use blockdel::wfvs::{solve_wfvs, solve_wfvs_with, WfvsOptions, WfvsStats};
use blockdel::{MultiGraph, VertexId, Weight, WeightedGraph};
use rand::Rng;

use common::*;

/// Largest |V(kernel)| / k^4 over the planted suite when this constant was
/// recorded; the check allows 10% above it.
const KERNEL_BASELINE: f64 = 0.875;
const KERNEL_SLACK: f64 = 1.1;
const APPROX_BGVD_FACTOR: usize = 4;
const APPROX_WFVS_FACTOR: i64 = 2;
const PER_RULE_FIRINGS: usize = 200;

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

fn bvd_opt(g: &MultiGraph) -> usize {
    brute_min_bvd(g).unwrap().0
}

fn bgvd_vs_oracle() -> Check {
    let mut r = rng(1);
    let (mut trials, mut bad) = (0, Vec::new());
    for i in 0..100 {
        let p = 0.1 + 0.8 * (i as f64) / 99.0;
        let g = gnp(r.gen_range(1..=12), p, &mut r).unwrap();
        let opt = bvd_opt(&g);
        for k in 0..=5 {
            trials += 1;
            let got = solve_bgvd(&g, k).unwrap();
            let ok = match &got {
                None => opt > k,
                Some(s) => opt <= k && s.len() == opt && is_block_graph_naive(&g.without(s)),
            };
            if !ok {
                bad.push((i, k));
            }
        }
    }
    check("bgvd-vs-oracle", trials >= 500 && bad.is_empty(), format!("{trials} decisions, mismatches {bad:?}"))
}

fn wfvs_vs_oracle() -> Check {
    let mut r = rng(2);
    let (mut trials, mut bad) = (0, Vec::new());
    for i in 0..125 {
        let g = weighted_multigraph(&mut r, 10, 20);
        for k in 0..=4 {
            trials += 1;
            let got = solve_wfvs(&g, k).unwrap().map(|s| {
                assert!(s.set.len() <= k && g.graph.without(&s.set).is_forest());
                assert_eq!(g.total(&s.set), s.weight);
                s.weight
            });
            let want = brute_min_wfvs(&g, k).unwrap().map(|(w, _)| w);
            if got != want {
                bad.push((i, k));
            }
        }
    }
    check("wfvs-vs-oracle", trials >= 500 && bad.is_empty(), format!("{trials} instances, mismatches {bad:?}"))
}

fn clique_incidence_biconditional() -> Check {
    let mut r = rng(3);
    let (mut trials, mut bad) = (0, 0);
    while trials < 1000 {
        let g = c4d4_free(&mut r, 11);
        let ghat = build_clique_incidence(&g).unwrap();
        for _ in 0..4 {
            let s: BTreeSet<VertexId> = g.vertices().filter(|_| r.gen_bool(0.25)).collect();
            trials += 1;
            if is_block_graph_naive(&g.without(&s)) != ghat.graph.graph.without(&s).is_forest() {
                bad += 1;
            }
        }
    }
    check("clique-incidence-biconditional", bad == 0, format!("{trials} trials, {bad} disagreements"))
}

fn parity_round_trip() -> Check {
    let mut r = rng(4);
    let (mut trials, mut bad) = (0, Vec::new());
    while trials < 200 {
        let (g, retained) = base_case(&mut r, 6);
        let free: Vec<VertexId> = g.graph.vertices().filter(|v| !retained.contains(v)).collect();
        let pi = build_parity_instance(&g, &retained).unwrap();
        trials += 1;
        let m = pi.pairs.len();
        let mut ok = m == free.len();
        let mut best: Vec<Option<Weight>> = vec![None; m + 1];
        for mask in 0u32..1 << m {
            let chosen: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let (x, w) = lift_solution(&pi, &chosen);
            ok &= w == g.total(&x);
            let forest = g.graph.without(&x).is_forest();
            ok &= is_independent(&pi, &chosen) == forest;
            if forest {
                let slot = &mut best[x.len()];
                if slot.as_ref().map_or(true, |b| w < *b) {
                    *slot = Some(w);
                }
            }
        }
        for b in 0..=m {
            let want = best[..=b].iter().flatten().min().cloned();
            let got = solve_parity_bounded(&pi, b).map(|c| lift_solution(&pi, &c).1);
            ok &= got == want;
        }
        ok &= Some(lift_solution(&pi, &solve_parity(&pi)).1) == best.iter().flatten().min().cloned();
        if !ok {
            bad.push(trials);
        }
    }
    check("parity-round-trip", bad.is_empty(), format!("{trials} base cases, failures {bad:?}"))
}

fn planted_suite_bounds() -> Check {
    let mut worst = 0.0f64;
    let mut exceeded = 0;
    let mut over = Vec::new();
    let suite = planted_suite(2..=8, 3, 11);
    for inst in &suite {
        let mut stats = BgvdStats::default();
        let sol = solve_bgvd_with(&inst.graph, inst.k, &mut stats).unwrap();
        assert!(sol.is_some(), "{} is planted with budget k", inst.name);
        let n = inst.graph.vertex_count();
        let ceiling = 4f64.powi(inst.k as i32 + 1) * (n as f64 + 1.0);
        worst = worst.max(stats.nodes as f64 / ceiling);
        if stats.nodes as f64 > ceiling {
            over.push(inst.name.clone());
        }
        exceeded += stats.wfvs.leaf_bound_exceeded;
    }
    check(
        "planted-suite-bounds",
        over.is_empty() && exceeded == 0,
        format!("{} instances, max nodes/4^(k+1)(n+1) = {worst:.5}, leaf bound exceeded {exceeded} times", suite.len()),
    )
}

fn approximation_ratios() -> Check {
    let mut r = rng(6);
    let mut worst = 0.0f64;
    let mut bad = 0;
    for i in 0..300 {
        let g = gnp(r.gen_range(1..=14), 0.1 + 0.8 * (i as f64 / 299.0), &mut r).unwrap();
        let a = approx_bgvd_4(&g).unwrap();
        let opt = bvd_opt(&g);
        if !is_block_graph_naive(&g.without(&a)) || a.len() > APPROX_BGVD_FACTOR * opt {
            bad += 1;
        }
        if opt > 0 {
            worst = worst.max(a.len() as f64 / opt as f64);
        }
    }
    let mut wworst = 0.0f64;
    for _ in 0..300 {
        let g = weighted_multigraph(&mut r, 10, 20);
        let a = approx_wfvs_2(&g);
        let (opt, _) = brute_min_wfvs(&g, g.graph.vertex_count()).unwrap().unwrap();
        let w = g.total(&a);
        if !g.graph.without(&a).is_forest() || w > &opt * weight_int(APPROX_WFVS_FACTOR) {
            bad += 1;
        }
        if opt > weight_int(0) {
            wworst = wworst.max(ratio(&w, &opt));
        }
    }
    let c4 = disjoint_c4(1);
    let pinned = approx_bgvd_4(&c4).unwrap().len() == 4 && bvd_opt(&c4) == 1;
    check(
        "approximation-ratios",
        bad == 0 && pinned,
        format!("600 graphs, {bad} violations, worst bgvd {worst:.3}, worst wfvs {wworst:.3}, single C4 ratio 4: {pinned}"),
    )
}

fn ratio(a: &Weight, b: &Weight) -> f64 {
    let q = a / b;
    q.numer().to_string().parse::<f64>().unwrap() / q.denom().to_string().parse::<f64>().unwrap()
}

/// Counts one rule application as safe when the brute-force decision is
/// unchanged.
#[derive(Default)]
struct RuleTally {
    fired: [usize; 6],
    unsafe_: Vec<String>,
}

impl RuleTally {
    fn record(&mut self, rule: u8, before: &MultiGraph, k: usize, after: Option<(&MultiGraph, usize)>, label: String) {
        self.fired[rule as usize - 1] += 1;
        let yes = bvd_opt(before) <= k;
        let preserved = match after {
            Some((g, k2)) => yes == (bvd_opt(g) <= k2),
            None => !yes,
        };
        if !preserved {
            self.unsafe_.push(format!("rule {rule} on {label} k={k} edges={:?}", before.edges().map(|(a, b, _)| (a.0, b.0)).collect::<Vec<_>>()));
        }
    }
}

fn apply_entry(g: &MultiGraph, out: &Outcome) -> Option<(MultiGraph, usize)> {
    match out {
        Outcome::No { .. } => None,
        Outcome::Apply(e) => {
            let mut h = g.clone();
            for op in &e.ops {
                apply_op(&mut h, op).unwrap();
            }
            Some((h, e.k_after))
        }
    }
}

fn rule_of(out: &Outcome) -> u8 {
    match out {
        Outcome::No { rule, .. } => *rule,
        Outcome::Apply(e) => e.rule,
    }
}

fn step_kernel(g: MultiGraph, k: usize, tally: &mut RuleTally, verdict_bad: &mut usize, label: &str) {
    let yes = bvd_opt(&g) <= k;
    let mut st = KernelState::new(g, k).unwrap();
    loop {
        let before = st.graph.clone();
        let (kb, len) = (st.k, st.trace.len());
        match st.apply_next_rule().unwrap() {
            None => break,
            Some(rule) => {
                let after = (st.trace.len() > len).then_some((&st.graph, st.k));
                tally.record(rule, &before, kb, after, label.to_string());
            }
        }
    }
    let kernel = st.finish();
    let ok = match kernel.verdict() {
        Verdict::TrivialYes => yes,
        Verdict::TrivialNo => !yes,
        Verdict::Reduced => yes == (bvd_opt(&kernel.graph) <= kernel.k),
    };
    if !ok {
        *verdict_bad += 1;
    }
}

fn kernel_rules() -> Check {
    let mut r = rng(7);
    let mut tally = RuleTally::default();
    let mut verdict_bad = 0;
    let mut instances = 0;
    while tally.fired[..3].iter().any(|c| *c < PER_RULE_FIRINGS) && instances < 5000 {
        let (g, k) = if instances % 2 == 0 {
            (gnp(r.gen_range(2..=12), r.gen_range(0.1..0.9), &mut r).unwrap(), r.gen_range(0..=4))
        } else {
            (with_twins(&mut r, 12), r.gen_range(0..=2))
        };
        step_kernel(g, k, &mut tally, &mut verdict_bad, &format!("stepped instance {instances}"));
        instances += 1;
    }

    let mut tries = 0;
    while tally.fired[3] < PER_RULE_FIRINGS && tries < 5000 {
        tries += 1;
        let g = path_gadget(&mut r, 12);
        let k = r.gen_range(0..=4);
        let Some(p) = find_path_gadget(&g) else { continue };
        assert!(is_path_gadget(&g, &p));
        let out = rule4_apply(&g, k, &p);
        tally.record(4, &g, k, apply_entry(&g, &out).as_ref().map(|(h, k2)| (h, *k2)), format!("gadget {tries}"));
    }

    tries = 0;
    while tally.fired[4] < PER_RULE_FIRINGS && tries < 5000 {
        tries += 1;
        let k = r.gen_range(0..=1);
        let noise = r.gen_range(0..=2);
        let g = neighbourhood_paths(&mut r, 2 * k + 1, noise);
        let Some(out) = rules::rule5(&g, k) else { continue };
        let rule = rule_of(&out);
        tally.record(rule, &g, k, apply_entry(&g, &out).as_ref().map(|(h, k2)| (h, *k2)), format!("neighbourhood {tries}"));
    }

    tries = 0;
    while tally.fired[5] < PER_RULE_FIRINGS && tries < 5000 {
        tries += 1;
        let (g, s) = component_star(&mut r, 12);
        let v0 = v(0);
        if find_obstruction(&g.without(&s), Some(v0)).is_some() {
            continue;
        }
        let k = r.gen_range(0..=4);
        let Some(out) = rule6_apply(&g, k, v0, &s) else { continue };
        tally.record(6, &g, k, apply_entry(&g, &out).as_ref().map(|(h, k2)| (h, *k2)), format!("star {tries}"));
    }

    let enough = tally.fired.iter().all(|c| *c >= PER_RULE_FIRINGS);
    check(
        "kernel-rule-safeness",
        enough && tally.unsafe_.is_empty() && verdict_bad == 0,
        format!(
            "firings per rule {:?}, unsafe {:?}, wrong verdicts {verdict_bad} over {instances} stepped instances",
            tally.fired, tally.unsafe_
        ),
    )
}

fn kernel_size() -> Check {
    let mut worst = 0.0f64;
    for inst in planted_suite(2..=8, 3, 13) {
        let kernel = kernelize(&inst.graph, inst.k).unwrap();
        worst = worst.max(kernel.graph.vertex_count() as f64 / (inst.k as f64).powi(4));
    }
    check(
        "kernel-size-regression",
        worst <= KERNEL_SLACK * KERNEL_BASELINE,
        format!("max |V|/k^4 = {worst:.4}, baseline {KERNEL_BASELINE}, slack {KERNEL_SLACK}"),
    )
}

fn measure_prunes() -> Check {
    let mut r = rng(8);
    let opts = WfvsOptions { record_pruned: 50, record_max_free: 22 };
    let (mut events, mut bad, mut graphs) = (0, 0, 0);
    while events < 200 && graphs < 20000 {
        graphs += 1;
        let n = r.gen_range(6..=12);
        let g = gnp(n, r.gen_range(0.3..0.8), &mut r).unwrap();
        let mut wg = WeightedGraph::unit(g);
        for x in wg.graph.vertex_set() {
            wg.set_weight(x, weight_int(r.gen_range(1..=5)));
        }
        let mut stats = WfvsStats::default();
        solve_wfvs_with(&wg, r.gen_range(1..=4), &mut stats, &opts).unwrap();
        for p in stats.pruned {
            events += 1;
            assert!(p.measure < 0);
            if brute_disjoint_fvs_exists(&p.graph, &p.retained, p.k).unwrap() {
                bad += 1;
            }
        }
    }
    check("measure-prunes-are-no", events >= 200 && bad == 0, format!("{events} pruned instances from {graphs} graphs, {bad} had a solution"))
}

fn main() -> ExitCode {
    let checks: Vec<fn() -> Check> = vec![
        bgvd_vs_oracle,
        wfvs_vs_oracle,
        clique_incidence_biconditional,
        parity_round_trip,
        planted_suite_bounds,
        approximation_ratios,
        kernel_rules,
        kernel_size,
        measure_prunes,
    ];
    let mut failed = 0;
    for f in checks {
        let c = f();
        println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        if !c.pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance checks failed");
        ExitCode::FAILURE
    }
}
