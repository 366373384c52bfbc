use proptest::prelude::*;
use survroute::rsp::{rsp_exact, rsp_exact_integer_lengths, rsp_fptas, BiMetricGraph, TimeGrid};

/// Every simple source-target path as (length, time).
fn brute_force(g: &BiMetricGraph) -> Vec<(f64, f64)> {
    fn go(g: &BiMetricGraph, u: usize, seen: &mut Vec<bool>, acc: (f64, f64), out: &mut Vec<(f64, f64)>) {
        if u == g.target {
            out.push(acc);
            return;
        }
        seen[u] = true;
        for &e in g.out_links(u) {
            let l = g.link(e);
            if !seen[l.to] {
                go(g, l.to, seen, (acc.0 + l.length, acc.1 + l.time), out);
            }
        }
        seen[u] = false;
    }
    let mut out = Vec::new();
    go(g, g.source, &mut vec![false; g.node_count()], (0.0, 0.0), &mut out);
    out
}

fn best_within(paths: &[(f64, f64)], budget: f64) -> Option<f64> {
    paths
        .iter()
        .filter(|p| p.1 <= budget + 1e-9)
        .map(|p| p.0)
        .min_by(f64::total_cmp)
}

/// Random graph on up to 8 nodes with integer lengths and times.
fn graph() -> impl Strategy<Value = BiMetricGraph> {
    (3usize..=8, prop::collection::vec((0u8..8, 0u8..8, 0u32..12, 0u32..12), 4..30)).prop_map(|(n, raw)| {
        let mut g = BiMetricGraph::new(n, 0, n - 1);
        let mut seen = std::collections::HashSet::new();
        for (a, b, l, t) in raw {
            let (a, b) = (a as usize % n, b as usize % n);
            if a != b && seen.insert((a, b)) {
                g.add_link(a, b, l as f64, t as f64);
            }
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_matches_enumeration(g in graph(), budget in 0u32..40) {
        let best = best_within(&brute_force(&g), budget as f64);
        let by_time = rsp_exact(&g, budget as f64, TimeGrid::unit());
        let by_length = rsp_exact_integer_lengths(&g, budget as f64);
        prop_assert_eq!(by_time.as_ref().map(|s| s.total_length), best);
        prop_assert_eq!(by_length.as_ref().map(|s| s.total_length), best);
        for sol in by_time.iter().chain(&by_length) {
            prop_assert!(sol.total_time <= budget as f64);
            prop_assert_eq!(sol.nodes.first(), Some(&g.source));
            prop_assert_eq!(sol.nodes.last(), Some(&g.target));
        }
    }

    #[test]
    fn fptas_within_factor(g in graph(), budget in 0u32..40, eta in prop::sample::select(vec![0.01, 0.1, 0.5, 2.0])) {
        let best = best_within(&brute_force(&g), budget as f64);
        let approx = rsp_fptas(&g, budget as f64, eta);
        prop_assert_eq!(approx.is_some(), best.is_some());
        if let (Some(a), Some(b)) = (approx, best) {
            prop_assert!(a.total_time <= budget as f64 + 1e-9);
            prop_assert!(a.total_length <= (1.0 + eta) * b + 1e-9);
        }
    }

    #[test]
    fn relaxing_budget_never_hurts(g in graph(), budget in 0u32..30, extra in 0u32..10) {
        let tight = rsp_exact(&g, budget as f64, TimeGrid::unit()).map(|s| s.total_length);
        let loose = rsp_exact(&g, (budget + extra) as f64, TimeGrid::unit()).map(|s| s.total_length);
        if let Some(t) = tight {
            prop_assert!(loose.unwrap() <= t);
        }
    }

    #[test]
    fn quantized_times_never_violate_budget(g in graph(), budget in 1u32..40, scale in 0.05f64..1.0) {
        // rescale times to non-integers and solve on a coarse grid
        let mut h = BiMetricGraph::new(g.node_count(), g.source, g.target);
        for l in g.links() {
            h.add_link(l.from, l.to, l.length, l.time * scale * 0.37);
        }
        let budget = budget as f64 * scale * 0.37;
        let grid = TimeGrid::for_budget(budget, h.links().len(), 10);
        if let Some(sol) = rsp_exact(&h, budget, grid) {
            prop_assert!(sol.total_time <= budget + 1e-12);
            let best = best_within(&brute_force(&h), budget).unwrap();
            prop_assert!(sol.total_length >= best);
        }
    }
}
