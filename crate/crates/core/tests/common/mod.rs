#![allow(dead_code)]

use survroute::oracle::count_simple_paths;
use survroute::paths::shortest_distance;
use survroute::topology::random_small_network;
use survroute::Network;

/// Largest s-t path count admitted into the corpus; keeps the quadratic pair
/// enumeration fast.
pub const MAX_PATHS: u64 = 1500;

/// Random 5-9 node networks with a reachable target and a modest number of
/// simple s-t paths.
pub fn corpus(size: usize) -> Vec<Network> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < size {
        let n = 5 + (seed % 5) as usize;
        let density = 0.3 + 0.08 * (seed % 4) as f64;
        let net = random_small_network(n, density, seed);
        seed += 1;
        let (s, t) = net.endpoints().unwrap();
        if shortest_distance(&net, s, t, |_| true).is_none() {
            continue;
        }
        if count_simple_paths(&net, s, t) > MAX_PATHS {
            continue;
        }
        out.push(net);
    }
    out
}

use survroute::paths::edsp;
use survroute::routing::Variant;
use survroute::Weight;

pub const SURVIVABILITY_LEVELS: [f64; 8] = [0.9, 0.93, 0.95, 0.97, 0.98, 0.99, 0.995, 1.0];

/// Weight budgets around the interesting breakpoints of a network: the
/// shortest path weight and the disjoint pair weight.
pub fn budgets(net: &Network, variant: Variant) -> Vec<Weight> {
    let (s, t) = net.endpoints().unwrap();
    let base = shortest_distance(net, s, t, |_| true).unwrap();
    let pair = edsp(net, s, t).map(|e| e.total_weight);
    let mut out = match variant {
        Variant::Co => vec![base, base + 1, base + 3, base * 3 / 2, 2 * base],
        Variant::Ct => vec![2 * base - 1, 2 * base, 2 * base + 2, 3 * base, 4 * base],
    };
    if let Some(p) = pair {
        out.extend([p.saturating_sub(1), p, p + 2]);
    }
    out.sort_unstable();
    out.dedup();
    out
}
