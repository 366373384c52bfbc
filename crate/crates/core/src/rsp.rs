//! Restricted shortest path on bi-metric graphs: minimize total length
//! subject to a budget on total time.
//!
//! All solvers share one dynamic program. One metric is mapped to a
//! non-negative integer "cost" that indexes budget layers; the other is
//! minimized per node and layer. Layer `b` holds, for every node, the least
//! value reachable with total cost at most `b`. Zero-cost links are settled
//! inside a layer with Dijkstra, so zero-weight links are handled exactly.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::graph::SURVIVABILITY_TOLERANCE;

/// Slack allowed when checking a real-valued budget.
pub const BUDGET_TOLERANCE: f64 = SURVIVABILITY_TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiLink {
    pub from: usize,
    pub to: usize,
    pub length: f64,
    pub time: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiMetricGraph {
    node_count: usize,
    links: Vec<BiLink>,
    out: Vec<Vec<usize>>,
    pub source: usize,
    pub target: usize,
}

impl BiMetricGraph {
    pub fn new(node_count: usize, source: usize, target: usize) -> Self {
        assert!(source < node_count && target < node_count);
        Self {
            node_count,
            links: Vec::new(),
            out: vec![Vec::new(); node_count],
            source,
            target,
        }
    }

    /// Adds a link and returns its index. Both metrics must be finite and
    /// non-negative.
    pub fn add_link(&mut self, from: usize, to: usize, length: f64, time: f64) -> usize {
        assert!(length.is_finite() && length >= 0.0, "length must be finite and >= 0");
        assert!(time.is_finite() && time >= 0.0, "time must be finite and >= 0");
        let id = self.links.len();
        self.links.push(BiLink { from, to, length, time });
        self.out[from].push(id);
        id
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn links(&self) -> &[BiLink] {
        &self.links
    }

    pub fn link(&self, id: usize) -> &BiLink {
        &self.links[id]
    }

    pub fn out_links(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    fn solution(&self, links: Vec<usize>) -> RspSolution {
        let mut nodes = vec![self.source];
        let mut total_length = 0.0;
        let mut total_time = 0.0;
        for &e in &links {
            let l = &self.links[e];
            nodes.push(l.to);
            total_length += l.length;
            total_time += l.time;
        }
        RspSolution {
            nodes,
            links,
            total_length,
            total_time,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RspSolution {
    pub nodes: Vec<usize>,
    pub links: Vec<usize>,
    pub total_length: f64,
    pub total_time: f64,
}

/// Quantization step for real-valued link times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub delta: f64,
}

impl TimeGrid {
    pub const DEFAULT_PRECISION: u32 = 1000;

    /// Step 1: exact for integer times.
    pub fn unit() -> Self {
        Self { delta: 1.0 }
    }

    /// `delta = budget / (links * precision)`.
    pub fn for_budget(budget: f64, link_count: usize, precision: u32) -> Self {
        let cells = (link_count.max(1) as f64) * f64::from(precision.max(1));
        if budget > 0.0 {
            Self { delta: budget / cells }
        } else {
            Self::unit()
        }
    }

    /// Number of grid cells a time occupies, rounded up. Values within
    /// 1e-9 cells of an integer snap to it so integer times stay exact.
    fn cells(&self, time: f64) -> u64 {
        let q = time / self.delta;
        let r = q.round();
        if (q - r).abs() < 1e-9 {
            r as u64
        } else {
            q.ceil() as u64
        }
    }

    fn budget_cells(&self, budget: f64) -> u64 {
        (budget / self.delta + 1e-9).floor() as u64
    }
}

#[derive(Debug, Clone, Copy)]
enum Pred {
    None,
    Start,
    Carry,
    Link(usize),
}

#[derive(PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .total_cmp(&self.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Budget-layered DP table; see the module docs.
struct LayeredDp<'g> {
    graph: &'g BiMetricGraph,
    cost: Vec<u64>,
    value: Vec<f64>,
    layers: Vec<Vec<f64>>,
    preds: Vec<Vec<Pred>>,
}

impl<'g> LayeredDp<'g> {
    fn new(graph: &'g BiMetricGraph, cost: Vec<u64>, value: Vec<f64>) -> Self {
        Self {
            graph,
            cost,
            value,
            layers: Vec::new(),
            preds: Vec::new(),
        }
    }

    fn push_layer(&mut self) {
        let b = self.layers.len() as u64;
        let n = self.graph.node_count();
        let (mut vals, mut preds) = match self.layers.last() {
            Some(prev) => (prev.clone(), vec![Pred::Carry; n]),
            None => (vec![f64::INFINITY; n], vec![Pred::None; n]),
        };
        for (v, p) in vals.iter().zip(preds.iter_mut()) {
            if v.is_infinite() {
                *p = Pred::None;
            }
        }
        if b == 0 {
            vals[self.graph.source] = 0.0;
            preds[self.graph.source] = Pred::Start;
        }
        for (e, link) in self.graph.links().iter().enumerate() {
            let c = self.cost[e];
            if c == 0 || c > b {
                continue;
            }
            let base = self.layers[(b - c) as usize][link.from];
            let cand = base + self.value[e];
            if cand < vals[link.to] {
                vals[link.to] = cand;
                preds[link.to] = Pred::Link(e);
            }
        }
        // settle zero-cost links inside the layer
        let mut heap: BinaryHeap<HeapItem> = vals
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_finite())
            .map(|(i, &v)| HeapItem(v, i))
            .collect();
        while let Some(HeapItem(d, u)) = heap.pop() {
            if d > vals[u] {
                continue;
            }
            for &e in self.graph.out_links(u) {
                if self.cost[e] != 0 {
                    continue;
                }
                let to = self.graph.link(e).to;
                let cand = d + self.value[e];
                if cand < vals[to] {
                    vals[to] = cand;
                    preds[to] = Pred::Link(e);
                    heap.push(HeapItem(cand, to));
                }
            }
        }
        self.layers.push(vals);
        self.preds.push(preds);
    }

    fn target_value(&self, b: usize) -> f64 {
        self.layers[b][self.graph.target]
    }

    fn trace(&self, mut b: usize) -> Vec<usize> {
        let mut v = self.graph.target;
        let mut links = Vec::new();
        loop {
            match self.preds[b][v] {
                Pred::Start => break,
                Pred::Carry => b -= 1,
                Pred::Link(e) => {
                    links.push(e);
                    v = self.graph.link(e).from;
                    b -= self.cost[e] as usize;
                }
                Pred::None => unreachable!("trace from an unreached state"),
            }
        }
        links.reverse();
        links
    }
}

/// Least total time from source to target, ignoring lengths, over links
/// accepted by `allow`. Returns the time and the path.
fn min_time_path<F>(g: &BiMetricGraph, allow: F) -> Option<(f64, Vec<usize>)>
where
    F: Fn(&BiLink) -> bool,
{
    let n = g.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[g.source] = 0.0;
    heap.push(HeapItem(0.0, g.source));
    while let Some(HeapItem(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &e in g.out_links(u) {
            let l = g.link(e);
            if !allow(l) {
                continue;
            }
            let cand = d + l.time;
            if cand < dist[l.to] {
                dist[l.to] = cand;
                pred[l.to] = Some(e);
                heap.push(HeapItem(cand, l.to));
            }
        }
    }
    if dist[g.target].is_infinite() {
        return None;
    }
    let mut links = Vec::new();
    let mut v = g.target;
    while v != g.source {
        let e = pred[v].expect("reached node has a predecessor");
        links.push(e);
        v = g.link(e).from;
    }
    links.reverse();
    Some((dist[g.target], links))
}

/// Pseudo-polynomial exact solver. Each link time is rounded up to a
/// multiple of `grid.delta`, so every returned path also satisfies the
/// unquantized budget. With integer times and the unit grid the answer is
/// exact. Among minimum-length paths the one using the least budget is
/// returned.
pub fn rsp_exact(g: &BiMetricGraph, time_budget: f64, grid: TimeGrid) -> Option<RspSolution> {
    if time_budget < 0.0 {
        return None;
    }
    let cost: Vec<u64> = g.links().iter().map(|l| grid.cells(l.time)).collect();
    let value: Vec<f64> = g.links().iter().map(|l| l.length).collect();
    let budget = grid.budget_cells(time_budget) as usize;
    let mut dp = LayeredDp::new(g, cost, value);
    for _ in 0..=budget {
        dp.push_layer();
    }
    let best = dp.target_value(budget);
    if best.is_infinite() {
        return None;
    }
    let layer = (0..=budget)
        .find(|&b| dp.target_value(b) <= best)
        .unwrap_or(budget);
    Some(g.solution(dp.trace(layer)))
}

/// Exact solver for graphs whose lengths are non-negative integers: the DP
/// runs over the length dimension and keeps real-valued times exact, so no
/// time quantization is involved. Returns the least-length path whose total
/// time is within `time_budget` (plus [`BUDGET_TOLERANCE`]).
pub fn rsp_exact_integer_lengths(g: &BiMetricGraph, time_budget: f64) -> Option<RspSolution> {
    let limit = time_budget + BUDGET_TOLERANCE;
    min_time_path(g, |_| true).filter(|(t, _)| *t <= limit)?;
    let cost: Vec<u64> = g
        .links()
        .iter()
        .map(|l| {
            debug_assert_eq!(l.length.fract(), 0.0, "lengths must be integers");
            l.length as u64
        })
        .collect();
    let max_budget: u64 = cost.iter().sum();
    let value: Vec<f64> = g.links().iter().map(|l| l.time).collect();
    let mut dp = LayeredDp::new(g, cost, value);
    for b in 0..=max_budget as usize {
        dp.push_layer();
        if dp.target_value(b) <= limit {
            return Some(g.solution(dp.trace(b)));
        }
    }
    None
}

/// `(1 + eta)`-approximation: the returned path meets the time budget and
/// its length is at most `(1 + eta)` times the optimum.
///
/// Bounds the optimum first: with `c*` the least link length such that the
/// links no longer than `c*` still admit a feasible path, `c* <= OPT <= h c*`
/// where `h` bounds the hop count. Lengths are then scaled by
/// `theta = eta c* / h`, rounded up, and the layered DP minimizes time over
/// scaled length, which loses at most `h theta = eta c*` in length.
pub fn rsp_fptas(g: &BiMetricGraph, time_budget: f64, eta: f64) -> Option<RspSolution> {
    assert!(eta > 0.0, "eta must be positive");
    let limit = time_budget + BUDGET_TOLERANCE;
    min_time_path(g, |_| true).filter(|(t, _)| *t <= limit)?;

    let mut lengths: Vec<f64> = g.links().iter().map(|l| l.length).collect();
    lengths.sort_by(f64::total_cmp);
    lengths.dedup();
    let feasible_under = |c: f64| {
        min_time_path(g, |l| l.length <= c)
            .filter(|(t, _)| *t <= limit)
            .map(|(_, links)| links)
    };
    let (mut lo, mut hi) = (0usize, lengths.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible_under(lengths[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let threshold = lengths[lo];
    if threshold == 0.0 {
        let links = feasible_under(0.0).expect("threshold is feasible");
        return Some(g.solution(links));
    }

    let hops = (g.node_count().max(2) - 1) as f64;
    let theta = eta * threshold / hops;
    let cost: Vec<u64> = g
        .links()
        .iter()
        .map(|l| (l.length / theta).ceil() as u64)
        .collect();
    let max_budget = (hops * hops / eta).ceil() as usize + hops as usize;
    let value: Vec<f64> = g.links().iter().map(|l| l.time).collect();
    let mut dp = LayeredDp::new(g, cost, value);
    for b in 0..=max_budget {
        dp.push_layer();
        if dp.target_value(b) <= limit {
            return Some(g.solution(dp.trace(b)));
        }
    }
    unreachable!("scaled optimum lies within the layer bound")
}
