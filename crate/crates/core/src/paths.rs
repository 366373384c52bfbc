//! Weight-shortest paths and the edge-disjoint shortest pair of paths.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};

use crate::graph::{LinkId, Network, NodeId, Path, Weight};

/// Two link-disjoint paths between the same endpoints with minimum total
/// weight. The heavier path is listed first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edsp {
    pub path_a: Path,
    pub path_b: Path,
    pub total_weight: Weight,
}

/// Single-source Dijkstra over the links accepted by `allow`. Walks
/// incoming links from `root` when `reverse` is set, giving distances *to*
/// `root`.
pub(crate) fn distances<F>(net: &Network, root: NodeId, reverse: bool, allow: F) -> Vec<Option<Weight>>
where
    F: Fn(LinkId) -> bool,
{
    let mut dist: Vec<Option<Weight>> = vec![None; net.node_count()];
    let mut heap = BinaryHeap::new();
    dist[root] = Some(0);
    heap.push(Reverse((0, root)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].is_some_and(|best| d > best) {
            continue;
        }
        let adjacent = if reverse { net.in_links(u) } else { net.out_links(u) };
        for &e in adjacent {
            if !allow(e) {
                continue;
            }
            let link = net.link(e);
            let v = if reverse { link.from } else { link.to };
            let nd = d + link.weight;
            if dist[v].is_none_or(|cur| nd < cur) {
                dist[v] = Some(nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

/// Minimum s-t weight over the links accepted by `allow`.
pub fn shortest_distance<F>(net: &Network, s: NodeId, t: NodeId, allow: F) -> Option<Weight>
where
    F: Fn(LinkId) -> bool,
{
    distances(net, s, false, allow)[t]
}

/// A minimum-weight s-t path and its weight, or `None` when `t` is
/// unreachable. Among minimum-weight paths the lexicographically smallest
/// node sequence is returned; zero-weight links are ordered by hop count
/// first so the walk cannot cycle.
pub fn shortest_path(net: &Network, s: NodeId, t: NodeId) -> Option<(Path, Weight)> {
    shortest_path_filtered(net, s, t, |_| true)
}

pub fn shortest_path_filtered<F>(net: &Network, s: NodeId, t: NodeId, allow: F) -> Option<(Path, Weight)>
where
    F: Fn(LinkId) -> bool,
{
    let to_t = distances(net, t, true, &allow);
    let total = to_t[s]?;
    if s == t {
        return Some((Path::trivial(s), 0));
    }
    let tight = |e: LinkId| {
        let l = net.link(e);
        allow(e)
            && matches!((to_t[l.from], to_t[l.to]), (Some(a), Some(b)) if a == b + l.weight)
    };
    // hop distance to t over tight links
    let mut hops = vec![usize::MAX; net.node_count()];
    hops[t] = 0;
    let mut queue = VecDeque::from([t]);
    while let Some(v) = queue.pop_front() {
        for &e in net.in_links(v) {
            let u = net.link(e).from;
            if tight(e) && hops[u] == usize::MAX {
                hops[u] = hops[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let mut nodes = vec![s];
    let mut cur = s;
    while cur != t {
        let next = net
            .out_links(cur)
            .iter()
            .copied()
            .filter(|&e| {
                let l = net.link(e);
                tight(e) && (l.weight > 0 || hops[l.to] < hops[cur])
            })
            .map(|e| net.link(e).to)
            .min()
            .expect("a tight successor exists on every shortest path");
        nodes.push(next);
        cur = next;
    }
    let path = Path::from_nodes(net, &nodes).expect("walk follows existing links");
    Some((path, total))
}

/// Edge-disjoint shortest pair between `u` and `v` by the two-pass
/// residual method: a shortest path, then a shortest path in the residual
/// network under reduced costs where the first path's links are reversed.
/// Links traversed in both directions cancel.
pub fn edsp(net: &Network, u: NodeId, v: NodeId) -> Option<Edsp> {
    if u == v {
        return Some(Edsp {
            path_a: Path::trivial(u),
            path_b: Path::trivial(u),
            total_weight: 0,
        });
    }
    let dist = distances(net, u, false, |_| true);
    dist[v]?;
    let (first, _) = shortest_path(net, u, v)?;
    let on_first: HashSet<LinkId> = first.links().iter().copied().collect();

    // residual search: (reduced cost, node); arcs are (link, reversed)
    let n = net.node_count();
    let mut best: Vec<Option<Weight>> = vec![None; n];
    let mut pred: Vec<Option<(LinkId, bool)>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    best[u] = Some(0);
    heap.push(Reverse((0u64, u)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if best[x].is_some_and(|b| d > b) {
            continue;
        }
        let Some(dx) = dist[x] else { continue };
        let mut relax = |y: NodeId, cost: Weight, arc: (LinkId, bool), heap: &mut BinaryHeap<_>| {
            let nd = d + cost;
            if best[y].is_none_or(|cur| nd < cur) {
                best[y] = Some(nd);
                pred[y] = Some(arc);
                heap.push(Reverse((nd, y)));
            }
        };
        for &e in net.out_links(x) {
            if on_first.contains(&e) {
                continue;
            }
            let l = net.link(e);
            let dy = dist[l.to].expect("successor of a reachable node is reachable");
            relax(l.to, l.weight + dx - dy, (e, false), &mut heap);
        }
        for &e in net.in_links(x) {
            if on_first.contains(&e) {
                relax(net.link(e).from, 0, (e, true), &mut heap);
            }
        }
    }
    best[v]?;

    let mut flow: HashSet<LinkId> = on_first;
    let mut x = v;
    while x != u {
        let (e, reversed) = pred[x].expect("predecessor chain reaches the source");
        let l = net.link(e);
        if reversed {
            flow.remove(&e);
            x = l.to;
        } else {
            flow.insert(e);
            x = l.from;
        }
    }

    let mut walks = Vec::with_capacity(2);
    for _ in 0..2 {
        let mut nodes = vec![u];
        let mut links = Vec::new();
        let mut cur = u;
        while cur != v {
            let e = net
                .out_links(cur)
                .iter()
                .copied()
                .filter(|e| flow.contains(e))
                .min()
                .expect("flow is conserved along the pair");
            flow.remove(&e);
            links.push(e);
            cur = net.link(e).to;
            nodes.push(cur);
        }
        walks.push(strip_cycles(net, u, &links));
    }
    let mut pair: Vec<(Weight, Path)> = walks.into_iter().map(|p| (p.weight(net), p)).collect();
    pair.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.nodes().cmp(b.1.nodes())));
    let (wb, path_b) = pair.pop().unwrap();
    let (wa, path_a) = pair.pop().unwrap();
    Some(Edsp {
        path_a,
        path_b,
        total_weight: wa + wb,
    })
}

/// Removes closed sub-walks so the result visits each node once.
fn strip_cycles(net: &Network, start: NodeId, links: &[LinkId]) -> Path {
    let mut nodes = vec![start];
    let mut kept: Vec<LinkId> = Vec::new();
    for &e in links {
        let to = net.link(e).to;
        if let Some(pos) = nodes.iter().position(|&n| n == to) {
            nodes.truncate(pos + 1);
            kept.truncate(pos);
        } else {
            nodes.push(to);
            kept.push(e);
        }
    }
    Path::from_links(net, start, &kept).expect("pruned walk is still connected")
}
