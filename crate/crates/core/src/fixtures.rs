//! Small hand-built networks used by tests, the CLI examples and the demo.

use crate::graph::Network;

/// Five-node network with no link-disjoint s-t pair. Every link fails with
/// probability 0.01; the three connections through `a` cost 113, 23 and 3.
pub fn intro_network() -> Network {
    Network::builder(0.05)
        .nodes(["s", "a", "b", "c", "t"])
        .link("s", "a", 1, 0.01)
        .link("a", "b", 1, 0.01)
        .link("b", "t", 1, 0.01)
        .link("a", "c", 10, 0.01)
        .link("c", "t", 100, 0.01)
        .link("c", "b", 10, 0.01)
        .endpoints("s", "t")
        .build()
        .expect("intro fixture is valid")
}

/// Worked-example network: shortest path s-a-b-t, disjoint pairs s->b (6),
/// a->t (5), s->t (9) and c->t (12).
pub fn example_network() -> Network {
    Network::builder(0.05)
        .nodes(["s", "a", "b", "c", "t"])
        .link("s", "a", 1, 0.02)
        .link("a", "b", 1, 0.03)
        .link("b", "t", 1, 0.01)
        .link("s", "b", 4, 0.01)
        .link("a", "t", 3, 0.01)
        .link("c", "t", 6, 0.01)
        .link("c", "b", 5, 0.01)
        .endpoints("s", "t")
        .build()
        .expect("example fixture is valid")
}
