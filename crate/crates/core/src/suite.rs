//! Small graphs used throughout the tests, the CLI examples and the demo.

use crate::graph::Graph;

fn build(edges: &[(&str, &str, &str)], boundary: &[&str]) -> Graph {
    Graph::from_edges(edges, boundary).expect("suite graph is valid")
}

/// One trivalent vertex with three legs.
pub fn tripod() -> Graph {
    build(
        &[("l1", "w1", "v"), ("l2", "w2", "v"), ("l3", "w3", "v")],
        &["w1", "w2", "w3"],
    )
}

/// Two trivalent vertices joined by three parallel edges.
pub fn theta() -> Graph {
    build(&[("e1", "v1", "v2"), ("e2", "v1", "v2"), ("e3", "v1", "v2")], &[])
}

/// Loops `a` at `u` and `b` at `v`, joined by the bridge `c`.
pub fn dumbbell() -> Graph {
    build(&[("a", "u", "u"), ("b", "v", "v"), ("c", "u", "v")], &[])
}

/// The necklace Γ(n): a cycle through `n` trivalent vertices with one leg
/// at each. Legs are `f1..fn` (leg `fi` at `wi`), cycle edges `f(n+1)..f(2n)`.
/// For `n = 1` the cycle is the loop `f2`.
pub fn gamma_n(n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges: Vec<(String, String, String)> = (1..=n)
        .map(|i| (format!("f{i}"), format!("w{i}"), format!("v{i}")))
        .collect();
    for i in 1..=n {
        let next = i % n + 1;
        edges.push((format!("f{}", n + i), format!("v{i}"), format!("v{next}")));
    }
    let boundary = (1..=n).map(|i| format!("w{i}")).collect();
    Graph::new(edges, boundary).expect("necklace is valid")
}

/// Closed genus three: two double edges `e1,e2` and `e3,e4` linked by `e5`, `e6`.
pub fn genus_three_closed() -> Graph {
    build(
        &[
            ("e1", "v1", "v2"),
            ("e2", "v1", "v2"),
            ("e3", "v3", "v4"),
            ("e4", "v3", "v4"),
            ("e5", "v1", "v3"),
            ("e6", "v2", "v4"),
        ],
        &[],
    )
}

/// Genus three with two legs and ten edges; `f3+f4+f5+f6` is a cycle and
/// `f9`, `f10` are parallel.
pub fn genus_three_legged() -> Graph {
    build(
        &[
            ("f1", "w1", "v1"),
            ("f2", "w2", "v2"),
            ("f3", "v1", "v3"),
            ("f4", "v3", "v4"),
            ("f5", "v4", "v2"),
            ("f6", "v2", "v1"),
            ("f7", "v3", "v5"),
            ("f8", "v4", "v6"),
            ("f9", "v5", "v6"),
            ("f10", "v5", "v6"),
        ],
        &["w1", "w2"],
    )
}

/// Every suite graph with a short name.
pub fn graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("tripod", tripod()),
        ("gamma1", gamma_n(1)),
        ("gamma2", gamma_n(2)),
        ("gamma3", gamma_n(3)),
        ("theta", theta()),
        ("dumbbell", dumbbell()),
        ("genus3-closed", genus_three_closed()),
        ("genus3-legged", genus_three_legged()),
    ]
}

/// Look up a suite graph by the names used in [`graphs`].
pub fn by_name(name: &str) -> Option<Graph> {
    graphs().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}

/// Every boundary vector in `[0, k]^n`, lexicographically.
pub fn all_boundaries(n: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=k).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}
