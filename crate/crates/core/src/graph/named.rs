//! Constructors for the standard small graphs used throughout the tests
//! and examples.

use super::Graph;

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n).expect("order within range");
    for u in 0..n {
        for v in u + 1..n {
            g.set_edge(u, v);
        }
    }
    g
}

/// `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("order within range")
}

/// Cycle in index order; needs `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let mut g = path(n);
    g.set_edge(0, n - 1);
    g
}

/// `K_{1,leaves}` with the hub at index 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("order within range")
}

/// Hub at index 0 joined to a rim cycle on `1..=rim`.
pub fn wheel(rim: usize) -> Graph {
    let mut g = Graph::empty(rim + 1).expect("order within range");
    for v in 1..=rim {
        g.set_edge(0, v);
        g.set_edge(v, if v == rim { 1 } else { v + 1 });
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        .expect("order within range")
}

/// Outer 5-cycle on `0..5`, inner pentagram on `5..10`, spokes `i - (i+5)`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, edges).expect("order within range")
}
