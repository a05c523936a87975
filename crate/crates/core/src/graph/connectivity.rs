use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Combinations, Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub vertex: usize,
    pub edge: usize,
}

pub(super) fn connectivity(g: &Graph) -> Result<Connectivity, GraphError> {
    let n = g.order();
    if n < 2 {
        return Err(GraphError::OrderTooSmall { order: n, min: 2 });
    }
    Ok(Connectivity {
        vertex: vertex_connectivity(g),
        edge: edge_connectivity(g),
    })
}

/// Smallest separator, found by enumerating vertex subsets by size. The
/// size never exceeds the minimum degree, which bounds the search.
fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.order();
    if g.is_complete() {
        return n - 1;
    }
    let all = g.vertices();
    for size in 0..=g.min_degree().min(n - 2) {
        for sep in Combinations::new(all, size) {
            let rest = all - sep;
            let start = rest.min().expect("separator leaves at least two vertices");
            if g.reach(start, rest.bits()) != rest.bits() {
                return size;
            }
        }
    }
    // a non-complete graph has two non-adjacent vertices; removing the
    // other n-2 separates them
    unreachable!("non-complete graph without a separator of size <= delta")
}

/// Minimum over sinks of the unit-capacity max flow from vertex 0.
fn edge_connectivity(g: &Graph) -> usize {
    let n = g.order();
    let mut best = g.min_degree();
    for t in 1..n {
        if best == 0 {
            break;
        }
        best = best.min(max_flow(g, 0, t, best));
    }
    best
}

/// Edge-disjoint paths from `s` to `t`, stopping once `cap` is reached.
fn max_flow(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    let n = g.order();
    // residual[u][v] for an undirected unit edge starts at 1 in each direction
    let mut residual = vec![vec![0i8; n]; n];
    for (u, v) in g.edges() {
        residual[u][v] = 1;
        residual[v][u] = 1;
    }
    let mut flow = 0;
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    while flow < cap {
        parent.fill(usize::MAX);
        parent[s] = s;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for v in 0..n {
                if parent[v] == usize::MAX && residual[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            break;
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            residual[u][v] -= 1;
            residual[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
    flow
}
