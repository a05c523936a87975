use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::criticality::{is_k_factor_critical, CriticalityError};
use crate::graph::{named::complete, Graph};

/// A minimally k-critical graph of order `n`, obtained from `K_n` by
/// deleting edges in a seeded random order whenever the deletion keeps
/// the graph k-critical.
///
/// One pass suffices: an edge that cannot be deleted now cannot be deleted
/// from any later, sparser graph either.
pub fn random_minimal_kfc(n: usize, k: usize, seed: u64) -> Result<Graph, CriticalityError> {
    let mut g = complete(n);
    is_k_factor_critical(&g, k)?;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    for (u, v) in edges {
        g.clear_edge(u, v);
        if !is_k_factor_critical(&g, k)?.verdict {
            g.set_edge(u, v);
        }
    }
    Ok(g)
}
