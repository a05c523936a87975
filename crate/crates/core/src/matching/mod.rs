//! Maximum matchings, perfect-matching tests and enumeration, and Tutte
//! certificates.

mod blossom;
mod tutte;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

pub use tutte::{tutte_violators, TutteCertificate, TutteMode, ALL_VIOLATORS_MAX_ORDER};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

/// Masks up to this size are decided by direct branching; larger ones go
/// through the blossom algorithm.
const BRANCHING_MAX: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("enumeration stopped at the limit of {limit} matchings")]
    LimitExceeded { limit: usize },
    #[error("order {order} exceeds {max} for this search")]
    TooLarge { order: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A set of vertex-disjoint edges, each stored as `(u, v)` with `u < v`
/// and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl Matching {
    fn from_mate(mate: &[usize]) -> Self {
        let edges = mate
            .iter()
            .enumerate()
            .filter(|&(u, &v)| v != usize::MAX && u < v)
            .map(|(u, &v)| (u, v))
            .collect();
        Matching {
            order: mate.len(),
            edges,
        }
    }

    fn from_pairs(order: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        Matching { order, edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_perfect(&self) -> bool {
        2 * self.edges.len() == self.order
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).is_ok()
    }

    pub fn covered(&self) -> VertexSet {
        self.edges.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// True if the edges are disjoint and all present in `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::EMPTY;
        for &(u, v) in &self.edges {
            if u >= g.order() || v >= g.order() || !g.has_edge(u, v) {
                return false;
            }
            if seen.contains(u) || seen.contains(v) {
                return false;
            }
            seen = seen.with(u).with(v);
        }
        true
    }
}

pub fn maximum_matching(g: &Graph) -> Matching {
    maximum_matching_in(g, g.vertices())
}

/// Maximum matching of the subgraph induced by `within`, in the labels of
/// `g`. `is_perfect` on the result refers to the whole of `g`.
pub fn maximum_matching_in(g: &Graph, within: VertexSet) -> Matching {
    Matching::from_mate(&blossom::Blossom::new(g, within).solve())
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    has_perfect_matching_in(g, g.vertices())
}

/// Whether the subgraph induced by `within` has a perfect matching.
pub fn has_perfect_matching_in(g: &Graph, within: VertexSet) -> bool {
    let within = within & g.vertices();
    if within.len() % 2 == 1 {
        return false;
    }
    if within.len() <= BRANCHING_MAX {
        return branch(g.rows(), within.bits());
    }
    let mate = blossom::Blossom::new(g, within).solve();
    within.iter().all(|v| mate[v] != usize::MAX)
}

/// Depth-first search for a perfect matching of an even mask. Branches on
/// a vertex of least degree and cuts off as soon as some component of the
/// remaining mask is odd.
fn branch(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return true;
    }
    let mut pick = usize::MAX;
    let mut pick_deg = u32::MAX;
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & mask).count_ones();
        if d == 0 {
            return false;
        }
        if d < pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    if has_odd_component(adj, mask) {
        return false;
    }
    let mut cand = adj[pick] & mask;
    let without_pick = mask & !(1u64 << pick);
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if branch(adj, without_pick & !(1u64 << w)) {
            return true;
        }
    }
    false
}

fn has_odd_component(adj: &[u64], mask: u64) -> bool {
    let mut left = mask;
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & mask & !comp;
            comp |= new;
            frontier |= new;
        }
        if comp.count_ones() % 2 == 1 {
            return true;
        }
        left &= !comp;
    }
    false
}

/// Result of a bounded perfect-matching enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectMatchings {
    pub matchings: Vec<Matching>,
    pub truncated: bool,
}

impl PerfectMatchings {
    /// The full list, or an error if the limit cut the enumeration short.
    pub fn into_complete(self, limit: usize) -> Result<Vec<Matching>, MatchingError> {
        if self.truncated {
            Err(MatchingError::LimitExceeded { limit })
        } else {
            Ok(self.matchings)
        }
    }
}

/// All perfect matchings, lexicographic in their sorted edge lists, stopping
/// after `limit` (a limit of zero is treated as one).
pub fn enumerate_perfect_matchings(g: &Graph, limit: usize) -> PerfectMatchings {
    let limit = limit.max(1);
    let mut out = PerfectMatchings {
        matchings: Vec::new(),
        truncated: false,
    };
    if g.order().is_multiple_of(2) {
        let mut stack = Vec::with_capacity(g.order() / 2);
        enumerate(g, g.vertices().bits(), &mut stack, limit, &mut out);
    }
    out
}

fn enumerate(
    g: &Graph,
    mask: u64,
    stack: &mut Vec<(usize, usize)>,
    limit: usize,
    out: &mut PerfectMatchings,
) {
    if out.truncated {
        return;
    }
    if mask == 0 {
        if out.matchings.len() == limit {
            out.truncated = true;
        } else {
            out.matchings.push(Matching::from_pairs(g.order(), stack.clone()));
        }
        return;
    }
    if has_odd_component(g.rows(), mask) {
        return;
    }
    // smallest remaining vertex, partners ascending: lexicographic output
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << v);
    for w in VertexSet::from_bits(g.rows()[v] & rest) {
        stack.push((v, w));
        enumerate(g, rest & !(1u64 << w), stack, limit, out);
        stack.pop();
    }
}

/// Whether `uv` lies in every perfect matching of `g` and at least one
/// exists.
pub fn forced_edge(g: &Graph, (u, v): (usize, usize)) -> Result<bool, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.has_edge(u, v) {
        return Err(GraphError::EdgeAbsent(u, v));
    }
    if !has_perfect_matching(g) {
        return Ok(false);
    }
    let mut h = g.clone();
    h.clear_edge(u, v);
    Ok(!has_perfect_matching(&h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::Combinations;
    use proptest::prelude::*;

    /// Maximum matching size by exhaustive branching: the smallest vertex
    /// is either left exposed or matched to each neighbour in turn.
    fn brute_matching_size(g: &Graph, mask: u64) -> usize {
        if mask == 0 {
            return 0;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << v);
        let mut best = brute_matching_size(g, rest);
        for w in VertexSet::from_bits(g.rows()[v] & rest) {
            best = best.max(1 + brute_matching_size(g, rest & !(1u64 << w)));
        }
        best
    }

    /// Perfect matchings counted over all pairings, no pruning.
    fn brute_pm_count(g: &Graph, mask: u64) -> usize {
        if mask == 0 {
            return 1;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << v);
        VertexSet::from_bits(g.rows()[v] & rest)
            .iter()
            .map(|w| brute_pm_count(g, rest & !(1u64 << w)))
            .sum()
    }

    fn max_deficiency(g: &Graph) -> usize {
        let mut best = 0;
        for size in 0..=g.order() {
            for x in Combinations::new(g.vertices(), size) {
                let odd = g.odd_components_within(g.vertices() - x);
                best = best.max(odd.saturating_sub(size));
            }
        }
        best
    }

    fn edges(list: &[(usize, usize)]) -> Vec<(usize, usize)> {
        list.to_vec()
    }

    #[test]
    fn maximum_matching_examples() {
        let m = maximum_matching(&cycle(6));
        assert_eq!(m.len(), 3);
        assert!(m.is_perfect());
        assert_eq!(maximum_matching(&star(3)).len(), 1);
        let p = maximum_matching(&petersen());
        assert_eq!(p.len(), 5);
        assert!(p.is_perfect() && p.is_valid_in(&petersen()));
        assert_eq!(brute_matching_size(&petersen(), petersen().vertices().bits()), 5);
    }

    #[test]
    fn perfect_matching_examples() {
        assert!(has_perfect_matching(&complete(2)));
        assert!(!has_perfect_matching(&complete(3)));
        let d = cycle(6).delete_vertices([0, 2].into_iter().collect()).unwrap();
        assert!(!has_perfect_matching(&d.graph));
        assert!(has_perfect_matching(&Graph::empty(0).unwrap()));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_perfect_matchings(&cycle(6), 100).matchings.len(), 2);
        assert_eq!(enumerate_perfect_matchings(&complete(4), 100).matchings.len(), 3);
        let c4 = enumerate_perfect_matchings(&cycle(4), 100);
        assert_eq!(c4.matchings.len(), 2);
        assert!(!c4.truncated);
        assert_eq!(c4.matchings[0].edges(), edges(&[(0, 1), (2, 3)]).as_slice());
        assert_eq!(c4.matchings[1].edges(), edges(&[(0, 3), (1, 2)]).as_slice());
    }

    #[test]
    fn enumeration_truncates() {
        let k6 = complete(6);
        let res = enumerate_perfect_matchings(&k6, 4);
        assert_eq!(res.matchings.len(), 4);
        assert!(res.truncated);
        assert_eq!(
            res.into_complete(4),
            Err(MatchingError::LimitExceeded { limit: 4 })
        );
        let all = enumerate_perfect_matchings(&k6, 15);
        assert!(!all.truncated);
        assert_eq!(all.matchings.len(), 15);
        let sorted = {
            let mut v: Vec<_> = all.matchings.iter().map(|m| m.edges().to_vec()).collect();
            v.sort();
            v
        };
        let got: Vec<_> = all.matchings.iter().map(|m| m.edges().to_vec()).collect();
        assert_eq!(got, sorted);
    }

    #[test]
    fn forced_edge_examples() {
        assert_eq!(forced_edge(&complete(2), (0, 1)), Ok(true));
        for (u, v) in cycle(4).edges().collect::<Vec<_>>() {
            assert_eq!(forced_edge(&cycle(4), (u, v)), Ok(false));
        }
        let p4 = path(4);
        assert_eq!(forced_edge(&p4, (0, 1)), Ok(true));
        assert_eq!(forced_edge(&p4, (1, 2)), Ok(false));
        assert_eq!(forced_edge(&p4, (0, 2)), Err(GraphError::EdgeAbsent(0, 2)));
    }

    #[test]
    fn tutte_examples() {
        let claw = tutte_violators(&star(3), TutteMode::FirstMinimal).unwrap();
        assert_eq!(claw.len(), 1);
        assert_eq!(claw[0].x, VertexSet::singleton(0));
        assert_eq!(claw[0].partition.odd_count, 3);
        assert_eq!(claw[0].deficit, 2);

        let k3 = tutte_violators(&complete(3), TutteMode::FirstMinimal).unwrap();
        assert_eq!(k3[0].x, VertexSet::EMPTY);
        assert_eq!(k3[0].partition.odd_count, 1);
        assert_eq!(k3[0].deficit, 1);

        assert!(tutte_violators(&cycle(6), TutteMode::All).unwrap().is_empty());
        assert_eq!(
            tutte_violators(&complete(17), TutteMode::All),
            Err(MatchingError::TooLarge { order: 17, max: 16 })
        );
    }

    #[test]
    fn tutte_modes_are_consistent() {
        // two disjoint claws: every violator is found, the first is minimal
        let g = star(3).disjoint_union(&star(3)).unwrap();
        let all = tutte_violators(&g, TutteMode::All).unwrap();
        let minimal = tutte_violators(&g, TutteMode::AllMinimal).unwrap();
        let first = tutte_violators(&g, TutteMode::FirstMinimal).unwrap();
        assert_eq!(first[0], minimal[0]);
        assert_eq!(first[0], all[0]);
        let min_size = minimal[0].x.len();
        assert!(minimal.iter().all(|c| c.x.len() == min_size));
        assert_eq!(
            all.iter().filter(|c| c.x.len() == min_size).count(),
            minimal.len()
        );
        for pair in all.windows(2) {
            let key = |c: &TutteCertificate| (c.x.len(), c.x.to_vec());
            assert!(key(&pair[0]) < key(&pair[1]));
        }
        assert!(all.iter().all(|c| c.verify(&g)));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0usize..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(0u8..100, n * n.saturating_sub(1) / 2).prop_flat_map(
                move |raw| {
                    (1u8..100).prop_map(move |density| {
                        let mut g = Graph::empty(n).unwrap();
                        let mut it = raw.iter();
                        for v in 1..n {
                            for u in 0..v {
                                if *it.next().unwrap() < density {
                                    g.set_edge(u, v);
                                }
                            }
                        }
                        g
                    })
                },
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn blossom_matches_brute_force(g in arb_graph(10)) {
            let m = maximum_matching(&g);
            prop_assert!(m.is_valid_in(&g));
            prop_assert_eq!(m.len(), brute_matching_size(&g, g.vertices().bits()));
            prop_assert_eq!(maximum_matching(&g).len(), m.len());
        }

        #[test]
        fn tutte_berge(g in arb_graph(8)) {
            let m = maximum_matching(&g);
            prop_assert_eq!(2 * m.len(), g.order() - max_deficiency(&g));
        }

        #[test]
        fn duality(g in arb_graph(8)) {
            let pm = has_perfect_matching(&g);
            let violators = tutte_violators(&g, TutteMode::FirstMinimal).unwrap();
            let count = enumerate_perfect_matchings(&g, DEFAULT_ENUMERATION_LIMIT).matchings.len();
            prop_assert_eq!(pm, violators.is_empty());
            prop_assert_eq!(pm, count >= 1);
            prop_assert_eq!(count, brute_pm_count(&g, g.vertices().bits()));
            for c in &violators {
                prop_assert!(c.verify(&g));
                prop_assert_eq!(c.deficit % 2, g.order() % 2);
            }
        }

        #[test]
        fn branching_agrees_with_blossom(g in arb_graph(16), drop in any::<u64>()) {
            let within = g.vertices() - VertexSet::from_bits(drop & 0x5555);
            let mate = blossom::Blossom::new(&g, within).solve();
            let perfect = within.iter().all(|v| mate[v] != usize::MAX);
            prop_assert_eq!(has_perfect_matching_in(&g, within), perfect);
            if within.len() <= BRANCHING_MAX {
                prop_assert_eq!(branch(g.rows(), within.bits()), perfect);
            }
        }

        #[test]
        fn forced_edge_agrees_with_enumeration(g in arb_graph(10)) {
            let pms = enumerate_perfect_matchings(&g, DEFAULT_ENUMERATION_LIMIT).matchings;
            for (u, v) in g.edges() {
                let expected = !pms.is_empty() && pms.iter().all(|m| m.contains(u, v));
                prop_assert_eq!(forced_edge(&g, (u, v)).unwrap(), expected);
            }
        }
    }
}
