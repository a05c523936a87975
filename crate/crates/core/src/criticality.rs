//! k-factor-criticality and minimality.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Combinations, Graph, GraphError, VertexSet};
use crate::matching::{forced_edge, has_perfect_matching_in};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalityError {
    #[error("k = {k} and order {order} differ in parity")]
    ParityMismatch { order: usize, k: usize },
    #[error("k = {k} is out of range for order {order}")]
    KOutOfRange { order: usize, k: usize },
    #[error("graph is not {k}-factor-critical (removing {failing_set} leaves no perfect matching)")]
    NotCritical { k: usize, failing_set: VertexSet },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("{theorem} violated: {detail}")]
    TheoremViolated { theorem: String, detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Definitional,
    TutteType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub k: usize,
    pub verdict: bool,
    /// A k-set whose removal leaves no perfect matching (definitional), or
    /// a set `B` with too many odd components in `G - B` (Tutte-type).
    pub failing_set: Option<VertexSet>,
    pub method: Method,
}

impl CriticalityReport {
    /// Re-checks the failing set, if any, against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        match (self.verdict, self.failing_set) {
            (true, None) => true,
            (false, Some(s)) => match self.method {
                Method::Definitional => {
                    s.len() == self.k && !has_perfect_matching_in(g, g.vertices() - s)
                }
                Method::TutteType => {
                    s.len() >= self.k
                        && g.odd_components_within(g.vertices() - s) + self.k > s.len()
                }
            },
            _ => false,
        }
    }
}

/// Rejects `k` unless `0 <= k < n` and `n - k` is even.
pub fn validate_k(g: &Graph, k: usize) -> Result<(), CriticalityError> {
    let order = g.order();
    if k >= order {
        return Err(CriticalityError::KOutOfRange { order, k });
    }
    if !(order - k).is_multiple_of(2) {
        return Err(CriticalityError::ParityMismatch { order, k });
    }
    Ok(())
}

/// First k-set (lexicographically) whose removal leaves no perfect
/// matching, among sets avoiding `avoid`. No validation of `k`.
pub(crate) fn first_failing_set(g: &Graph, k: usize, avoid: VertexSet) -> Option<VertexSet> {
    let all = g.vertices();
    Combinations::new(all - avoid, k).find(|&s| {
        let rest = all - s;
        // an isolated survivor settles it without a search
        rest.iter().any(|v| g.neighbors(v).is_subset(s)) || !has_perfect_matching_in(g, rest)
    })
}

pub fn is_k_factor_critical(g: &Graph, k: usize) -> Result<CriticalityReport, CriticalityError> {
    validate_k(g, k)?;
    let failing_set = first_failing_set(g, k, VertexSet::EMPTY);
    Ok(CriticalityReport {
        k,
        verdict: failing_set.is_none(),
        failing_set,
        method: Method::Definitional,
    })
}

/// Criticality through the odd-component condition: `G - B` has at most
/// `|B| - k` odd components for every `B` with `|B| >= k`. Exponential in
/// the order; meant for small graphs.
pub fn kfc_via_tutte(g: &Graph, k: usize) -> Result<CriticalityReport, CriticalityError> {
    validate_k(g, k)?;
    let all = g.vertices();
    let failing_set = (k..=g.order()).find_map(|size| {
        Combinations::new(all, size).find(|&b| g.odd_components_within(all - b) + k > size)
    });
    Ok(CriticalityReport {
        k,
        verdict: failing_set.is_none(),
        failing_set,
        method: Method::TutteType,
    })
}

/// Whether removing `uv` from a k-critical graph destroys criticality.
/// Sets containing `u` or `v` are unaffected by the edge, so only sets
/// avoiding both are scanned. Fails with `NotCritical` if a scanned set
/// shows `g` itself is not k-critical.
fn edge_is_essential(g: &Graph, k: usize, u: usize, v: usize) -> Result<bool, CriticalityError> {
    // u keeps degree d(u) - 1 <= k in G - uv and is cut off by removing
    // its other neighbours (padded to k)
    if g.degree(u).min(g.degree(v)) <= k + 1 {
        return Ok(true);
    }
    Ok(witnesses(g, k, u, v, true)?.into_iter().next().is_some())
}

fn witnesses(
    g: &Graph,
    k: usize,
    u: usize,
    v: usize,
    first_only: bool,
) -> Result<Vec<VertexSet>, CriticalityError> {
    let all = g.vertices();
    let mut h = g.clone();
    h.clear_edge(u, v);
    let mut found = Vec::new();
    for s in Combinations::new(all - VertexSet::singleton(u).with(v), k) {
        let rest = all - s;
        if has_perfect_matching_in(&h, rest) {
            continue;
        }
        if !has_perfect_matching_in(g, rest) {
            return Err(CriticalityError::NotCritical { k, failing_set: s });
        }
        found.push(s);
        if first_only {
            break;
        }
    }
    Ok(found)
}

fn check_edge(g: &Graph, (u, v): (usize, usize)) -> Result<(), CriticalityError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.has_edge(u, v) {
        return Err(GraphError::EdgeAbsent(u, v).into());
    }
    Ok(())
}

pub fn is_minimally_kfc(g: &Graph, k: usize) -> Result<bool, CriticalityError> {
    if !is_k_factor_critical(g, k)?.verdict {
        return Ok(false);
    }
    for (u, v) in g.edges() {
        if !edge_is_essential(g, k, u, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lexicographically first k-set `S` avoiding `u, v` such that every
/// perfect matching of `G - S` uses `uv`. `None` means `G - uv` is still
/// k-critical.
pub fn minimality_witness(
    g: &Graph,
    k: usize,
    e: (usize, usize),
) -> Result<Option<VertexSet>, CriticalityError> {
    validate_k(g, k)?;
    check_edge(g, e)?;
    Ok(witnesses(g, k, e.0, e.1, true)?.into_iter().next())
}

/// Every witness for `e`, in lexicographic order.
pub fn minimality_witnesses(
    g: &Graph,
    k: usize,
    e: (usize, usize),
) -> Result<Vec<VertexSet>, CriticalityError> {
    validate_k(g, k)?;
    check_edge(g, e)?;
    witnesses(g, k, e.0, e.1, false)
}

/// One witness per edge, proving that no edge can be dropped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityCertificate {
    pub k: usize,
    #[serde(with = "edge_map")]
    pub witnesses: BTreeMap<(usize, usize), VertexSet>,
}

impl MinimalityCertificate {
    /// Checks every witness independently through [`forced_edge`].
    pub fn verify(&self, g: &Graph) -> bool {
        let edges: Vec<_> = g.edges().collect();
        edges.len() == self.witnesses.len()
            && edges.iter().all(|&(u, v)| {
                let Some(&s) = self.witnesses.get(&(u, v)) else {
                    return false;
                };
                if s.len() != self.k || s.contains(u) || s.contains(v) {
                    return false;
                }
                let Ok(d) = g.delete_vertices(s) else {
                    return false;
                };
                let (nu, nv) = (d.old_to_new[u].unwrap(), d.old_to_new[v].unwrap());
                forced_edge(&d.graph, (nu, nv)) == Ok(true)
            })
    }
}

/// Witnesses for every edge of a k-critical graph, or `None` if some edge
/// has none (the graph is not minimal).
pub fn minimality_certificate(
    g: &Graph,
    k: usize,
) -> Result<Option<MinimalityCertificate>, CriticalityError> {
    let report = is_k_factor_critical(g, k)?;
    if let Some(failing_set) = report.failing_set {
        return Err(CriticalityError::NotCritical { k, failing_set });
    }
    let mut map = BTreeMap::new();
    for (u, v) in g.edges() {
        match witnesses(g, k, u, v, true)?.into_iter().next() {
            Some(s) => {
                map.insert((u, v), s);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(MinimalityCertificate { k, witnesses: map }))
}

/// For a non-edge `xy` with `d(x) + d(y) >= n + k - 1`, reports whether
/// adding `xy` leaves k-criticality unchanged. Expected always true.
pub fn ps_reduction_check(
    g: &Graph,
    k: usize,
    x: usize,
    y: usize,
) -> Result<bool, CriticalityError> {
    validate_k(g, k)?;
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(GraphError::Loop(x).into());
    }
    if g.has_edge(x, y) {
        return Err(CriticalityError::PreconditionUnmet(format!(
            "{x}{y} is already an edge"
        )));
    }
    let n = g.order();
    let sum = g.degree(x) + g.degree(y);
    if sum + 1 < n + k {
        return Err(CriticalityError::PreconditionUnmet(format!(
            "d({x}) + d({y}) = {sum} < n + k - 1 = {}",
            n + k - 1
        )));
    }
    let mut plus = g.clone();
    plus.set_edge(x, y);
    let before = first_failing_set(g, k, VertexSet::EMPTY).is_none();
    let after = first_failing_set(&plus, k, VertexSet::EMPTY).is_none();
    Ok(before == after)
}

/// For a k-critical graph with `k >= 1`: vertex connectivity at least `k`,
/// edge connectivity at least `k + 1`, and (when `k >= 2`) (k-2)-critical.
/// Expected always true.
pub fn downward_criticality_check(g: &Graph, k: usize) -> Result<bool, CriticalityError> {
    validate_k(g, k)?;
    if k == 0 {
        return Err(CriticalityError::PreconditionUnmet("k must be at least 1".into()));
    }
    if let Some(failing_set) = first_failing_set(g, k, VertexSet::EMPTY) {
        return Err(CriticalityError::PreconditionUnmet(format!(
            "graph is not {k}-factor-critical (fails at {failing_set})"
        )));
    }
    let c = g.connectivity()?;
    let mut ok = c.vertex >= k && c.edge > k;
    if k >= 2 {
        ok &= first_failing_set(g, k - 2, VertexSet::EMPTY).is_none();
    }
    Ok(ok)
}

mod edge_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::VertexSet;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        edge: (usize, usize),
        witness: VertexSet,
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<(usize, usize), VertexSet>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter().map(|(&edge, &witness)| Entry { edge, witness }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<(usize, usize), VertexSet>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?
            .into_iter()
            .map(|e| (e.edge, e.witness))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use proptest::prelude::*;

    fn set(items: &[usize]) -> VertexSet {
        items.iter().copied().collect()
    }

    /// Criticality straight from the definition, with a plain brute-force
    /// perfect-matching test.
    fn kfc_oracle(g: &Graph, k: usize) -> bool {
        fn pm(g: &Graph, mask: u64) -> bool {
            if mask == 0 {
                return true;
            }
            let v = mask.trailing_zeros() as usize;
            let rest = mask & !(1u64 << v);
            VertexSet::from_bits(g.rows()[v] & rest)
                .iter()
                .any(|w| pm(g, rest & !(1u64 << w)))
        }
        Combinations::new(g.vertices(), k).all(|s| pm(g, (g.vertices() - s).bits()))
    }

    #[test]
    fn definitional_examples() {
        let r = is_k_factor_critical(&complete(5), 3).unwrap();
        assert!(r.verdict && r.failing_set.is_none());
        assert!(is_k_factor_critical(&cycle(5), 1).unwrap().verdict);
        let c6 = is_k_factor_critical(&cycle(6), 2).unwrap();
        assert!(!c6.verdict);
        assert_eq!(c6.failing_set, Some(set(&[0, 2])));
        assert!(c6.verify(&cycle(6)));
    }

    #[test]
    fn k_is_validated() {
        assert_eq!(
            is_k_factor_critical(&complete(5), 2),
            Err(CriticalityError::ParityMismatch { order: 5, k: 2 })
        );
        assert_eq!(
            is_k_factor_critical(&complete(5), 5),
            Err(CriticalityError::KOutOfRange { order: 5, k: 5 })
        );
        assert!(matches!(
            kfc_via_tutte(&complete(4), 1),
            Err(CriticalityError::ParityMismatch { .. })
        ));
    }

    #[test]
    fn tutte_type_examples() {
        assert!(kfc_via_tutte(&complete(5), 3).unwrap().verdict);
        let claw = kfc_via_tutte(&star(3), 0).unwrap();
        assert_eq!(claw.failing_set, Some(set(&[0])));
        let c6 = kfc_via_tutte(&cycle(6), 2).unwrap();
        assert_eq!(c6.failing_set, Some(set(&[0, 2])));
        // {1} and {3,4,5} are both odd
        assert_eq!(cycle(6).odd_components_within(set(&[1, 3, 4, 5])), 2);
        assert!(c6.verify(&cycle(6)));
    }

    #[test]
    fn minimality_examples() {
        assert!(is_minimally_kfc(&complete(6), 4).unwrap());
        assert!(!is_minimally_kfc(&complete(8), 2).unwrap());
        assert!(is_minimally_kfc(&cycle(5), 1).unwrap());
        // not critical at all
        assert!(!is_minimally_kfc(&cycle(6), 2).unwrap());
    }

    #[test]
    fn complete_graphs_are_minimally_critical_at_top_level() {
        for n in 4..=10 {
            assert!(is_minimally_kfc(&complete(n), n - 2).unwrap(), "K{n}");
        }
    }

    #[test]
    fn witness_examples() {
        assert_eq!(
            minimality_witness(&complete(6), 4, (1, 3)).unwrap(),
            Some(set(&[0, 2, 4, 5]))
        );
        // C5 with edge 01: removing 2 or 4 leaves a path whose only
        // perfect matching uses 01; removing 3 leaves 1-2, 4-0 as well
        let c5 = cycle(5);
        assert_eq!(
            minimality_witnesses(&c5, 1, (0, 1)).unwrap(),
            vec![set(&[2]), set(&[4])]
        );
        assert_eq!(minimality_witness(&c5, 1, (0, 1)).unwrap(), Some(set(&[2])));
        assert_eq!(minimality_witness(&complete(8), 2, (0, 1)).unwrap(), None);
        assert_eq!(
            minimality_witness(&star(3), 0, (0, 1)),
            Err(CriticalityError::NotCritical { k: 0, failing_set: VertexSet::EMPTY })
        );
        assert!(matches!(
            minimality_witness(&c5, 1, (0, 2)),
            Err(CriticalityError::Graph(GraphError::EdgeAbsent(0, 2)))
        ));
    }

    #[test]
    fn certificates_verify() {
        let cert = minimality_certificate(&cycle(5), 1).unwrap().unwrap();
        assert_eq!(cert.witnesses.len(), 5);
        assert!(cert.verify(&cycle(5)));
        let json = serde_json::to_string(&cert).unwrap();
        let back: MinimalityCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        assert_eq!(minimality_certificate(&complete(8), 2).unwrap(), None);
        assert!(matches!(
            minimality_certificate(&cycle(6), 2),
            Err(CriticalityError::NotCritical { .. })
        ));
    }

    #[test]
    fn ps_reduction_examples() {
        let k6e = complete(6).remove_edge(0, 1).unwrap();
        assert_eq!(ps_reduction_check(&k6e, 2, 0, 1), Ok(true));
        assert!(is_k_factor_critical(&k6e, 2).unwrap().verdict);
        assert!(matches!(
            ps_reduction_check(&cycle(6), 0, 0, 3),
            Err(CriticalityError::PreconditionUnmet(_))
        ));
        let k5e = complete(5).remove_edge(0, 1).unwrap();
        assert_eq!(ps_reduction_check(&k5e, 1, 0, 1), Ok(true));
        assert!(matches!(
            ps_reduction_check(&complete(5), 1, 0, 1),
            Err(CriticalityError::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn downward_examples() {
        assert_eq!(downward_criticality_check(&complete(6), 4), Ok(true));
        assert_eq!(downward_criticality_check(&wheel(5), 2), Ok(true));
        assert_eq!(downward_criticality_check(&cycle(5), 1), Ok(true));
        assert!(matches!(
            downward_criticality_check(&cycle(6), 0),
            Err(CriticalityError::PreconditionUnmet(_))
        ));
        assert!(matches!(
            downward_criticality_check(&cycle(6), 2),
            Err(CriticalityError::PreconditionUnmet(_))
        ));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..=8, 1u8..100).prop_flat_map(|(n, density)| {
            proptest::collection::vec(0u8..100, n * (n - 1) / 2).prop_map(move |raw| {
                let mut g = Graph::empty(n).unwrap();
                let mut it = raw.iter();
                for v in 1..n {
                    for u in 0..v {
                        if *it.next().unwrap() < density.max(40) {
                            g.set_edge(u, v);
                        }
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn definitional_tutte_and_oracle_agree(g in arb_graph()) {
            let n = g.order();
            for k in (n % 2..n).step_by(2) {
                let a = is_k_factor_critical(&g, k).unwrap();
                let b = kfc_via_tutte(&g, k).unwrap();
                prop_assert_eq!(a.verdict, b.verdict);
                prop_assert_eq!(a.verdict, kfc_oracle(&g, k));
                prop_assert!(a.verify(&g) && b.verify(&g));
            }
        }

        #[test]
        fn minimality_matches_edge_deletion(g in arb_graph()) {
            let n = g.order();
            for k in (n % 2..n).step_by(2) {
                if !kfc_oracle(&g, k) {
                    continue;
                }
                let by_deletion = g.edges().all(|(u, v)| {
                    !kfc_oracle(&g.remove_edge(u, v).unwrap(), k)
                });
                prop_assert_eq!(is_minimally_kfc(&g, k).unwrap(), by_deletion);
                for (u, v) in g.edges() {
                    let w = minimality_witness(&g, k, (u, v)).unwrap();
                    prop_assert_eq!(w.is_some(), !kfc_oracle(&g.remove_edge(u, v).unwrap(), k));
                }
                if let Some(cert) = minimality_certificate(&g, k).unwrap() {
                    prop_assert!(cert.verify(&g));
                }
            }
        }
    }
}
