use serde::{Deserialize, Serialize};

use super::{has_perfect_matching, MatchingError};
use crate::graph::{Combinations, ComponentPartition, Graph, VertexSet};

/// Largest order accepted by [`TutteMode::All`].
pub const ALL_VIOLATORS_MAX_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TutteMode {
    /// The lexicographically first violator of minimum size.
    FirstMinimal,
    /// Every violator of minimum size.
    AllMinimal,
    /// Every violator, by size then lexicographically.
    All,
}

/// A set `x` whose removal leaves more odd components than `|x|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteCertificate {
    pub x: VertexSet,
    /// Components of `G - x`, in original vertex labels.
    pub partition: ComponentPartition,
    /// `odd_count - |x|`, at least one.
    pub deficit: usize,
}

impl TutteCertificate {
    /// Recomputes the components of `g - x` and confirms the violation.
    pub fn verify(&self, g: &Graph) -> bool {
        let rest = g.vertices() - self.x;
        let partition = g.components_within(rest);
        partition == self.partition
            && partition.odd_count > self.x.len()
            && partition.odd_count - self.x.len() == self.deficit
    }
}

fn certificate(g: &Graph, x: VertexSet) -> Option<TutteCertificate> {
    let rest = g.vertices() - x;
    if g.odd_components_within(rest) <= x.len() {
        return None;
    }
    let partition = g.components_within(rest);
    let deficit = partition.odd_count - x.len();
    Some(TutteCertificate { x, partition, deficit })
}

/// Sets violating the Tutte condition, searched by size ascending and
/// lexicographically within a size. Empty exactly when `g` has a perfect
/// matching.
pub fn tutte_violators(g: &Graph, mode: TutteMode) -> Result<Vec<TutteCertificate>, MatchingError> {
    let n = g.order();
    if mode == TutteMode::All && n > ALL_VIOLATORS_MAX_ORDER {
        return Err(MatchingError::TooLarge {
            order: n,
            max: ALL_VIOLATORS_MAX_ORDER,
        });
    }
    if has_perfect_matching(g) {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    for size in 0..=n {
        for x in Combinations::new(g.vertices(), size) {
            if let Some(cert) = certificate(g, x) {
                if mode == TutteMode::FirstMinimal {
                    return Ok(vec![cert]);
                }
                found.push(cert);
            }
        }
        if mode == TutteMode::AllMinimal && !found.is_empty() {
            break;
        }
    }
    Ok(found)
}
