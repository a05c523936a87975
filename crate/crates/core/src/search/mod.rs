//! Graph catalogs, catalog-wide surveys and counterexample hunts.

mod canon;
mod catalog;
mod random;
mod survey;

use std::path::PathBuf;

use thiserror::Error;

use crate::graph::Graph6Error;
use crate::verifiers::TheoremId;

pub use canon::{are_isomorphic, canonical_code, canonical_form};
pub use catalog::{
    generate, ingest, Catalog, CatalogSource, DedupMode, Ingested, GENERATE_MAX_ORDER,
};
pub use random::random_minimal_kfc;
pub use survey::{
    hunt_counterexamples, survey, survey_with, Counterexample, EdgeLabel, GraphFailure,
    GraphRecord, KRule, PredicateTally, ProfileCount, SurveyCounts, SurveyOptions, SurveyReport,
    VerdictTally,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {order} is above the generator limit {max}; ingest a catalog file instead")]
    OrderTooLargeForGenerate { order: usize, max: usize },
    #[error("cannot read {path}: {reason}", path = path.display())]
    FileUnreadable { path: PathBuf, reason: String },
    #[error("line {line}: order {found} differs from the catalog order {expected}")]
    MixedOrder {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("k = {k} is not valid for order {order} (need 1 <= k <= n - 2, same parity)")]
    InvalidK { order: usize, k: usize },
    #[error("{theorem} violated by {graph6}: {detail}")]
    TheoremViolated {
        theorem: TheoremId,
        graph6: String,
        detail: String,
    },
    #[error("configuration predicate failed on {graph6}: {detail}")]
    PredicateFailed { graph6: String, detail: String },
    #[error("writing records: {0}")]
    Output(String),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}
