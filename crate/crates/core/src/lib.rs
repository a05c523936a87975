//! Matching and factor-criticality checks on small simple graphs.

pub mod graph;
pub mod configurations;
pub mod criticality;
pub mod matching;
pub mod search;
pub mod verifiers;

pub use graph::{Graph, GraphError, VertexSet};
