//! Quality graphs: building, validation and merging of assessment runs.

mod build;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::rdf::{NamedNode, Quad, QuadDataset, Subject, Term};
use crate::vocab::ns;

pub use build::{build_quality_graph, graph_header, instance_iri, observation_iri, timestamp_lexical, BuildError};
pub use validate::{validate, ValidationReport, Violation, ViolationCode};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MergeError {
    #[error("observation {0} exists in both runs with different content")]
    ObservationCollision(NamedNode),
}

fn observation_statements(data: &QuadDataset, graph: &NamedNode) -> BTreeMap<NamedNode, BTreeSet<(NamedNode, Term)>> {
    let view = data.graph_view(Some(graph));
    let observations: BTreeSet<&NamedNode> = view
        .iter()
        .filter(|q| q.predicate == ns::RDF_TYPE && q.object.as_named_node().is_some_and(|c| c == ns::QB_OBSERVATION))
        .filter_map(|q| q.subject.as_named_node())
        .collect();
    let mut out: BTreeMap<NamedNode, BTreeSet<(NamedNode, Term)>> = BTreeMap::new();
    for q in &view {
        if let Subject::NamedNode(s) = &q.subject {
            if observations.contains(s) {
                out.entry(s.clone()).or_default().insert((q.predicate.clone(), q.object.clone()));
            }
        }
    }
    out
}

/// Union of two runs stored in `graph`. Scaffold instances deduplicate
/// because their IRIs are minted per class; nothing is ever removed.
pub fn merge_runs(existing: &QuadDataset, addition: &QuadDataset, graph: &NamedNode) -> Result<QuadDataset, MergeError> {
    let left = observation_statements(existing, graph);
    let right = observation_statements(addition, graph);
    for (iri, statements) in &right {
        if let Some(other) = left.get(iri) {
            if other != statements {
                return Err(MergeError::ObservationCollision(iri.clone()));
            }
        }
    }
    let mut merged = existing.clone();
    merged.extend_from(addition);
    Ok(merged)
}

/// Convenience: every quad of one graph.
pub fn graph_quads(data: &QuadDataset, graph: &NamedNode) -> Vec<Quad> {
    data.graph_iter(Some(graph)).cloned().collect()
}
