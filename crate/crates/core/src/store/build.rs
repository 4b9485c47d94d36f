use std::collections::BTreeMap;

use chrono::{DateTime, SecondsFormat, Utc};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::metrics::MetricResult;
use crate::rdf::{Literal, NamedNode, Quad, QuadDataset};
use crate::vocab::{ns, MetricDescriptor};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("metric class {0} appears more than once")]
    DuplicateMetric(NamedNode),
    #[error("classes {first} and {second} would share instance IRI {iri}")]
    InstanceCollision {
        iri: NamedNode,
        first: NamedNode,
        second: NamedNode,
    },
    #[error("result for {result} paired with descriptor for {descriptor}")]
    MismatchedResult { descriptor: NamedNode, result: NamedNode },
}

fn nn(iri: &str) -> NamedNode {
    NamedNode::new_unchecked(iri)
}

/// Lexical form used for `dc:date` and for observation IRI minting.
pub fn timestamp_lexical(timestamp: &DateTime<Utc>) -> String {
    timestamp.to_rfc3339_opts(SecondsFormat::AutoSi, true)
}

/// `graph/instance/{local name of class}`.
pub fn instance_iri(graph: &NamedNode, class: &NamedNode) -> NamedNode {
    nn(&format!("{}/instance/{}", graph.as_str().trim_end_matches('/'), class.local_name()))
}

/// `graph/obs/{digest}` where the digest covers metric class, assessed
/// resource and timestamp.
pub fn observation_iri(
    graph: &NamedNode,
    metric_class: &NamedNode,
    computed_on: &NamedNode,
    timestamp: &DateTime<Utc>,
) -> NamedNode {
    let mut h = Sha256::new();
    for part in [metric_class.as_str(), computed_on.as_str(), &timestamp_lexical(timestamp)] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    let digest = hex::encode(h.finalize());
    nn(&format!("{}/obs/{}", graph.as_str().trim_end_matches('/'), &digest[..32]))
}

/// Graph typing and structure statements shared by every quality graph.
pub fn graph_header(graph: &NamedNode) -> Vec<Quad> {
    let g = Some(graph.clone());
    vec![
        Quad::new(graph.clone(), nn(ns::RDF_TYPE), nn(ns::DAQ_QUALITY_GRAPH), g.clone()),
        Quad::new(graph.clone(), nn(ns::RDF_TYPE), nn(ns::QB_DATA_SET), g.clone()),
        Quad::new(graph.clone(), nn(ns::QB_STRUCTURE), nn(ns::DAQ_DSD), g),
    ]
}

/// Emits a quality graph for one assessment run.
pub fn build_quality_graph(
    results: &[(MetricDescriptor, MetricResult)],
    computed_on: &NamedNode,
    timestamp: &DateTime<Utc>,
    graph: &NamedNode,
) -> Result<QuadDataset, BuildError> {
    let mut seen: BTreeMap<NamedNode, NamedNode> = BTreeMap::new();
    let mut mint = |class: &NamedNode| -> Result<NamedNode, BuildError> {
        let iri = instance_iri(graph, class);
        match seen.get(&iri) {
            Some(existing) if existing != class => Err(BuildError::InstanceCollision {
                iri,
                first: existing.clone(),
                second: class.clone(),
            }),
            _ => {
                seen.insert(iri.clone(), class.clone());
                Ok(iri)
            }
        }
    };

    let mut metric_classes = std::collections::BTreeSet::new();
    for (d, r) in results {
        if d.metric_class != r.metric_class {
            return Err(BuildError::MismatchedResult {
                descriptor: d.metric_class.clone(),
                result: r.metric_class.clone(),
            });
        }
        if !metric_classes.insert(d.metric_class.clone()) {
            return Err(BuildError::DuplicateMetric(d.metric_class.clone()));
        }
    }

    let g = Some(graph.clone());
    let mut out = QuadDataset::new();
    for (prefix, iri) in ns::PREFIXES {
        out.set_prefix(*prefix, *iri);
    }
    out.extend(graph_header(graph));
    let ty = nn(ns::RDF_TYPE);
    let date = Literal::new_typed(timestamp_lexical(timestamp), nn(ns::XSD_DATE_TIME));

    for (d, r) in results {
        let category = mint(&d.category_class)?;
        let dimension = mint(&d.dimension_class)?;
        let metric = mint(&d.metric_class)?;
        out.insert(Quad::new(category.clone(), ty.clone(), d.category_class.clone(), g.clone()));
        out.insert(Quad::new(dimension.clone(), ty.clone(), d.dimension_class.clone(), g.clone()));
        out.insert(Quad::new(metric.clone(), ty.clone(), d.metric_class.clone(), g.clone()));
        out.insert(Quad::new(category, d.has_dimension_property.clone(), dimension.clone(), g.clone()));
        out.insert(Quad::new(dimension, d.has_metric_property.clone(), metric.clone(), g.clone()));

        let obs = observation_iri(graph, &d.metric_class, computed_on, timestamp);
        out.insert(Quad::new(metric.clone(), nn(ns::DAQ_HAS_OBSERVATION), obs.clone(), g.clone()));
        out.insert(Quad::new(obs.clone(), ty.clone(), nn(ns::QB_OBSERVATION), g.clone()));
        out.insert(Quad::new(obs.clone(), nn(ns::DAQ_METRIC), metric, g.clone()));
        out.insert(Quad::new(obs.clone(), nn(ns::DAQ_COMPUTED_ON), computed_on.clone(), g.clone()));
        out.insert(Quad::new(obs.clone(), nn(ns::DAQ_VALUE), r.value.clone(), g.clone()));
        out.insert(Quad::new(obs.clone(), nn(ns::DC_DATE), date.clone(), g.clone()));
        out.insert(Quad::new(obs.clone(), nn(ns::QB_DATA_SET_PROP), graph.clone(), g.clone()));
        if let Some(unit) = r.unit_measure.as_ref().or(d.unit_measure.as_ref()) {
            out.insert(Quad::new(obs, nn(ns::SDMX_UNIT_MEASURE), unit.clone(), g.clone()));
        }
    }
    Ok(out)
}
