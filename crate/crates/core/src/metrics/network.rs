//! Metrics that need HTTP probes.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::offline::{LocalSubjects, QuadObserver};
use super::probe::{probe_batch, BodyCheck, HttpTransport, ProbeOutcome, ProbeStatus, ACCEPT_RDF, ACCEPT_SPARQL_RESULTS};
use super::{Measurement, MetricError, MetricResult, ProbeSettings};
use crate::rdf::{NamedNode, Quad};
use crate::vocab::ns;

const ASK_QUERY: &str = "query=ASK%20%7B%7D";

/// The endpoint URL with the `ASK {}` query parameter appended.
pub fn endpoint_query_url(endpoint: &str) -> String {
    let sep = if endpoint.contains('?') { '&' } else { '?' };
    format!("{endpoint}{sep}{ASK_QUERY}")
}

pub(crate) fn rdf_availability_from(outcome: &ProbeOutcome) -> Measurement {
    let ok = outcome.status == ProbeStatus::Ok;
    let detail = if ok {
        format!("parsed {} response", outcome.media_type.as_deref().unwrap_or("RDF"))
    } else {
        outcome.describe()
    };
    Measurement::boolean(ok, Some(detail))
}

pub(crate) fn endpoint_from(outcome: &ProbeOutcome) -> (Measurement, Result<Measurement, MetricError>) {
    let available = outcome.status == ProbeStatus::Ok;
    let detail = if available {
        "endpoint answered ASK".to_owned()
    } else {
        outcome.describe()
    };
    let latency = match (outcome.status, outcome.latency) {
        (ProbeStatus::Ok | ProbeStatus::HttpError(_) | ProbeStatus::UnparseableBody, Some(l)) => {
            Ok(Measurement::seconds(l.as_secs_f64(), None))
        }
        _ => Err(MetricError::Unavailable(format!("no latency: {}", outcome.describe()))),
    };
    (Measurement::boolean(available, Some(detail)), latency)
}

/// Deterministic sample of at most `max` subjects.
pub fn sample_subjects(subjects: &BTreeSet<NamedNode>, max: usize, seed: u64) -> Vec<NamedNode> {
    let all: Vec<&NamedNode> = subjects.iter().collect();
    if all.len() <= max {
        return all.into_iter().cloned().collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, all.len(), max).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| all[i].clone()).collect()
}

pub(crate) fn dereferenceability_from(
    total: usize,
    outcomes: &[ProbeOutcome],
    seed: u64,
) -> Measurement {
    if outcomes.is_empty() {
        return Measurement::ratio(1.0, Some("no local subjects".into()));
    }
    let ok = outcomes.iter().filter(|o| o.status == ProbeStatus::Ok).count();
    Measurement::ratio(
        ok as f64 / outcomes.len() as f64,
        Some(format!(
            "{ok} of {} sampled subjects dereferenceable (sampled {} of {total}, seed {seed})",
            outcomes.len(),
            outcomes.len()
        )),
    )
}

/// Dereferences `computed_on` with RDF content negotiation.
pub fn metric_rdf_availability(
    transport: &dyn HttpTransport,
    computed_on: &NamedNode,
    settings: &ProbeSettings,
) -> MetricResult {
    let outcome = &probe_batch(transport, &[(computed_on.as_str(), ACCEPT_RDF, BodyCheck::Rdf)], settings)[0];
    rdf_availability_from(outcome).into_result(ns::DQM_RDF_AVAILABILITY)
}

/// Sends `ASK {}` to the endpoint; returns availability and latency.
pub fn metric_endpoint_availability(
    transport: &dyn HttpTransport,
    endpoint: &str,
    settings: &ProbeSettings,
) -> (MetricResult, Result<MetricResult, MetricError>) {
    let url = endpoint_query_url(endpoint);
    let outcome = &probe_batch(transport, &[(url.as_str(), ACCEPT_SPARQL_RESULTS, BodyCheck::SparqlBoolean)], settings)[0];
    let (avail, latency) = endpoint_from(outcome);
    (
        avail.into_result(ns::DQM_ENDPOINT_AVAILABILITY),
        latency.map(|m| m.into_result(ns::DQM_ENDPOINT_LATENCY)),
    )
}

/// Fraction of sampled local subject IRIs that dereference to parseable RDF.
pub fn metric_dereferenceability_ratio(
    transport: &dyn HttpTransport,
    quads: impl IntoIterator<Item = impl AsRef<Quad>>,
    computed_on: &NamedNode,
    settings: &ProbeSettings,
) -> MetricResult {
    let mut local = LocalSubjects::new(computed_on);
    for q in quads {
        local.observe(q.as_ref());
    }
    let sample = sample_subjects(&local.subjects, settings.max_sample_size, settings.seed);
    let requests: Vec<_> = sample.iter().map(|s| (s.as_str(), ACCEPT_RDF, BodyCheck::Rdf)).collect();
    let outcomes = probe_batch(transport, &requests, settings);
    dereferenceability_from(local.subjects.len(), &outcomes, settings.seed).into_result(ns::DQM_DEREFERENCEABILITY)
}
