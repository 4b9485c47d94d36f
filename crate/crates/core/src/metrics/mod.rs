//! Streaming quality assessment.
//!
//! [`assess`] reads the target's quads exactly once, feeding each quad to
//! every selected offline metric, then runs all HTTP probes in one bounded
//! parallel batch. Results come back in the order metrics were selected.

mod lexical;
mod network;
mod offline;
mod probe;

use std::time::Duration;

use chrono::{DateTime, Utc};
use thiserror::Error;

use crate::rdf::{format_double, Literal, NamedNode, Quad, QuadDataset};
use crate::vocab::{ns, MetricDescriptor};

pub use lexical::lexical_form_is_valid;
pub use network::{
    endpoint_query_url, metric_dereferenceability_ratio, metric_endpoint_availability, metric_rdf_availability,
    sample_subjects,
};
pub use offline::{authority, metric_datatype_consistency, metric_external_linkage_ratio, metric_labeled_resource_ratio};
pub use probe::{
    probe_http, probe_many, BodyCheck, HttpTransport, ProbeOutcome, ProbeStatus, RawResponse, ReqwestTransport,
    TransportError, ACCEPT_RDF, ACCEPT_SPARQL_RESULTS,
};

use offline::{DatatypeConsistency, ExternalLinkage, LabeledResources, LocalSubjects, QuadObserver};
use probe::probe_batch;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeSettings {
    pub connect_timeout: Duration,
    pub request_timeout: Duration,
    pub max_parallel_probes: usize,
    pub max_sample_size: usize,
    pub retry_count: u32,
    pub endpoint_url: Option<String>,
    /// Seeds dereferenceability sampling.
    pub seed: u64,
}

impl Default for ProbeSettings {
    fn default() -> Self {
        ProbeSettings {
            connect_timeout: Duration::from_secs(5),
            request_timeout: Duration::from_secs(10),
            max_parallel_probes: 4,
            max_sample_size: 20,
            retry_count: 0,
            endpoint_url: None,
            seed: 0,
        }
    }
}

impl ProbeSettings {
    pub fn validate(&self) -> Result<(), JobError> {
        let bad = |m: &str| Err(JobError::InvalidSettings(m.to_owned()));
        if self.connect_timeout.is_zero() || self.request_timeout.is_zero() {
            return bad("timeouts must be positive");
        }
        if self.max_parallel_probes == 0 {
            return bad("max_parallel_probes must be at least 1");
        }
        if self.max_sample_size == 0 {
            return bad("max_sample_size must be at least 1");
        }
        if let Some(url) = &self.endpoint_url {
            if url::Url::parse(url).is_err() {
                return bad("endpoint_url is not a valid URL");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JobError {
    #[error("no metrics selected")]
    NoMetrics,
    #[error("invalid probe settings: {0}")]
    InvalidSettings(String),
}

#[derive(Debug, Clone)]
pub struct AssessmentJob {
    pub target: QuadDataset,
    pub computed_on: NamedNode,
    pub metrics: Vec<MetricDescriptor>,
    pub timestamp: DateTime<Utc>,
    pub probe: ProbeSettings,
}

impl AssessmentJob {
    pub fn new(
        target: QuadDataset,
        computed_on: NamedNode,
        metrics: Vec<MetricDescriptor>,
        timestamp: DateTime<Utc>,
        probe: ProbeSettings,
    ) -> Result<Self, JobError> {
        if metrics.is_empty() {
            return Err(JobError::NoMetrics);
        }
        probe.validate()?;
        Ok(AssessmentJob {
            target,
            computed_on,
            metrics,
            timestamp,
            probe,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricResult {
    pub metric_class: NamedNode,
    pub value: Literal,
    pub unit_measure: Option<NamedNode>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("no implementation for metric class {0}")]
    Unsupported(NamedNode),
    #[error("{0} is not configured")]
    NotConfigured(&'static str),
    #[error("{0}")]
    Unavailable(String),
    #[error("metric produces {produced} values but {expected} is expected")]
    DatatypeMismatch { expected: NamedNode, produced: &'static str },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricOutcome {
    pub descriptor: MetricDescriptor,
    pub result: Result<MetricResult, MetricError>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum MetricValue {
    Boolean(bool),
    Ratio(f64),
    Seconds(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Measurement {
    pub(crate) value: MetricValue,
    pub(crate) detail: Option<String>,
}

impl Measurement {
    pub(crate) fn ratio(v: f64, detail: Option<String>) -> Self {
        debug_assert!((0.0..=1.0).contains(&v));
        Measurement {
            value: MetricValue::Ratio(v),
            detail,
        }
    }

    pub(crate) fn boolean(v: bool, detail: Option<String>) -> Self {
        Measurement {
            value: MetricValue::Boolean(v),
            detail,
        }
    }

    pub(crate) fn seconds(v: f64, detail: Option<String>) -> Self {
        Measurement {
            value: MetricValue::Seconds(v),
            detail,
        }
    }

    /// Result with the shipped catalog's datatype for this value kind.
    pub(crate) fn into_result(self, class: &str) -> MetricResult {
        let datatype = match self.value {
            MetricValue::Boolean(_) => ns::XSD_BOOLEAN,
            _ => ns::XSD_DOUBLE,
        };
        self.typed(NamedNode::new_unchecked(class), &NamedNode::new_unchecked(datatype), None)
            .expect("catalog datatypes match")
    }

    fn typed(
        self,
        metric_class: NamedNode,
        datatype: &NamedNode,
        unit: Option<&NamedNode>,
    ) -> Result<MetricResult, MetricError> {
        let mismatch = |produced| MetricError::DatatypeMismatch {
            expected: datatype.clone(),
            produced,
        };
        let (value, unit_measure) = match self.value {
            MetricValue::Boolean(b) if datatype == ns::XSD_BOOLEAN => (Literal::boolean(b), None),
            MetricValue::Boolean(_) => return Err(mismatch("boolean")),
            MetricValue::Ratio(v) | MetricValue::Seconds(v) => {
                let lexical = match datatype.as_str() {
                    ns::XSD_DOUBLE | ns::XSD_FLOAT => format_double(v),
                    ns::XSD_DECIMAL => format!("{v}"),
                    _ => return Err(mismatch("numeric")),
                };
                let unit = match self.value {
                    MetricValue::Seconds(_) => Some(unit.cloned().unwrap_or_else(|| NamedNode::new_unchecked(ns::UNIT_SECOND))),
                    _ => unit.cloned(),
                };
                (Literal::new_typed(lexical, datatype.clone()), unit)
            }
        };
        Ok(MetricResult {
            metric_class,
            value,
            unit_measure,
            detail: self.detail,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    DatatypeConsistency,
    LabeledResources,
    ExternalLinkage,
    RdfAvailability,
    EndpointAvailability,
    EndpointLatency,
    Dereferenceability,
}

impl Kind {
    fn of(class: &NamedNode) -> Option<Kind> {
        Some(match class.as_str() {
            ns::DQM_DATATYPE_CONSISTENCY => Kind::DatatypeConsistency,
            ns::DQM_LABELED_RESOURCES => Kind::LabeledResources,
            ns::DQM_EXTERNAL_LINKAGE => Kind::ExternalLinkage,
            ns::DQM_RDF_AVAILABILITY => Kind::RdfAvailability,
            ns::DQM_ENDPOINT_AVAILABILITY => Kind::EndpointAvailability,
            ns::DQM_ENDPOINT_LATENCY => Kind::EndpointLatency,
            ns::DQM_DEREFERENCEABILITY => Kind::Dereferenceability,
            _ => return None,
        })
    }
}

/// Metric classes the engine can compute.
pub fn implemented_metric_classes() -> [&'static str; 7] {
    [
        ns::DQM_RDF_AVAILABILITY,
        ns::DQM_ENDPOINT_AVAILABILITY,
        ns::DQM_ENDPOINT_LATENCY,
        ns::DQM_DEREFERENCEABILITY,
        ns::DQM_EXTERNAL_LINKAGE,
        ns::DQM_DATATYPE_CONSISTENCY,
        ns::DQM_LABELED_RESOURCES,
    ]
}

/// Runs the job over its own target dataset.
pub fn assess(job: &AssessmentJob, transport: &dyn HttpTransport) -> Vec<MetricOutcome> {
    assess_stream(job, job.target.iter(), transport)
}

/// Runs the job over an externally supplied stream of the target's quads.
/// The stream is consumed exactly once.
pub fn assess_stream<'q>(
    job: &AssessmentJob,
    quads: impl IntoIterator<Item = &'q Quad>,
    transport: &dyn HttpTransport,
) -> Vec<MetricOutcome> {
    let kinds: Vec<Option<Kind>> = job.metrics.iter().map(|d| Kind::of(&d.metric_class)).collect();
    let wants = |k: Kind| kinds.contains(&Some(k));

    let mut datatype = wants(Kind::DatatypeConsistency).then(DatatypeConsistency::default);
    let mut labeled = wants(Kind::LabeledResources).then(LabeledResources::default);
    let mut linkage = wants(Kind::ExternalLinkage).then(|| ExternalLinkage::new(&job.computed_on));
    let mut local = wants(Kind::Dereferenceability).then(|| LocalSubjects::new(&job.computed_on));
    {
        let mut observers: Vec<&mut dyn QuadObserver> = Vec::new();
        if let Some(o) = datatype.as_mut() {
            observers.push(o);
        }
        if let Some(o) = labeled.as_mut() {
            observers.push(o);
        }
        if let Some(o) = linkage.as_mut() {
            observers.push(o);
        }
        if let Some(o) = local.as_mut() {
            observers.push(o);
        }
        for quad in quads {
            for o in observers.iter_mut() {
                o.observe(quad);
            }
        }
    }

    // Probe phase: every request goes through one bounded batch.
    let settings = &job.probe;
    let endpoint_url = settings.endpoint_url.as_deref().map(endpoint_query_url);
    let sample = local
        .as_ref()
        .map(|l| sample_subjects(&l.subjects, settings.max_sample_size, settings.seed))
        .unwrap_or_default();
    let mut requests: Vec<(&str, &str, BodyCheck)> = Vec::new();
    let rdf_slot = wants(Kind::RdfAvailability).then(|| {
        requests.push((job.computed_on.as_str(), ACCEPT_RDF, BodyCheck::Rdf));
        requests.len() - 1
    });
    let endpoint_slot = match &endpoint_url {
        Some(url) if wants(Kind::EndpointAvailability) || wants(Kind::EndpointLatency) => {
            requests.push((url.as_str(), ACCEPT_SPARQL_RESULTS, BodyCheck::SparqlBoolean));
            Some(requests.len() - 1)
        }
        _ => None,
    };
    let deref_start = requests.len();
    requests.extend(sample.iter().map(|s| (s.as_str(), ACCEPT_RDF, BodyCheck::Rdf)));
    let outcomes = if requests.is_empty() {
        Vec::new()
    } else {
        probe_batch(transport, &requests, settings)
    };
    let endpoint = endpoint_slot.map(|i| network::endpoint_from(&outcomes[i]));

    let datatype = datatype.map(DatatypeConsistency::finish);
    let labeled = labeled.map(LabeledResources::finish);
    let linkage = linkage.map(ExternalLinkage::finish);
    let deref = local.map(|l| network::dereferenceability_from(l.subjects.len(), &outcomes[deref_start..], settings.seed));

    job.metrics
        .iter()
        .zip(kinds)
        .map(|(d, kind)| {
            let measured: Result<Measurement, MetricError> = match kind {
                None => Err(MetricError::Unsupported(d.metric_class.clone())),
                Some(Kind::DatatypeConsistency) => Ok(datatype.clone().expect("observed")),
                Some(Kind::LabeledResources) => Ok(labeled.clone().expect("observed")),
                Some(Kind::ExternalLinkage) => Ok(linkage.clone().expect("observed")),
                Some(Kind::Dereferenceability) => Ok(deref.clone().expect("sampled")),
                Some(Kind::RdfAvailability) => Ok(network::rdf_availability_from(&outcomes[rdf_slot.expect("probed")])),
                Some(Kind::EndpointAvailability) => match &endpoint {
                    Some((a, _)) => Ok(a.clone()),
                    None => Err(MetricError::NotConfigured("endpoint URL")),
                },
                Some(Kind::EndpointLatency) => match &endpoint {
                    Some((_, l)) => l.clone(),
                    None => Err(MetricError::NotConfigured("endpoint URL")),
                },
            };
            let result = measured.and_then(|m| {
                m.typed(d.metric_class.clone(), &d.expected_data_type, d.unit_measure.as_ref())
            });
            MetricOutcome {
                descriptor: d.clone(),
                result,
            }
        })
        .collect()
}
