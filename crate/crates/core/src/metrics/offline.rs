//! Metrics computed purely from the quad stream.

use std::collections::{BTreeSet, HashSet};

use url::Url;

use super::lexical::lexical_form_is_valid;
use super::Measurement;
use crate::rdf::{NamedNode, Quad, Subject, Term};
use crate::vocab::ns;

/// One observer per metric; the engine feeds every quad to every observer.
pub(crate) trait QuadObserver {
    fn observe(&mut self, quad: &Quad);
}

/// `host:port` of an IRI, with the scheme's default port filled in.
pub fn authority(iri: &str) -> Option<String> {
    let url = Url::parse(iri).ok()?;
    let host = url.host_str()?.to_ascii_lowercase();
    Some(match url.port_or_known_default() {
        Some(port) => format!("{host}:{port}"),
        None => host,
    })
}

#[derive(Debug, Default)]
pub(crate) struct DatatypeConsistency {
    checked: u64,
    valid: u64,
}

impl QuadObserver for DatatypeConsistency {
    fn observe(&mut self, quad: &Quad) {
        if let Term::Literal(lit) = &quad.object {
            if let Some(ok) = lexical_form_is_valid(lit.datatype().as_str(), lit.lexical()) {
                self.checked += 1;
                self.valid += u64::from(ok);
            }
        }
    }
}

impl DatatypeConsistency {
    pub(crate) fn finish(self) -> Measurement {
        if self.checked == 0 {
            return Measurement::ratio(1.0, Some("no checkable literals".into()));
        }
        Measurement::ratio(
            self.valid as f64 / self.checked as f64,
            Some(format!("{} of {} typed literals valid", self.valid, self.checked)),
        )
    }
}

#[derive(Debug, Default)]
pub(crate) struct LabeledResources {
    subjects: HashSet<NamedNode>,
    labeled: HashSet<NamedNode>,
}

impl QuadObserver for LabeledResources {
    fn observe(&mut self, quad: &Quad) {
        if let Subject::NamedNode(s) = &quad.subject {
            if quad.predicate == ns::RDFS_LABEL && !self.labeled.contains(s) {
                self.labeled.insert(s.clone());
            }
            if !self.subjects.contains(s) {
                self.subjects.insert(s.clone());
            }
        }
    }
}

impl LabeledResources {
    pub(crate) fn finish(self) -> Measurement {
        if self.subjects.is_empty() {
            return Measurement::ratio(1.0, Some("no subjects".into()));
        }
        Measurement::ratio(
            self.labeled.len() as f64 / self.subjects.len() as f64,
            Some(format!("{} of {} subjects labeled", self.labeled.len(), self.subjects.len())),
        )
    }
}

#[derive(Debug)]
pub(crate) struct ExternalLinkage {
    home: Option<String>,
    objects: HashSet<NamedNode>,
}

impl ExternalLinkage {
    pub(crate) fn new(computed_on: &NamedNode) -> Self {
        ExternalLinkage {
            home: authority(computed_on.as_str()),
            objects: HashSet::new(),
        }
    }

    pub(crate) fn finish(self) -> Measurement {
        if self.objects.is_empty() {
            return Measurement::ratio(0.0, Some("no object IRIs".into()));
        }
        let external = self
            .objects
            .iter()
            .filter(|o| authority(o.as_str()) != self.home)
            .count();
        Measurement::ratio(
            external as f64 / self.objects.len() as f64,
            Some(format!("{external} of {} object IRIs external", self.objects.len())),
        )
    }
}

impl QuadObserver for ExternalLinkage {
    fn observe(&mut self, quad: &Quad) {
        if let Term::NamedNode(o) = &quad.object {
            if !self.objects.contains(o) {
                self.objects.insert(o.clone());
            }
        }
    }
}

/// Collects distinct subject IRIs sharing the assessed resource's authority.
#[derive(Debug)]
pub(crate) struct LocalSubjects {
    home: Option<String>,
    pub(crate) subjects: BTreeSet<NamedNode>,
}

impl LocalSubjects {
    pub(crate) fn new(computed_on: &NamedNode) -> Self {
        LocalSubjects {
            home: authority(computed_on.as_str()),
            subjects: BTreeSet::new(),
        }
    }
}

impl QuadObserver for LocalSubjects {
    fn observe(&mut self, quad: &Quad) {
        if let Subject::NamedNode(s) = &quad.subject {
            if self.home.is_some() && !self.subjects.contains(s) && authority(s.as_str()) == self.home {
                self.subjects.insert(s.clone());
            }
        }
    }
}

fn run<O: QuadObserver>(mut observer: O, quads: impl IntoIterator<Item = impl AsRef<Quad>>) -> O {
    for q in quads {
        observer.observe(q.as_ref());
    }
    observer
}

/// Fraction of checkable typed literals whose lexical form is valid.
pub fn metric_datatype_consistency(quads: impl IntoIterator<Item = impl AsRef<Quad>>) -> super::MetricResult {
    run(DatatypeConsistency::default(), quads)
        .finish()
        .into_result(ns::DQM_DATATYPE_CONSISTENCY)
}

/// Fraction of distinct subject IRIs carrying an `rdfs:label`.
pub fn metric_labeled_resource_ratio(quads: impl IntoIterator<Item = impl AsRef<Quad>>) -> super::MetricResult {
    run(LabeledResources::default(), quads)
        .finish()
        .into_result(ns::DQM_LABELED_RESOURCES)
}

/// Fraction of distinct object IRIs on a different authority than `computed_on`.
pub fn metric_external_linkage_ratio(
    quads: impl IntoIterator<Item = impl AsRef<Quad>>,
    computed_on: &NamedNode,
) -> super::MetricResult {
    run(ExternalLinkage::new(computed_on), quads)
        .finish()
        .into_result(ns::DQM_EXTERNAL_LINKAGE)
}
