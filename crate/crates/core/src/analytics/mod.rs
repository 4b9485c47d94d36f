//! Reading observations back out of quality graphs: grouping, filtering,
//! ranking, version trends and the quality star.

mod group;
mod scoring;

use std::collections::{BTreeMap, BTreeSet};

use chrono::{DateTime, NaiveDate, NaiveDateTime, Utc};

use crate::rdf::{Literal, NamedNode, QuadDataset, Subject, Term};
use crate::vocab::{ns, TBox};

pub use group::{group_by_class, group_members, ObservationGroup};
pub use scoring::{
    rank, six_star, trend, MissingPolicy, Normalization, RankError, RankingProfile, StarRating, TrendError,
    TrendPoint, TrendSeries,
};

/// One observation as stored in some quality graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationRecord {
    pub iri: NamedNode,
    pub graph: Option<NamedNode>,
    pub metric_instance: NamedNode,
    /// Asserted types of the metric instance.
    pub metric_classes: BTreeSet<NamedNode>,
    pub computed_on: NamedNode,
    pub value: Literal,
    pub timestamp: DateTime<Utc>,
    pub unit_measure: Option<NamedNode>,
}

impl ObservationRecord {
    /// Booleans read as 0/1; `None` for non-numeric values.
    pub fn numeric_value(&self) -> Option<f64> {
        self.value.as_f64()
    }

    pub fn is_instance_of(&self, class: &NamedNode, tbox: &TBox) -> bool {
        self.metric_classes.iter().any(|c| tbox.is_subclass_of(c, class))
    }
}

/// Parses `xsd:dateTime` (timezone-less values read as UTC) or `xsd:date`.
pub fn parse_timestamp(lit: &Literal) -> Option<DateTime<Utc>> {
    let s = lit.lexical();
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Some(dt.with_timezone(&Utc));
    }
    if let Ok(naive) = NaiveDateTime::parse_from_str(s, "%Y-%m-%dT%H:%M:%S%.f") {
        return Some(naive.and_utc());
    }
    let date = s.trim_end_matches('Z');
    NaiveDate::parse_from_str(date, "%Y-%m-%d")
        .ok()
        .and_then(|d| d.and_hms_opt(0, 0, 0))
        .map(|d| d.and_utc())
}

fn single<'a>(items: &[&'a Term]) -> Option<&'a Term> {
    match items {
        [one] => Some(one),
        _ => None,
    }
}

/// Every complete observation in every graph, ordered by IRI. Observations
/// missing a required property, or carrying two values for one, are skipped.
pub fn observations(data: &QuadDataset) -> Vec<ObservationRecord> {
    // (graph, subject) -> predicate -> objects
    let mut index: BTreeMap<(Option<&NamedNode>, &NamedNode), BTreeMap<&str, Vec<&Term>>> = BTreeMap::new();
    for q in data {
        if let Subject::NamedNode(s) = &q.subject {
            index
                .entry((q.graph.as_ref(), s))
                .or_default()
                .entry(q.predicate.as_str())
                .or_default()
                .push(&q.object);
        }
    }
    let mut out = Vec::new();
    for ((graph, subject), props) in &index {
        let get = |p: &str| props.get(p).and_then(|v| single(v));
        let Some(Term::NamedNode(metric)) = get(ns::DAQ_METRIC) else {
            continue;
        };
        let (Some(Term::NamedNode(on)), Some(Term::Literal(value)), Some(Term::Literal(date))) =
            (get(ns::DAQ_COMPUTED_ON), get(ns::DAQ_VALUE), get(ns::DC_DATE))
        else {
            continue;
        };
        let Some(timestamp) = parse_timestamp(date) else {
            continue;
        };
        let metric_classes = index
            .get(&(*graph, metric))
            .and_then(|p| p.get(ns::RDF_TYPE))
            .map(|ts| ts.iter().filter_map(|t| t.as_named_node().cloned()).collect())
            .unwrap_or_default();
        out.push(ObservationRecord {
            iri: (*subject).clone(),
            graph: graph.cloned(),
            metric_instance: metric.clone(),
            metric_classes,
            computed_on: on.clone(),
            value: value.clone(),
            timestamp,
            unit_measure: get(ns::SDMX_UNIT_MEASURE).and_then(Term::as_named_node).cloned(),
        });
    }
    out.sort_by(|a, b| a.iri.cmp(&b.iri).then_with(|| a.graph.cmp(&b.graph)));
    out
}

/// Conjunctive observation filter; `None` fields match everything.
#[derive(Default)]
pub struct FilterCriteria {
    /// Matches through the closure: the observation's metric class is a
    /// subclass of this class, or its metric instance hangs below an
    /// instance of it (so category and dimension classes work too).
    pub class: Option<NamedNode>,
    pub computed_on: Option<NamedNode>,
    /// Inclusive on both ends.
    pub date_range: Option<(DateTime<Utc>, DateTime<Utc>)>,
    pub value_predicate: Option<Box<dyn Fn(f64) -> bool + Send + Sync>>,
}

pub fn filter_observations(data: &QuadDataset, criteria: &FilterCriteria, tbox: &TBox) -> Vec<ObservationRecord> {
    let grouped = criteria.class.as_ref().map(|c| group_members(data, c, tbox));
    observations(data)
        .into_iter()
        .filter(|o| match (&criteria.class, &grouped) {
            (Some(c), Some(members)) => o.is_instance_of(c, tbox) || members.contains(&o.iri),
            _ => true,
        })
        .filter(|o| criteria.computed_on.as_ref().is_none_or(|c| &o.computed_on == c))
        .filter(|o| {
            criteria
                .date_range
                .is_none_or(|(from, to)| from <= o.timestamp && o.timestamp <= to)
        })
        .filter(|o| match &criteria.value_predicate {
            Some(p) => o.numeric_value().is_some_and(p),
            None => true,
        })
        .collect()
}

/// The most recent observation of `class` on `computed_on`; equal dates
/// resolve to the greatest observation IRI.
pub fn latest<'a>(
    records: &'a [ObservationRecord],
    class: &NamedNode,
    computed_on: &NamedNode,
    tbox: &TBox,
) -> Option<&'a ObservationRecord> {
    records
        .iter()
        .filter(|o| &o.computed_on == computed_on && o.is_instance_of(class, tbox))
        .max_by(|a, b| a.timestamp.cmp(&b.timestamp).then_with(|| a.iri.cmp(&b.iri)))
}
