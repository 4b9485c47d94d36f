use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::metrics::lexical_form_is_valid;
use crate::rdf::{NamedNode, Quad, QuadDataset, Subject, Term};
use crate::vocab::{ns, TBox};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ViolationCode {
    /// Graph not typed as a quality graph / data set.
    V1,
    /// Missing, duplicate or wrong `qb:structure`.
    V2,
    /// Observation lacks exactly one of each required property.
    V3,
    /// Value datatype differs from the metric's expected datatype.
    V4,
    /// `daq:metric` points at something that is not a metric instance.
    V5,
    /// `daq:metric` and `daq:hasObservation` disagree.
    V6,
    /// Metric instance not reachable from a category.
    V7,
}

impl ViolationCode {
    pub const ALL: [ViolationCode; 7] = [
        ViolationCode::V1,
        ViolationCode::V2,
        ViolationCode::V3,
        ViolationCode::V4,
        ViolationCode::V5,
        ViolationCode::V6,
        ViolationCode::V7,
    ];
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub subject: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub graph: String,
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn new(graph: &NamedNode, mut violations: Vec<Violation>) -> Self {
        violations.sort();
        violations.dedup();
        ValidationReport {
            graph: graph.as_str().to_owned(),
            passed: violations.is_empty(),
            violations,
        }
    }

    /// One `CODE<TAB>subject<TAB>message` line per violation.
    pub fn to_text(&self) -> String {
        self.violations
            .iter()
            .map(|v| format!("{}\t{}\t{}\n", v.code, v.subject, v.message.replace(['\t', '\n'], " ")))
            .collect()
    }

    /// `{"graph": iri, "passed": bool, "violations": [{"code", "subject", "message"}]}`
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn codes(&self) -> BTreeSet<ViolationCode> {
        self.violations.iter().map(|v| v.code).collect()
    }
}

fn subject_label(s: &Subject) -> String {
    match s {
        Subject::NamedNode(n) => n.as_str().to_owned(),
        Subject::BlankNode(b) => format!("_:{}", b.as_str()),
    }
}

fn term_subject(t: &Term) -> Option<Subject> {
    match t {
        Term::NamedNode(n) => Some(Subject::NamedNode(n.clone())),
        Term::BlankNode(b) => Some(Subject::BlankNode(b.clone())),
        Term::Literal(_) => None,
    }
}

/// Per-graph index of statements by subject.
struct Index<'a> {
    by_subject: BTreeMap<&'a Subject, Vec<&'a Quad>>,
}

impl<'a> Index<'a> {
    fn new(quads: &'a BTreeSet<Quad>) -> Self {
        let mut by_subject: BTreeMap<&Subject, Vec<&Quad>> = BTreeMap::new();
        for q in quads {
            by_subject.entry(&q.subject).or_default().push(q);
        }
        Index { by_subject }
    }

    fn objects(&self, s: &Subject, p: &str) -> Vec<&'a Term> {
        self.by_subject
            .get(s)
            .map(|qs| qs.iter().filter(|q| q.predicate == p).map(|q| &q.object).collect())
            .unwrap_or_default()
    }

    fn types(&self, s: &Subject) -> Vec<&'a NamedNode> {
        self.objects(s, ns::RDF_TYPE)
            .into_iter()
            .filter_map(Term::as_named_node)
            .collect()
    }

    fn has(&self, s: &Subject, p: &str, o: &Term) -> bool {
        self.by_subject
            .get(s)
            .is_some_and(|qs| qs.iter().any(|q| q.predicate == p && &q.object == o))
    }
}

/// Checks graph `graph` of `data` against the fixed structure definition.
/// `tbox` must be closed and include any extension vocabularies in use.
pub fn validate(data: &QuadDataset, graph: &NamedNode, tbox: &TBox) -> ValidationReport {
    let quads = data.graph_view(Some(graph));
    let idx = Index::new(&quads);
    let mut out = Vec::new();
    let mut violation = |code, subject: String, message: String| out.push(Violation { code, subject, message });
    let n = NamedNode::new_unchecked;
    let g = Subject::NamedNode(graph.clone());
    let g_label = graph.as_str().to_owned();

    // V1
    let types = idx.types(&g);
    let qg = n(ns::DAQ_QUALITY_GRAPH);
    let ds = n(ns::QB_DATA_SET);
    if !types.iter().any(|t| tbox.is_subclass_of(t, &qg)) {
        violation(ViolationCode::V1, g_label.clone(), "graph is not typed daq:QualityGraph".into());
    } else if !types.iter().any(|t| tbox.is_subclass_of(t, &ds)) {
        violation(ViolationCode::V1, g_label.clone(), "graph is not entailed to be a qb:DataSet".into());
    }

    // V2
    let structures = idx.objects(&g, ns::QB_STRUCTURE);
    match structures.as_slice() {
        [Term::NamedNode(s)] if s == ns::DAQ_DSD => {}
        [] => violation(ViolationCode::V2, g_label.clone(), "missing qb:structure".into()),
        [_] => violation(ViolationCode::V2, g_label.clone(), "qb:structure is not daq:dsd".into()),
        many => violation(ViolationCode::V2, g_label.clone(), format!("{} qb:structure statements", many.len())),
    }

    let metric_classes = tbox.subclasses(&n(ns::DAQ_METRIC_CLASS));
    let observation_classes = tbox.subclasses(&n(ns::QB_OBSERVATION));
    let is_metric_instance = |s: &Subject| idx.types(s).iter().any(|t| metric_classes.contains(*t));

    // Observations: typed ones plus anything using observation properties.
    let mut observations: BTreeSet<&Subject> = BTreeSet::new();
    for q in &quads {
        let obs_prop = [ns::DAQ_METRIC, ns::DAQ_COMPUTED_ON, ns::DAQ_VALUE, ns::QB_DATA_SET_PROP]
            .contains(&q.predicate.as_str());
        let typed = q.predicate == ns::RDF_TYPE
            && q.object.as_named_node().is_some_and(|c| observation_classes.contains(c));
        if obs_prop || typed {
            observations.insert(&q.subject);
        }
    }

    for obs in &observations {
        let label = subject_label(obs);
        // V3
        if !idx.types(obs).iter().any(|t| observation_classes.contains(*t)) {
            violation(ViolationCode::V3, label.clone(), "not typed qb:Observation".into());
        }
        for (prop, name) in [
            (ns::DAQ_METRIC, "daq:metric"),
            (ns::DAQ_COMPUTED_ON, "daq:computedOn"),
            (ns::DAQ_VALUE, "daq:value"),
            (ns::DC_DATE, "dc:date"),
            (ns::QB_DATA_SET_PROP, "qb:dataSet"),
        ] {
            let values = idx.objects(obs, prop);
            if values.len() != 1 {
                violation(ViolationCode::V3, label.clone(), format!("{} {name} values, expected 1", values.len()));
                continue;
            }
            let v = values[0];
            let defect = match prop {
                ns::DAQ_VALUE if v.as_literal().is_none() => Some("daq:value is not a literal"),
                ns::DC_DATE => match v.as_literal() {
                    Some(l) if lexical_form_is_valid(l.datatype().as_str(), l.lexical()) == Some(true)
                        && matches!(l.datatype().as_str(), ns::XSD_DATE_TIME | ns::XSD_DATE) =>
                    {
                        None
                    }
                    _ => Some("dc:date is not a valid xsd:dateTime"),
                },
                ns::QB_DATA_SET_PROP if v.as_named_node() != Some(graph) => Some("qb:dataSet is not this graph"),
                ns::DAQ_METRIC | ns::DAQ_COMPUTED_ON if v.as_literal().is_some() => Some("object is a literal"),
                _ => None,
            };
            if let Some(m) = defect {
                violation(ViolationCode::V3, label.clone(), m.into());
            }
        }

        let metrics: Vec<Subject> = idx.objects(obs, ns::DAQ_METRIC).into_iter().filter_map(term_subject).collect();

        // V4
        if let ([metric], [Term::Literal(value)]) = (metrics.as_slice(), idx.objects(obs, ns::DAQ_VALUE).as_slice()) {
            for class in idx.types(metric).into_iter().filter(|t| metric_classes.contains(*t)) {
                let expected = tbox.expected_data_types_of(class);
                if expected.len() == 1 && !expected.contains(value.datatype()) {
                    violation(
                        ViolationCode::V4,
                        label.clone(),
                        format!(
                            "value has datatype {} but {} expects {}",
                            value.datatype(),
                            class,
                            expected.iter().next().expect("one datatype")
                        ),
                    );
                }
            }
        }

        // V5
        for metric in &metrics {
            if !is_metric_instance(metric) {
                violation(
                    ViolationCode::V5,
                    label.clone(),
                    format!("{} is not a daq:Metric instance", subject_label(metric)),
                );
            }
        }

        // V6, observation side
        let obs_term = obs.to_term();
        for metric in &metrics {
            if !idx.has(metric, ns::DAQ_HAS_OBSERVATION, &obs_term) {
                violation(
                    ViolationCode::V6,
                    label.clone(),
                    format!("{} lacks daq:hasObservation back to it", subject_label(metric)),
                );
            }
        }
    }

    // V6, metric side: only when the observation names some other metric.
    for q in quads.iter().filter(|q| q.predicate == ns::DAQ_HAS_OBSERVATION) {
        let Some(obs) = term_subject(&q.object) else {
            violation(ViolationCode::V6, subject_label(&q.subject), "daq:hasObservation points at a literal".into());
            continue;
        };
        let named = idx.objects(&obs, ns::DAQ_METRIC);
        if !named.is_empty() && !named.contains(&&q.subject.to_term()) {
            violation(
                ViolationCode::V6,
                subject_label(&obs),
                format!("daq:metric does not name {}", subject_label(&q.subject)),
            );
        }
    }

    // V7
    let category_classes = tbox.subclasses(&n(ns::DAQ_CATEGORY));
    let dim_props = tbox.subproperties(&n(ns::DAQ_HAS_DIMENSION));
    let metric_props = tbox.subproperties(&n(ns::DAQ_HAS_METRIC));
    let mut metric_instances: BTreeSet<Subject> = BTreeSet::new();
    for q in &quads {
        if q.predicate == ns::DAQ_METRIC {
            metric_instances.extend(term_subject(&q.object));
        }
        if q.predicate == ns::DAQ_HAS_OBSERVATION {
            metric_instances.insert(q.subject.clone());
        }
        if q.predicate == ns::RDF_TYPE && q.object.as_named_node().is_some_and(|c| metric_classes.contains(c)) {
            metric_instances.insert(q.subject.clone());
        }
    }
    let categories: BTreeSet<&Subject> = quads
        .iter()
        .filter(|q| q.predicate == ns::RDF_TYPE && q.object.as_named_node().is_some_and(|c| category_classes.contains(c)))
        .map(|q| &q.subject)
        .collect();
    let mut reachable: BTreeSet<Term> = BTreeSet::new();
    for c in &categories {
        for q in idx.by_subject.get(c).into_iter().flatten() {
            if !dim_props.contains(&q.predicate) {
                continue;
            }
            let Some(dim) = term_subject(&q.object) else { continue };
            for q2 in idx.by_subject.get(&dim).into_iter().flatten() {
                if metric_props.contains(&q2.predicate) {
                    reachable.insert(q2.object.clone());
                }
            }
        }
    }
    for m in &metric_instances {
        if !reachable.contains(&m.to_term()) {
            violation(
                ViolationCode::V7,
                subject_label(m),
                "metric instance not reachable from a category via dimension and metric links".into(),
            );
        }
    }

    ValidationReport::new(graph, out)
}
