//! Randomized assessment runs turned into quality graphs, and targeted
//! single-statement mutations of them.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qualcube::metrics::{assess, AssessmentJob, MetricResult, ProbeSettings, ReqwestTransport};
use qualcube::rdf::{Literal, NamedNode, Quad, QuadDataset, RdfFormat, Term};
use qualcube::store::{build_quality_graph, instance_iri, ViolationCode};
use qualcube::vocab::{ns, shipped_descriptors, MetricDescriptor};

use super::{at, nn, random_dataset, random_results, DatasetShape};

pub const OFFLINE: [&str; 3] = [ns::DQM_DATATYPE_CONSISTENCY, ns::DQM_LABELED_RESOURCES, ns::DQM_EXTERNAL_LINKAGE];

/// Observation properties that must appear exactly once.
pub const REQUIRED: [&str; 6] = [
    ns::RDF_TYPE,
    ns::DAQ_METRIC,
    ns::DAQ_COMPUTED_ON,
    ns::DAQ_VALUE,
    ns::DC_DATE,
    ns::QB_DATA_SET_PROP,
];

pub struct Run {
    pub data: QuadDataset,
    pub results: Vec<(MetricDescriptor, MetricResult)>,
    /// The assessed dataset as N-Quads.
    pub source: String,
    pub home: String,
}

pub fn nquads(d: &QuadDataset) -> String {
    String::from_utf8(qualcube::rdf::serialize(d, RdfFormat::NQuads).unwrap()).unwrap()
}

/// Offline metrics are really computed over a 50 to 500 quad dataset; the
/// rest get plausible values.
pub fn random_run(rng: &mut ChaCha8Rng, i: usize, graph: &str) -> Run {
    let (descriptors, _) = shipped_descriptors();
    let home = format!("http://v{i}.example.org/ds/");
    let shape = DatasetShape {
        home: home.clone(),
        quads: rng.gen_range(50..=500),
        subjects: rng.gen_range(5..60),
        named_graphs: rng.gen_bool(0.5),
    };
    let data = random_dataset(rng, &shape);
    let source = nquads(&data);
    let (offline, mut others): (Vec<_>, Vec<_>) =
        descriptors.into_iter().partition(|d| OFFLINE.contains(&d.metric_class.as_str()));
    let ts = at(2014, 1 + (i % 12) as u32, 1 + (i % 28) as u32);
    let job = AssessmentJob::new(data, nn(&home), offline, ts, ProbeSettings::default()).unwrap();
    let transport = ReqwestTransport::new(&job.probe).unwrap();
    let mut results: Vec<_> = assess(&job, &transport)
        .into_iter()
        .map(|o| (o.descriptor, o.result.unwrap()))
        .collect();
    let keep = rng.gen_range(0..=others.len());
    others.shuffle(rng);
    results.extend(random_results(rng, &others[..keep]));
    results.shuffle(rng);
    let built = build_quality_graph(&results, &nn(&home), &ts, &nn(graph)).unwrap();
    Run {
        data: built,
        results,
        source,
        home,
    }
}

fn remove_one(data: &mut QuadDataset, f: impl Fn(&Quad) -> bool) {
    let doomed: Vec<Quad> = data.iter().filter(|q| f(q)).cloned().collect();
    assert_eq!(doomed.len(), 1, "mutation must touch exactly one statement");
    data.remove(&doomed[0]);
}

/// One mutation per violation code, each removing or replacing a single
/// statement about a randomly chosen metric of the run.
pub fn mutations(rng: &mut ChaCha8Rng, run: &Run, g: &NamedNode) -> Vec<(ViolationCode, QuadDataset)> {
    let (d, _) = run.results.choose(rng).unwrap();
    let metric = instance_iri(g, &d.metric_class);
    let dimension = instance_iri(g, &d.dimension_class);
    let obs = run
        .data
        .iter()
        .find(|q| q.predicate == ns::DAQ_HAS_OBSERVATION && q.subject.as_named_node() == Some(&metric))
        .and_then(|q| q.object.as_named_node().cloned())
        .unwrap();
    let is = |q: &Quad, s: &NamedNode, p: &str| q.subject.as_named_node() == Some(s) && q.predicate == p;
    let wrong_value = if d.expected_data_type == ns::XSD_BOOLEAN {
        Literal::double(0.5)
    } else {
        Literal::boolean(true)
    };

    let mut cases = Vec::new();
    let mut m = run.data.clone();
    remove_one(&mut m, |q| is(q, g, ns::RDF_TYPE) && q.object == Term::from(nn(ns::DAQ_QUALITY_GRAPH)));
    cases.push((ViolationCode::V1, m));
    let mut m = run.data.clone();
    remove_one(&mut m, |q| is(q, g, ns::QB_STRUCTURE));
    cases.push((ViolationCode::V2, m));
    let mut m = run.data.clone();
    let dropped = *REQUIRED[1..].choose(rng).unwrap();
    remove_one(&mut m, |q| is(q, &obs, dropped));
    cases.push((ViolationCode::V3, m));
    let mut m = run.data.clone();
    remove_one(&mut m, |q| is(q, &obs, ns::DAQ_VALUE));
    m.insert(Quad::new(obs.clone(), nn(ns::DAQ_VALUE), wrong_value, Some(g.clone())));
    cases.push((ViolationCode::V4, m));
    let mut m = run.data.clone();
    remove_one(&mut m, |q| is(q, &metric, ns::RDF_TYPE));
    cases.push((ViolationCode::V5, m));
    let mut m = run.data.clone();
    remove_one(&mut m, |q| is(q, &metric, ns::DAQ_HAS_OBSERVATION));
    cases.push((ViolationCode::V6, m));
    let mut m = run.data.clone();
    remove_one(&mut m, |q| {
        is(q, &dimension, d.has_metric_property.as_str()) && q.object == Term::from(metric.clone())
    });
    cases.push((ViolationCode::V7, m));
    cases
}
