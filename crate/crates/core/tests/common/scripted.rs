//! A scripted HTTP world for the networked metrics: a random dataset whose
//! local IRIs, home page and SPARQL endpoint are served by a mock server with
//! randomly chosen good, missing or broken responses.

use std::time::Duration;

use rand::Rng;

use qualcube::metrics::{assess, AssessmentJob, MetricResult, ProbeSettings, ReqwestTransport};
use qualcube::mock_http::{MockRoute, MockServer};
use qualcube::rdf::NamedNode;
use qualcube::vocab::{ns, shipped_descriptors};

use super::oracle;
use super::runs::nquads;
use super::{at, random_dataset, DatasetShape};

fn value(r: &MetricResult) -> f64 {
    r.value.as_f64().unwrap()
}

enum Serve {
    Turtle,
    Missing,
    Garbage,
}

fn serve(server: &MockServer, path: &str, how: &Serve) {
    match how {
        Serve::Turtle => server.route(path, MockRoute::ok("text/turtle", "<> <http://example.org/p> \"ok\" .\n")),
        Serve::Missing => server.route(path, MockRoute::new(404)),
        Serve::Garbage => server.route(path, MockRoute::ok("text/turtle", "this is { not turtle")),
    }
}

fn pick(rng: &mut impl Rng) -> Serve {
    match rng.gen_range(0..3) {
        0 => Serve::Turtle,
        1 => Serve::Missing,
        _ => Serve::Garbage,
    }
}

/// Scripts routes for dataset `i`, assesses all metrics and checks each
/// value against the recounts and the script. Panics on disagreement.
pub fn check_one(server: &MockServer, rng: &mut impl Rng, i: u64) {
    let (descriptors, _) = shipped_descriptors();
    let home = server.url(&format!("/d{i}/"));
    let shape = DatasetShape {
        home: home.clone(),
        quads: rng.gen_range(5..150),
        subjects: rng.gen_range(1..12),
        named_graphs: false,
    };
    let data = random_dataset(rng, &shape);
    let text = nquads(&data);

    let home_route = pick(rng);
    serve(server, &format!("/d{i}/"), &home_route);
    let local = oracle::local_subjects(&text, &home);
    let mut good = 0usize;
    for s in &local {
        let how = pick(rng);
        good += usize::from(matches!(how, Serve::Turtle));
        let path = s.strip_prefix(&server.url("")).unwrap();
        serve(server, path, &how);
    }
    let endpoint_up = rng.gen_bool(0.5);
    let endpoint_path = format!("/sparql{i}");
    let ask = format!("{endpoint_path}?query=ASK%20%7B%7D");
    if endpoint_up {
        server.route(&ask, MockRoute::ok("application/sparql-results+json", r#"{"head":{},"boolean":true}"#));
    } else {
        server.route(&ask, MockRoute::new(503));
    }

    let settings = ProbeSettings {
        request_timeout: Duration::from_secs(5),
        endpoint_url: Some(server.url(&endpoint_path)),
        max_sample_size: 20,
        seed: i,
        ..ProbeSettings::default()
    };
    let on = NamedNode::new(home.clone()).unwrap();
    let job = AssessmentJob::new(data, on, descriptors, at(2014, 5, 1), settings).unwrap();
    let transport = ReqwestTransport::new(&job.probe).unwrap();
    for o in assess(&job, &transport) {
        let r = o.result.unwrap_or_else(|e| panic!("dataset {i} {}: {e}", o.descriptor.metric_class));
        let class = r.metric_class.as_str();
        match class {
            ns::DQM_DATATYPE_CONSISTENCY => assert_eq!(value(&r), oracle::datatype_consistency(&text)),
            ns::DQM_LABELED_RESOURCES => assert_eq!(value(&r), oracle::labeled_ratio(&text)),
            ns::DQM_EXTERNAL_LINKAGE => assert_eq!(value(&r), oracle::external_linkage(&text, &home)),
            ns::DQM_RDF_AVAILABILITY => {
                assert_eq!(r.value.lexical(), (matches!(home_route, Serve::Turtle)).to_string(), "dataset {i}")
            }
            ns::DQM_ENDPOINT_AVAILABILITY => assert_eq!(r.value.lexical(), endpoint_up.to_string()),
            ns::DQM_ENDPOINT_LATENCY => {
                assert!(value(&r) >= 0.0);
                assert_eq!(r.unit_measure.as_ref().unwrap().as_str(), ns::UNIT_SECOND);
            }
            ns::DQM_DEREFERENCEABILITY => {
                let expected = if local.is_empty() { 1.0 } else { good as f64 / local.len() as f64 };
                assert_eq!(value(&r), expected, "dataset {i}: {:?}", r.detail);
            }
            other => panic!("unexpected metric {other}"),
        }
        if class != ns::DQM_ENDPOINT_LATENCY && r.value.datatype() == ns::XSD_DOUBLE {
            assert!((0.0..=1.0).contains(&value(&r)));
        }
    }
}
