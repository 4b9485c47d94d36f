//! Fixture generators shared by the integration suites.
#![allow(dead_code)]

pub mod chains;
pub mod oracle;
pub mod runs;
pub mod scripted;

use std::collections::BTreeMap;
use std::path::PathBuf;

use chrono::{DateTime, TimeZone, Utc};
use rand::seq::SliceRandom;
use rand::Rng;

use qualcube::metrics::MetricResult;
use qualcube::rdf::{BlankNode, Literal, NamedNode, Quad, QuadDataset, Subject, Term};
use qualcube::vocab::{ns, MetricDescriptor};

pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

pub fn nn(s: &str) -> NamedNode {
    NamedNode::new_unchecked(s)
}

/// The shared corpus, also when this module is compiled into another crate's tests.
pub fn corpus_dir() -> PathBuf {
    let here = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let own = here.join("tests/corpus");
    if own.is_dir() {
        own
    } else {
        here.join("../core/tests/corpus")
    }
}

pub fn at(y: i32, m: u32, d: u32) -> DateTime<Utc> {
    Utc.with_ymd_and_hms(y, m, d, 12, 0, 0).unwrap()
}

/// (datatype local name, lexical form). Validity is left to the oracles.
pub const LEXICAL_POOL: &[(&str, &str)] = &[
    ("integer", "0"),
    ("integer", "-12"),
    ("integer", "+7"),
    ("integer", "123456789012345678901234567890"),
    ("integer", "1.0"),
    ("integer", "abc"),
    ("integer", ""),
    ("integer", " 1"),
    ("integer", "1e3"),
    ("decimal", "1.5"),
    ("decimal", "-.5"),
    ("decimal", "3."),
    ("decimal", "42"),
    ("decimal", "."),
    ("decimal", "1.2.3"),
    ("decimal", "1e2"),
    ("double", "1.0E3"),
    ("double", "-2e-2"),
    ("double", "INF"),
    ("double", "-INF"),
    ("double", "NaN"),
    ("double", "1"),
    ("double", "1e"),
    ("double", "e3"),
    ("double", "inf"),
    ("double", "1.0E3.5"),
    ("boolean", "true"),
    ("boolean", "false"),
    ("boolean", "1"),
    ("boolean", "0"),
    ("boolean", "TRUE"),
    ("boolean", "yes"),
    ("date", "2014-05-01"),
    ("date", "2014-05-01Z"),
    ("date", "2014-05-01+02:00"),
    ("date", "2012-02-29"),
    ("date", "2014-02-30"),
    ("date", "2013-02-29"),
    ("date", "2014-5-1"),
    ("date", "14-05-01"),
    ("dateTime", "2014-05-01T10:00:00"),
    ("dateTime", "2014-05-01T10:00:00.123Z"),
    ("dateTime", "2014-05-01T10:00:00-05:00"),
    ("dateTime", "2014-05-01T25:00:00"),
    ("dateTime", "2014-05-01 10:00:00"),
    ("dateTime", "2014-05-01T10:00"),
    ("dateTime", "2014-05-01T10:00:00.Z"),
    ("string", "just text"),
    ("gYear", "2014"),
];

pub struct DatasetShape {
    /// IRI prefix of local resources; also their authority.
    pub home: String,
    pub quads: usize,
    /// Number of distinct local subject IRIs to draw from.
    pub subjects: usize,
    pub named_graphs: bool,
}

/// A random instance dataset mixing local and external IRIs, labels, typed
/// literals (valid and invalid), language strings and blank nodes.
pub fn random_dataset(rng: &mut impl Rng, shape: &DatasetShape) -> QuadDataset {
    let externals = [
        "http://dbpedia.org/resource/",
        "https://www.wikidata.org/entity/",
        "http://example.net/",
    ];
    let home_url = url::Url::parse(&shape.home).unwrap();
    let other_port = format!(
        "http://{}:{}/",
        home_url.host_str().unwrap(),
        home_url.port_or_known_default().unwrap() + 1
    );
    let local = |i: usize| nn(&format!("{}r{i}", shape.home));
    let mut data = QuadDataset::new();
    let mut guard = 0;
    while data.len() < shape.quads && guard < shape.quads * 20 {
        guard += 1;
        let subject: Subject = if rng.gen_bool(0.1) {
            BlankNode::new(format!("b{}", rng.gen_range(0..5))).unwrap().into()
        } else {
            local(rng.gen_range(0..shape.subjects.max(1))).into()
        };
        let roll = rng.gen_range(0..10);
        let (predicate, object): (NamedNode, Term) = match roll {
            0 => (nn(ns::RDFS_LABEL), Literal::new_simple(format!("label {}", rng.gen::<u8>())).into()),
            1 => (
                nn(ns::RDFS_LABEL),
                Literal::new_language_tagged("etiquette", "fr").unwrap().into(),
            ),
            2 | 3 => {
                let (dt, lex) = LEXICAL_POOL.choose(rng).unwrap();
                (
                    nn(&format!("http://example.org/vocab#v{}", rng.gen_range(0..4))),
                    Literal::new_typed(*lex, nn(&format!("{XSD}{dt}"))).into(),
                )
            }
            4 => (nn(ns::RDF_TYPE), nn(&format!("http://example.org/vocab#C{}", rng.gen_range(0..3))).into()),
            5 | 6 => (
                nn("http://example.org/vocab#link"),
                local(rng.gen_range(0..shape.subjects.max(1))).into(),
            ),
            7 => {
                let base = externals.choose(rng).unwrap();
                (nn("http://www.w3.org/2002/07/owl#sameAs"), nn(&format!("{base}x{}", rng.gen_range(0..6))).into())
            }
            8 => (nn("http://example.org/vocab#port"), nn(&format!("{other_port}y{}", rng.gen_range(0..3))).into()),
            _ => (
                nn("http://example.org/vocab#bn"),
                BlankNode::new(format!("b{}", rng.gen_range(0..5))).unwrap().into(),
            ),
        };
        let graph = if shape.named_graphs && rng.gen_bool(0.3) {
            Some(nn(&format!("{}graph{}", shape.home, rng.gen_range(0..2))))
        } else {
            None
        };
        data.insert(Quad::new(subject, predicate, object, graph));
    }
    data
}

/// Plausible results for a set of descriptors, valued per their datatype.
pub fn random_results(rng: &mut impl Rng, descriptors: &[MetricDescriptor]) -> Vec<(MetricDescriptor, MetricResult)> {
    descriptors
        .iter()
        .map(|d| {
            let value = if d.expected_data_type == ns::XSD_BOOLEAN {
                Literal::boolean(rng.gen_bool(0.5))
            } else {
                Literal::double(rng.gen_range(0.0..1.0))
            };
            let result = MetricResult {
                metric_class: d.metric_class.clone(),
                value,
                unit_measure: d.unit_measure.clone(),
                detail: None,
            };
            (d.clone(), result)
        })
        .collect()
}

/// Observation rows `(computedOn, metric class, value, timestamp)` as a
/// minimal quality graph, one metric instance per class, no scaffold above it.
pub fn observation_graph(rows: &[(&str, &str, f64, DateTime<Utc>)]) -> QuadDataset {
    let g = nn("http://example.org/q");
    let mut data = QuadDataset::new();
    let mut instances: BTreeMap<&str, NamedNode> = BTreeMap::new();
    for (i, (on, class, value, ts)) in rows.iter().enumerate() {
        let inst = instances
            .entry(class)
            .or_insert_with(|| nn(&format!("http://example.org/q/m/{}", nn(class).local_name())))
            .clone();
        let obs = nn(&format!("http://example.org/q/obs/{i}"));
        let add = |data: &mut QuadDataset, s: &NamedNode, p: &str, o: Term| {
            data.insert(Quad::new(s.clone(), nn(p), o, Some(g.clone())));
        };
        add(&mut data, &inst, ns::RDF_TYPE, nn(class).into());
        add(&mut data, &inst, ns::DAQ_HAS_OBSERVATION, obs.clone().into());
        add(&mut data, &obs, ns::RDF_TYPE, nn(ns::QB_OBSERVATION).into());
        add(&mut data, &obs, ns::DAQ_METRIC, inst.into());
        add(&mut data, &obs, ns::DAQ_COMPUTED_ON, nn(on).into());
        add(&mut data, &obs, ns::DAQ_VALUE, Literal::double(*value).into());
        add(
            &mut data,
            &obs,
            ns::DC_DATE,
            Literal::new_typed(ts.to_rfc3339_opts(chrono::SecondsFormat::Secs, true), nn(ns::XSD_DATE_TIME)).into(),
        );
        add(&mut data, &obs, ns::QB_DATA_SET, g.clone().into());
    }
    data
}
