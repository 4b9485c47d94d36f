mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qualcube::analytics::{group_by_class, group_members};
use qualcube::rdf::{parse_document, serialize, RdfFormat, Term};
use qualcube::vocab::{ns, shipped_descriptors, TBox};

use common::chains::{brute_force, closed_tbox, ex, fixture, queried_classes, Edges};
use common::{corpus_dir, nn};

#[test]
fn grouping_matches_chain_enumeration_on_fifty_fixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut nonempty = 0;
    for i in 0..50 {
        let data = fixture(&mut rng);
        assert!(data.len() <= 500);
        let edges = Edges::from_nquads(&String::from_utf8(serialize(&data, RdfFormat::NQuads).unwrap()).unwrap());
        let tbox = closed_tbox(&data);
        for class in &queried_classes() {
            let expected = brute_force(&edges, class);
            let got: BTreeSet<String> =
                group_members(&data, &nn(class), &tbox).into_iter().map(|n| n.into_string()).collect();
            assert_eq!(got, expected, "fixture {i} class {class}");
            nonempty += usize::from(!expected.is_empty());

            let group = nn(&ex("group"));
            let (g, quads) = group_by_class(&data, &nn(class), &tbox, &group, None);
            assert_eq!(g.members.len(), expected.len());
            let listed: BTreeSet<String> = quads
                .iter()
                .filter(|q| q.predicate == ns::QB_OBSERVATION_PROP)
                .filter_map(|q| q.object.as_named_node().map(|n| n.as_str().to_owned()))
                .collect();
            assert_eq!(listed, expected);
            let typed = quads
                .iter()
                .any(|q| q.predicate == ns::RDF_TYPE && q.object == Term::from(nn(ns::QB_OBSERVATION_GROUP)));
            assert_eq!(typed, !expected.is_empty());
            assert!(quads.iter().all(|q| q.graph.is_none()));
        }
    }
    assert!(nonempty > 100, "fixtures too sparse: {nonempty}");
}

#[test]
fn accessibility_groups_every_listing_observation() {
    let bytes = std::fs::read(corpus_dir().join("listing1_quality_graph.trig")).unwrap();
    let data = parse_document(&bytes, RdfFormat::TriG).unwrap();
    let mut tbox = shipped_descriptors().1;
    tbox.merge(&TBox::from_dataset(&data));
    let tbox = tbox.closure();
    let all: BTreeSet<String> = ["obs1", "obs2", "obs3"].map(|o| format!("http://example.org/{o}")).into();
    for class in [ns::DQM_ACCESSIBILITY, ns::DQM_AVAILABILITY, ns::DAQ_CATEGORY] {
        let got: BTreeSet<String> = group_members(&data, &nn(class), &tbox).into_iter().map(|n| n.into_string()).collect();
        assert_eq!(got, all, "{class}");
    }
    let endpoint: BTreeSet<String> = group_members(&data, &nn(ns::DQM_ENDPOINT_AVAILABILITY), &tbox)
        .into_iter()
        .map(|n| n.into_string())
        .collect();
    assert_eq!(endpoint, ["obs1", "obs2"].map(|o| format!("http://example.org/{o}")).into());
    assert!(group_members(&data, &nn(ns::DQM_DATATYPE_CONSISTENCY), &tbox).is_empty());
}
