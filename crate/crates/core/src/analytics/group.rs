use std::collections::{BTreeMap, BTreeSet};

use crate::rdf::{NamedNode, Quad, QuadDataset, Term};
use crate::vocab::{instances_of, ns, TBox};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationGroup {
    pub group_iri: NamedNode,
    pub members: BTreeSet<NamedNode>,
    pub grouped_by_class: NamedNode,
}

/// Observations below instances of `class`: the instance's own
/// `daq:hasObservation` links, those of metric instances it reaches through a
/// sub-property of `daq:hasMetric`, and those reached through a sub-property
/// of `daq:hasDimension` followed by one of `daq:hasMetric`. Graph
/// boundaries are ignored.
pub fn group_members(data: &QuadDataset, class: &NamedNode, tbox: &TBox) -> BTreeSet<NamedNode> {
    let n = NamedNode::new_unchecked;
    let dim_links = tbox.subproperties(&n(ns::DAQ_HAS_DIMENSION));
    let metric_links = tbox.subproperties(&n(ns::DAQ_HAS_METRIC));

    let mut outgoing: BTreeMap<&NamedNode, Vec<(&NamedNode, &NamedNode)>> = BTreeMap::new();
    for q in data {
        if let (Some(s), Term::NamedNode(o)) = (q.subject.as_named_node(), &q.object) {
            outgoing.entry(s).or_default().push((&q.predicate, o));
        }
    }
    let follow = |from: &NamedNode, props: &dyn Fn(&NamedNode) -> bool| -> Vec<NamedNode> {
        outgoing
            .get(from)
            .into_iter()
            .flatten()
            .filter(|(p, _)| props(p))
            .map(|(_, o)| (*o).clone())
            .collect()
    };
    let is_obs = |p: &NamedNode| p == ns::DAQ_HAS_OBSERVATION;
    let is_metric = |p: &NamedNode| metric_links.contains(p);
    let is_dim = |p: &NamedNode| dim_links.contains(p);

    let mut metrics: BTreeSet<NamedNode> = BTreeSet::new();
    for x in instances_of(data, class, tbox) {
        for d in follow(&x, &is_dim) {
            metrics.extend(follow(&d, &is_metric));
        }
        metrics.extend(follow(&x, &is_metric));
        metrics.insert(x);
    }
    metrics.iter().flat_map(|m| follow(m, &is_obs)).collect()
}

/// Groups observations below instances of `class` and renders the group
/// as `group a qb:ObservationGroup` plus one `qb:observation` per member,
/// in `target_graph` (the default graph when `None`). An empty group emits
/// no quads.
pub fn group_by_class(
    data: &QuadDataset,
    class: &NamedNode,
    tbox: &TBox,
    group_iri: &NamedNode,
    target_graph: Option<&NamedNode>,
) -> (ObservationGroup, Vec<Quad>) {
    let members = group_members(data, class, tbox);
    let mut quads = Vec::new();
    if !members.is_empty() {
        let g = target_graph.cloned();
        let n = NamedNode::new_unchecked;
        quads.push(Quad::new(group_iri.clone(), n(ns::RDF_TYPE), n(ns::QB_OBSERVATION_GROUP), g.clone()));
        for m in &members {
            quads.push(Quad::new(group_iri.clone(), n(ns::QB_OBSERVATION_PROP), m.clone(), g.clone()));
        }
    }
    (
        ObservationGroup {
            group_iri: group_iri.clone(),
            members,
            grouped_by_class: class.clone(),
        },
        quads,
    )
}
