use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::rdf::{BlankNode, Literal, NamedNode, Quad, QuadDataset, Subject, Term};
use crate::vocab::ns;

type Pairs = BTreeSet<(NamedNode, NamedNode)>;

/// Class and property hierarchy plus the schema-level annotations metric
/// descriptors are resolved from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TBox {
    pub sub_class_of: Pairs,
    pub sub_property_of: Pairs,
    /// (instance, class)
    pub class_assertions: Pairs,
    pub inverse_of: Pairs,
    /// (property, class)
    pub domains: Pairs,
    /// (property, class)
    pub ranges: Pairs,
    /// (class, datatype); more than one per class is a modelling defect.
    pub expected_data_types: Pairs,
    /// (class, unit)
    pub units: Pairs,
    pub labels: BTreeMap<NamedNode, String>,
    closed: bool,
}

fn nn(iri: &str) -> NamedNode {
    NamedNode::new_unchecked(iri)
}

impl TBox {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pulls schema statements out of `data`, ignoring graph boundaries.
    /// Statements with blank or literal nodes where IRIs are expected are
    /// skipped.
    pub fn from_dataset(data: &QuadDataset) -> Self {
        let mut t = TBox::new();
        for q in data {
            let Subject::NamedNode(s) = &q.subject else {
                continue;
            };
            if q.predicate == ns::RDFS_LABEL {
                if let Term::Literal(l) = &q.object {
                    t.labels.entry(s.clone()).or_insert_with(|| l.lexical().to_owned());
                }
                continue;
            }
            let Term::NamedNode(o) = &q.object else {
                continue;
            };
            let pair = (s.clone(), o.clone());
            let target = match q.predicate.as_str() {
                ns::RDFS_SUB_CLASS_OF => &mut t.sub_class_of,
                ns::RDFS_SUB_PROPERTY_OF => &mut t.sub_property_of,
                ns::RDF_TYPE => &mut t.class_assertions,
                ns::OWL_INVERSE_OF => &mut t.inverse_of,
                ns::RDFS_DOMAIN => &mut t.domains,
                ns::RDFS_RANGE => &mut t.ranges,
                ns::DAQ_EXPECTED_DATA_TYPE => &mut t.expected_data_types,
                ns::SDMX_UNIT_MEASURE => &mut t.units,
                _ => continue,
            };
            target.insert(pair);
        }
        t
    }

    pub fn merge(&mut self, other: &TBox) {
        self.sub_class_of.extend(other.sub_class_of.iter().cloned());
        self.sub_property_of.extend(other.sub_property_of.iter().cloned());
        self.class_assertions.extend(other.class_assertions.iter().cloned());
        self.inverse_of.extend(other.inverse_of.iter().cloned());
        self.domains.extend(other.domains.iter().cloned());
        self.ranges.extend(other.ranges.iter().cloned());
        self.expected_data_types.extend(other.expected_data_types.iter().cloned());
        self.units.extend(other.units.iter().cloned());
        for (k, v) in &other.labels {
            self.labels.entry(k.clone()).or_insert_with(|| v.clone());
        }
        self.closed = false;
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Reflexive-transitive closure of both hierarchies, with class
    /// assertions propagated to every superclass. Cycles are fine: their
    /// members end up mutually sub-related.
    pub fn closure(&self) -> TBox {
        if self.closed {
            return self.clone();
        }
        let mut out = self.clone();
        out.sub_class_of = transitive_reflexive(&self.sub_class_of, self.class_nodes());
        out.sub_property_of = transitive_reflexive(&self.sub_property_of, self.property_nodes());
        let supers = successors(&out.sub_class_of);
        out.class_assertions = self
            .class_assertions
            .iter()
            .flat_map(|(i, c)| {
                supers
                    .get(c)
                    .into_iter()
                    .flatten()
                    .map(move |sup| (i.clone(), sup.clone()))
                    .chain(std::iter::once((i.clone(), c.clone())))
            })
            .collect();
        out.closed = true;
        out
    }

    fn class_nodes(&self) -> BTreeSet<NamedNode> {
        let mut nodes = BTreeSet::new();
        for (a, b) in &self.sub_class_of {
            nodes.insert(a.clone());
            nodes.insert(b.clone());
        }
        for (_, c) in self.class_assertions.iter().chain(&self.domains).chain(&self.ranges) {
            nodes.insert(c.clone());
        }
        for (c, _) in self.expected_data_types.iter().chain(&self.units) {
            nodes.insert(c.clone());
        }
        nodes
    }

    fn property_nodes(&self) -> BTreeSet<NamedNode> {
        let mut nodes = BTreeSet::new();
        for (a, b) in self.sub_property_of.iter().chain(&self.inverse_of) {
            nodes.insert(a.clone());
            nodes.insert(b.clone());
        }
        for (p, _) in self.domains.iter().chain(&self.ranges) {
            nodes.insert(p.clone());
        }
        nodes
    }

    /// `sub ⊑ sup` under the reflexive-transitive closure.
    pub fn is_subclass_of(&self, sub: &NamedNode, sup: &NamedNode) -> bool {
        sub == sup || reaches(&self.sub_class_of, sub, sup)
    }

    pub fn is_subproperty_of(&self, sub: &NamedNode, sup: &NamedNode) -> bool {
        sub == sup || reaches(&self.sub_property_of, sub, sup)
    }

    /// `class` and everything below it.
    pub fn subclasses(&self, class: &NamedNode) -> BTreeSet<NamedNode> {
        below(&self.sub_class_of, class)
    }

    pub fn subproperties(&self, property: &NamedNode) -> BTreeSet<NamedNode> {
        below(&self.sub_property_of, property)
    }

    /// `class` and everything above it.
    pub fn superclasses(&self, class: &NamedNode) -> BTreeSet<NamedNode> {
        let mut seen = BTreeSet::from([class.clone()]);
        let mut queue = VecDeque::from([class.clone()]);
        while let Some(c) = queue.pop_front() {
            for (a, b) in &self.sub_class_of {
                if a == &c && seen.insert(b.clone()) {
                    queue.push_back(b.clone());
                }
            }
        }
        seen
    }

    /// Datatypes declared on `class`, or on its nearest ancestors that declare any.
    pub fn expected_data_types_of(&self, class: &NamedNode) -> BTreeSet<NamedNode> {
        let mut seen = BTreeSet::from([class.clone()]);
        let mut frontier = vec![class.clone()];
        while !frontier.is_empty() {
            let found: BTreeSet<NamedNode> = self
                .expected_data_types
                .iter()
                .filter(|(c, _)| frontier.contains(c))
                .map(|(_, dt)| dt.clone())
                .collect();
            if !found.is_empty() {
                return found;
            }
            let mut next = Vec::new();
            for (a, b) in &self.sub_class_of {
                if frontier.contains(a) && seen.insert(b.clone()) {
                    next.push(b.clone());
                }
            }
            frontier = next;
        }
        BTreeSet::new()
    }

    pub fn domains_of(&self, property: &NamedNode) -> BTreeSet<NamedNode> {
        self.domains.iter().filter(|(p, _)| p == property).map(|(_, c)| c.clone()).collect()
    }

    pub fn ranges_of(&self, property: &NamedNode) -> BTreeSet<NamedNode> {
        self.ranges.iter().filter(|(p, _)| p == property).map(|(_, c)| c.clone()).collect()
    }

    pub fn units_of(&self, class: &NamedNode) -> BTreeSet<NamedNode> {
        self.units.iter().filter(|(c, _)| c == class).map(|(_, u)| u.clone()).collect()
    }

    /// Renders the asserted statements as quads; reflexive closure pairs are omitted.
    pub fn to_quads(&self, graph: Option<&NamedNode>) -> Vec<Quad> {
        let g = graph.cloned();
        let mut quads = Vec::new();
        let mut push = |pairs: &Pairs, predicate: &str| {
            for (a, b) in pairs {
                if a != b || predicate == ns::RDF_TYPE {
                    quads.push(Quad::new(a.clone(), nn(predicate), b.clone(), g.clone()));
                }
            }
        };
        push(&self.sub_class_of, ns::RDFS_SUB_CLASS_OF);
        push(&self.sub_property_of, ns::RDFS_SUB_PROPERTY_OF);
        push(&self.class_assertions, ns::RDF_TYPE);
        push(&self.inverse_of, ns::OWL_INVERSE_OF);
        push(&self.domains, ns::RDFS_DOMAIN);
        push(&self.ranges, ns::RDFS_RANGE);
        push(&self.expected_data_types, ns::DAQ_EXPECTED_DATA_TYPE);
        push(&self.units, ns::SDMX_UNIT_MEASURE);
        for (s, label) in &self.labels {
            quads.push(Quad::new(s.clone(), nn(ns::RDFS_LABEL), Literal::new_simple(label), g.clone()));
        }
        quads
    }
}

fn successors(pairs: &Pairs) -> BTreeMap<NamedNode, BTreeSet<NamedNode>> {
    let mut map: BTreeMap<NamedNode, BTreeSet<NamedNode>> = BTreeMap::new();
    for (a, b) in pairs {
        map.entry(a.clone()).or_default().insert(b.clone());
    }
    map
}

fn reaches(pairs: &Pairs, from: &NamedNode, to: &NamedNode) -> bool {
    let mut seen = BTreeSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        for (_, b) in pairs.iter().filter(|(a, _)| a == c) {
            if b == to {
                return true;
            }
            if seen.insert(b) {
                queue.push_back(b);
            }
        }
    }
    false
}

fn below(pairs: &Pairs, top: &NamedNode) -> BTreeSet<NamedNode> {
    let mut seen = BTreeSet::from([top.clone()]);
    let mut queue = VecDeque::from([top.clone()]);
    while let Some(c) = queue.pop_front() {
        for (a, b) in pairs {
            if b == &c && seen.insert(a.clone()) {
                queue.push_back(a.clone());
            }
        }
    }
    seen
}

fn transitive_reflexive(pairs: &Pairs, nodes: BTreeSet<NamedNode>) -> Pairs {
    let succ = successors(pairs);
    let mut out = Pairs::new();
    for start in nodes {
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(c) = queue.pop_front() {
            for next in succ.get(&c).into_iter().flatten() {
                if seen.insert(next.clone()) {
                    queue.push_back(next.clone());
                }
            }
        }
        out.extend(seen.into_iter().map(|s| (start.clone(), s)));
    }
    out
}

/// The core daQ hierarchy and Data Cube property typing.
pub fn builtin_daq_tbox() -> TBox {
    let mut t = TBox::new();
    let pair = |a: &str, b: &str| (nn(a), nn(b));

    t.sub_class_of.insert(pair(ns::DAQ_QUALITY_GRAPH, ns::QB_DATA_SET));

    for class in [ns::DAQ_CATEGORY, ns::DAQ_DIMENSION, ns::DAQ_METRIC_CLASS, ns::DAQ_QUALITY_GRAPH] {
        t.class_assertions.insert(pair(class, ns::RDFS_CLASS));
    }
    for (prop, kind) in [
        (ns::DAQ_METRIC, ns::QB_DIMENSION_PROPERTY),
        (ns::DAQ_COMPUTED_ON, ns::QB_DIMENSION_PROPERTY),
        (ns::DAQ_VALUE, ns::QB_MEASURE_PROPERTY),
        (ns::SDMX_UNIT_MEASURE, ns::QB_ATTRIBUTE_PROPERTY),
        (ns::DC_DATE, ns::QB_ATTRIBUTE_PROPERTY),
        (ns::DAQ_HAS_DIMENSION, ns::OWL_OBJECT_PROPERTY),
        (ns::DAQ_HAS_METRIC, ns::OWL_OBJECT_PROPERTY),
        (ns::DAQ_HAS_OBSERVATION, ns::OWL_OBJECT_PROPERTY),
        (ns::DAQ_EXPECTED_DATA_TYPE, ns::RDF_PROPERTY),
        (ns::DAQ_REQUIRES, ns::RDF_PROPERTY),
        (ns::DAQ_DSD, ns::QB_DATA_STRUCTURE_DEFINITION),
    ] {
        t.class_assertions.insert(pair(prop, kind));
    }

    for (prop, domain, range) in [
        (ns::DAQ_HAS_DIMENSION, ns::DAQ_CATEGORY, ns::DAQ_DIMENSION),
        (ns::DAQ_HAS_METRIC, ns::DAQ_DIMENSION, ns::DAQ_METRIC_CLASS),
        (ns::DAQ_HAS_OBSERVATION, ns::DAQ_METRIC_CLASS, ns::QB_OBSERVATION),
        (ns::DAQ_METRIC, ns::QB_OBSERVATION, ns::DAQ_METRIC_CLASS),
    ] {
        t.domains.insert(pair(prop, domain));
        t.ranges.insert(pair(prop, range));
    }
    t.domains.insert(pair(ns::DAQ_COMPUTED_ON, ns::QB_OBSERVATION));
    t.domains.insert(pair(ns::DAQ_VALUE, ns::QB_OBSERVATION));
    t.domains.insert(pair(ns::DAQ_EXPECTED_DATA_TYPE, ns::DAQ_METRIC_CLASS));

    t.inverse_of.insert(pair(ns::DAQ_HAS_OBSERVATION, ns::DAQ_METRIC));

    for (class, label) in [
        (ns::DAQ_CATEGORY, "Category"),
        (ns::DAQ_DIMENSION, "Dimension"),
        (ns::DAQ_METRIC_CLASS, "Metric"),
        (ns::DAQ_QUALITY_GRAPH, "Quality Graph"),
    ] {
        t.labels.insert(nn(class), label.to_owned());
    }
    t.closure()
}

/// The fixed data structure definition every quality graph points to.
///
/// Components, in `qb:order`: dimensions `daq:metric`, `daq:computedOn`;
/// measure `daq:value`; attributes `sdmx-attribute:unitMeasure` (optional)
/// and `dc:date` (required).
pub fn dsd_definition() -> Vec<Quad> {
    let dsd = nn(ns::DAQ_DSD);
    let mut quads = vec![Quad::new(
        dsd.clone(),
        nn(ns::RDF_TYPE),
        nn(ns::QB_DATA_STRUCTURE_DEFINITION),
        None,
    )];
    let components = [
        (ns::QB_DIMENSION, ns::DAQ_METRIC, None),
        (ns::QB_DIMENSION, ns::DAQ_COMPUTED_ON, None),
        (ns::QB_MEASURE, ns::DAQ_VALUE, None),
        (ns::QB_ATTRIBUTE, ns::SDMX_UNIT_MEASURE, Some(false)),
        (ns::QB_ATTRIBUTE, ns::DC_DATE, Some(true)),
    ];
    for (i, (role, property, required)) in components.into_iter().enumerate() {
        let order = i + 1;
        let spec = BlankNode::new(format!("dsdComponent{order}")).expect("valid label");
        quads.push(Quad::new(dsd.clone(), nn(ns::QB_COMPONENT), spec.clone(), None));
        quads.push(Quad::new(spec.clone(), nn(ns::RDF_TYPE), nn(ns::QB_COMPONENT_SPECIFICATION), None));
        quads.push(Quad::new(spec.clone(), nn(role), nn(property), None));
        quads.push(Quad::new(
            spec.clone(),
            nn(ns::QB_ORDER),
            Literal::new_typed(order.to_string(), nn(ns::XSD_INTEGER)),
            None,
        ));
        if let Some(required) = required {
            quads.push(Quad::new(spec, nn(ns::QB_COMPONENT_REQUIRED), Literal::boolean(required), None));
        }
    }
    quads
}

/// Resources in `data` asserted to be of type `class` or any of its
/// subclasses. Expects a closed `tbox`.
pub fn instances_of(data: &QuadDataset, class: &NamedNode, tbox: &TBox) -> BTreeSet<NamedNode> {
    debug_assert!(tbox.is_closed(), "instances_of expects a closed TBox");
    let classes = tbox.subclasses(class);
    data.iter()
        .filter(|q| q.predicate == ns::RDF_TYPE)
        .filter(|q| matches!(&q.object, Term::NamedNode(c) if classes.contains(c)))
        .filter_map(|q| q.subject.as_named_node().cloned())
        .collect()
}
