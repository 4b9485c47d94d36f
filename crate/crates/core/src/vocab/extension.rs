//! Loading metric vocabularies that extend daQ by subclassing.
//!
//! An extension declares its own subclasses of `daq:Category`,
//! `daq:Dimension` and `daq:Metric`, and links them with sub-properties of
//! `daq:hasDimension` (category → dimension) and `daq:hasMetric`
//! (dimension → metric) whose `rdfs:domain`/`rdfs:range` name the classes.
//! Each metric class also states its `daq:expectedDataType`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::ns;
use super::tbox::{builtin_daq_tbox, TBox};
use crate::rdf::{parse_document, NamedNode, QuadDataset, RdfFormat};

const CATALOG_TTL: &str = include_str!("catalog.ttl");

/// Everything needed to emit observations for one metric class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetricDescriptor {
    pub metric_class: NamedNode,
    pub dimension_class: NamedNode,
    pub category_class: NamedNode,
    pub has_metric_property: NamedNode,
    pub has_dimension_property: NamedNode,
    pub expected_data_type: NamedNode,
    pub unit_measure: Option<NamedNode>,
    pub label: Option<String>,
}

impl MetricDescriptor {
    /// The label if present, else the class's local name.
    pub fn display_name(&self) -> &str {
        self.label.as_deref().unwrap_or_else(|| self.metric_class.local_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionDefect {
    pub class: NamedNode,
    pub message: String,
}

impl fmt::Display for ExtensionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.class, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("extension vocabulary has {} defect(s): {}", .defects.len(), .defects.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ExtensionError {
    pub defects: Vec<ExtensionDefect>,
}

fn nn(iri: &str) -> NamedNode {
    NamedNode::new_unchecked(iri)
}

/// Proper sub-properties of `root` whose range covers `class`. Properties
/// whose range is exactly `class` win over ones with a broader range.
fn linking_properties(t: &TBox, root: &str, class: &NamedNode) -> BTreeSet<NamedNode> {
    let root = nn(root);
    let candidates: Vec<(NamedNode, bool)> = t
        .subproperties(&root)
        .into_iter()
        .filter(|p| p != &root && !t.is_subproperty_of(&root, p))
        .filter_map(|p| {
            let ranges = t.ranges_of(&p);
            let exact = ranges.contains(class);
            // a range naming a daQ root class would cover every class below it
            let covers = ranges
                .iter()
                .any(|r| t.is_subclass_of(class, r) && ![ns::DAQ_METRIC_CLASS, ns::DAQ_DIMENSION, ns::DAQ_CATEGORY].contains(&r.as_str()));
            (exact || covers).then_some((p, exact))
        })
        .collect();
    let any_exact = candidates.iter().any(|(_, e)| *e);
    candidates
        .into_iter()
        .filter(|(_, exact)| *exact || !any_exact)
        .map(|(p, _)| p)
        .collect()
}

fn describe(set: &BTreeSet<NamedNode>) -> String {
    set.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
}

/// Merges `ext` into `base`, closes the result, and resolves one descriptor
/// per metric class. All defects are collected before failing.
pub fn load_extension(
    ext: &QuadDataset,
    base: &TBox,
) -> Result<(Vec<MetricDescriptor>, TBox), ExtensionError> {
    let mut merged = base.clone();
    merged.merge(&TBox::from_dataset(ext));
    let merged = merged.closure();

    let metric_root = nn(ns::DAQ_METRIC_CLASS);
    let dimension_root = nn(ns::DAQ_DIMENSION);
    let category_root = nn(ns::DAQ_CATEGORY);

    let metric_classes: BTreeSet<NamedNode> = merged
        .subclasses(&metric_root)
        .into_iter()
        .filter(|c| !merged.is_subclass_of(&metric_root, c))
        .collect();

    let mut descriptors = Vec::new();
    let mut defects = Vec::new();
    for class in metric_classes {
        let mut problems = Vec::new();

        let dt = merged.expected_data_types_of(&class);
        let expected = match dt.len() {
            0 => {
                problems.push("lacks daq:expectedDataType".to_owned());
                None
            }
            1 => {
                let dt = dt.into_iter().next().expect("one element");
                if ns::RECOGNIZED_VALUE_DATATYPES.contains(&dt.as_str()) {
                    Some(dt)
                } else {
                    problems.push(format!("daq:expectedDataType {dt} is not a recognized datatype"));
                    None
                }
            }
            _ => {
                problems.push(format!("has several daq:expectedDataType values: {}", describe(&dt)));
                None
            }
        };

        let units = merged.units_of(&class);
        if units.len() > 1 {
            problems.push(format!("has several unit attributes: {}", describe(&units)));
        }

        let mut link = None;
        let metric_props = linking_properties(&merged, ns::DAQ_HAS_METRIC, &class);
        match metric_props.len() {
            0 => problems.push("no sub-property of daq:hasMetric has this class as its range".to_owned()),
            1 => {
                let prop = metric_props.into_iter().next().expect("one element");
                let dims: BTreeSet<NamedNode> = merged
                    .domains_of(&prop)
                    .into_iter()
                    .filter(|d| merged.is_subclass_of(d, &dimension_root) && d != &dimension_root)
                    .collect();
                match dims.len() {
                    0 => problems.push(format!("{prop} has no rdfs:domain below daq:Dimension")),
                    1 => link = Some((prop, dims.into_iter().next().expect("one element"))),
                    _ => problems.push(format!("{prop} has several dimension domains: {}", describe(&dims))),
                }
            }
            _ => problems.push(format!(
                "linked from several daq:hasMetric sub-properties: {}",
                describe(&metric_props)
            )),
        }

        let mut category = None;
        if let Some((_, dimension)) = &link {
            let dim_props = linking_properties(&merged, ns::DAQ_HAS_DIMENSION, dimension);
            let parents: BTreeSet<(NamedNode, NamedNode)> = dim_props
                .into_iter()
                .flat_map(|q| {
                    merged
                        .domains_of(&q)
                        .into_iter()
                        .filter(|c| merged.is_subclass_of(c, &category_root) && c != &category_root)
                        .map(move |c| (q.clone(), c))
                })
                .collect();
            match parents.len() {
                0 => problems.push(format!(
                    "dimension {dimension} is not in the range of any daq:hasDimension sub-property with a category domain"
                )),
                1 => category = parents.into_iter().next(),
                _ => problems.push(format!(
                    "dimension {dimension} has several parent categories: {}",
                    parents.iter().map(|(q, c)| format!("{c} via {q}")).collect::<Vec<_>>().join(", ")
                )),
            }
        }

        if problems.is_empty() {
            let (metric_prop, dimension) = link.expect("no problems implies a link");
            let (dim_prop, category) = category.expect("no problems implies a category");
            descriptors.push(MetricDescriptor {
                label: merged.labels.get(&class).cloned(),
                unit_measure: units.into_iter().next(),
                metric_class: class,
                dimension_class: dimension,
                category_class: category,
                has_metric_property: metric_prop,
                has_dimension_property: dim_prop,
                expected_data_type: expected.expect("no problems implies a datatype"),
            });
        } else {
            defects.extend(problems.into_iter().map(|message| ExtensionDefect {
                class: class.clone(),
                message,
            }));
        }
    }

    if defects.is_empty() {
        Ok((descriptors, merged))
    } else {
        Err(ExtensionError { defects })
    }
}

/// The metric vocabulary shipped with the toolkit, as Turtle.
pub fn shipped_catalog_turtle() -> &'static str {
    CATALOG_TTL
}

pub fn shipped_catalog() -> QuadDataset {
    parse_document(CATALOG_TTL.as_bytes(), RdfFormat::Turtle).expect("shipped catalog parses")
}

/// Descriptors and merged TBox for the built-in vocabulary plus the shipped catalog.
pub fn shipped_descriptors() -> (Vec<MetricDescriptor>, TBox) {
    load_extension(&shipped_catalog(), &builtin_daq_tbox()).expect("shipped catalog is well-formed")
}
