use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::iso::{canonical_blank_labels, relabel};
use super::model::{escape_string, Literal, NamedNode, Quad, QuadDataset, Subject, Term};
use super::parser::RdfFormat;
use crate::vocab::ns;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerializeError {
    #[error("{format} cannot hold named graphs; use TriG or N-Quads")]
    NamedGraphsUnsupported { format: RdfFormat },
}

/// Serializes a dataset. Blank nodes are relabelled canonically and
/// statements are sorted, so equal datasets produce identical bytes.
pub fn serialize(dataset: &QuadDataset, format: RdfFormat) -> Result<Vec<u8>, SerializeError> {
    if !format.supports_named_graphs() && dataset.has_named_graphs() {
        return Err(SerializeError::NamedGraphsUnsupported { format });
    }
    let canonical = relabel(dataset, &canonical_blank_labels(dataset));
    let text = match format {
        RdfFormat::NTriples | RdfFormat::NQuads => write_line_based(&canonical),
        RdfFormat::Turtle | RdfFormat::TriG => write_turtle_family(&canonical),
    };
    Ok(text.into_bytes())
}

fn write_line_based(dataset: &QuadDataset) -> String {
    let mut out = String::new();
    for q in dataset.iter() {
        let _ = writeln!(out, "{q}");
    }
    out
}

struct Compactor {
    // namespace → prefix, longest namespace first
    namespaces: Vec<(String, String)>,
}

fn is_safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-'))
        }
        Some(c) if c.is_ascii_digit() => chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-')),
        _ => false,
    }
}

fn is_valid_prefix(p: &str) -> bool {
    let mut chars = p.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-')),
        _ => false,
    }
}

impl Compactor {
    fn new(prefixes: &BTreeMap<String, String>) -> Self {
        let mut namespaces: Vec<(String, String)> = prefixes
            .iter()
            .filter(|(p, _)| is_valid_prefix(p))
            .map(|(p, ns)| (ns.clone(), p.clone()))
            .collect();
        namespaces.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.cmp(b)));
        Compactor { namespaces }
    }

    fn iri(&self, iri: &NamedNode) -> String {
        for (ns, prefix) in &self.namespaces {
            if let Some(local) = iri.as_str().strip_prefix(ns.as_str()) {
                if is_safe_local(local) {
                    return format!("{prefix}:{local}");
                }
            }
        }
        iri.to_string()
    }

    fn literal(&self, lit: &Literal) -> String {
        let quoted = format!("\"{}\"", escape_string(lit.lexical()));
        match lit.language() {
            Some(lang) => format!("{quoted}@{lang}"),
            None if lit.datatype() == ns::XSD_STRING => quoted,
            None => format!("{quoted}^^{}", self.iri(lit.datatype())),
        }
    }

    fn term(&self, t: &Term) -> String {
        match t {
            Term::NamedNode(n) => self.iri(n),
            Term::BlankNode(b) => b.to_string(),
            Term::Literal(l) => self.literal(l),
        }
    }

    fn subject(&self, s: &Subject) -> String {
        match s {
            Subject::NamedNode(n) => self.iri(n),
            Subject::BlankNode(b) => b.to_string(),
        }
    }

    fn predicate(&self, p: &NamedNode) -> String {
        if p == ns::RDF_TYPE {
            "a".to_owned()
        } else {
            self.iri(p)
        }
    }
}

fn write_turtle_family(dataset: &QuadDataset) -> String {
    let compactor = Compactor::new(dataset.prefixes());
    let mut out = String::new();
    for (prefix, iri) in dataset.prefixes() {
        if is_valid_prefix(prefix) {
            let _ = writeln!(out, "@prefix {prefix}: <{iri}> .");
        }
    }
    let default: Vec<&Quad> = dataset.graph_iter(None).collect();
    if !default.is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        write_statements(&mut out, &compactor, &default, "");
    }
    for graph in dataset.graph_names() {
        if !out.is_empty() {
            out.push('\n');
        }
        let quads: Vec<&Quad> = dataset.graph_iter(Some(&graph)).collect();
        let _ = writeln!(out, "{} {{", compactor.iri(&graph));
        write_statements(&mut out, &compactor, &quads, "    ");
        out.push_str("}\n");
    }
    out
}

/// Quads arrive sorted, so subjects and predicates are already grouped.
fn write_statements(out: &mut String, c: &Compactor, quads: &[&Quad], indent: &str) {
    let mut i = 0;
    while i < quads.len() {
        let subject = &quads[i].subject;
        let _ = write!(out, "{indent}{}", c.subject(subject));
        let mut first_predicate = true;
        while i < quads.len() && &quads[i].subject == subject {
            let predicate = &quads[i].predicate;
            if !first_predicate {
                let _ = write!(out, " ;\n{indent}   ");
            }
            first_predicate = false;
            let _ = write!(out, " {} ", c.predicate(predicate));
            let mut first_object = true;
            while i < quads.len() && &quads[i].subject == subject && &quads[i].predicate == predicate {
                if !first_object {
                    out.push_str(", ");
                }
                first_object = false;
                out.push_str(&c.term(&quads[i].object));
                i += 1;
            }
        }
        out.push_str(" .\n");
    }
}
