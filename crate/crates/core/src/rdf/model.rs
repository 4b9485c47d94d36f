use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::vocab::ns;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("IRI <{0}> is not absolute")]
    RelativeIri(String),
    #[error("IRI <{0}> contains a forbidden character")]
    InvalidIriChar(String),
    #[error("invalid blank node label {0:?}")]
    InvalidBlankLabel(String),
    #[error("invalid language tag {0:?}")]
    InvalidLanguageTag(String),
}

/// Returns true if `iri` starts with a URI scheme followed by `:`.
pub fn has_scheme(iri: &str) -> bool {
    let Some(colon) = iri.find(':') else {
        return false;
    };
    let scheme = &iri[..colon];
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

/// An absolute IRI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NamedNode(String);

impl NamedNode {
    pub fn new(iri: impl Into<String>) -> Result<Self, TermError> {
        let iri = iri.into();
        if iri
            .chars()
            .any(|c| c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
        {
            return Err(TermError::InvalidIriChar(iri));
        }
        if !has_scheme(&iri) {
            return Err(TermError::RelativeIri(iri));
        }
        Ok(NamedNode(iri))
    }

    /// For IRIs known to be valid, such as vocabulary constants.
    pub fn new_unchecked(iri: impl Into<String>) -> Self {
        let iri = iri.into();
        debug_assert!(has_scheme(&iri), "not an absolute IRI: {iri}");
        NamedNode(iri)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// The part after the last `#` or `/`.
    pub fn local_name(&self) -> &str {
        let cut = self.0.rfind(['#', '/']).map(|i| i + 1).unwrap_or(0);
        &self.0[cut..]
    }
}

impl fmt::Display for NamedNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl PartialEq<str> for NamedNode {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for NamedNode {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        let valid = !label.is_empty()
            && label
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
            && !label.ends_with('.');
        if valid {
            Ok(BlankNode(label))
        } else {
            Err(TermError::InvalidBlankLabel(label))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// A literal. Plain literals carry `xsd:string`; language-tagged ones carry
/// `rdf:langString` and a lowercase tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    datatype: NamedNode,
    language: Option<String>,
}

impl Literal {
    pub fn new_simple(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: NamedNode::new_unchecked(ns::XSD_STRING),
            language: None,
        }
    }

    pub fn new_typed(lexical: impl Into<String>, datatype: NamedNode) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype,
            language: None,
        }
    }

    pub fn new_language_tagged(
        lexical: impl Into<String>,
        language: impl Into<String>,
    ) -> Result<Self, TermError> {
        let language = language.into();
        let valid = !language.is_empty()
            && language.split('-').enumerate().all(|(i, part)| {
                !part.is_empty()
                    && part.len() <= 8
                    && part
                        .chars()
                        .all(|c| if i == 0 { c.is_ascii_alphabetic() } else { c.is_ascii_alphanumeric() })
            });
        if !valid {
            return Err(TermError::InvalidLanguageTag(language));
        }
        Ok(Literal {
            lexical: lexical.into(),
            datatype: NamedNode::new_unchecked(ns::RDF_LANG_STRING),
            language: Some(language.to_ascii_lowercase()),
        })
    }

    pub fn boolean(value: bool) -> Self {
        Self::new_typed(value.to_string(), NamedNode::new_unchecked(ns::XSD_BOOLEAN))
    }

    pub fn double(value: f64) -> Self {
        Self::new_typed(format_double(value), NamedNode::new_unchecked(ns::XSD_DOUBLE))
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &NamedNode {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    /// Numeric reading of the literal: booleans map to 0/1, numeric XSD
    /// types parse as f64. Anything else is `None`.
    pub fn as_f64(&self) -> Option<f64> {
        let dt = self.datatype.as_str();
        if dt == ns::XSD_BOOLEAN {
            return match self.lexical.trim() {
                "true" | "1" => Some(1.0),
                "false" | "0" => Some(0.0),
                _ => None,
            };
        }
        if ns::NUMERIC_DATATYPES.contains(&dt) {
            let lex = self.lexical.trim();
            return match lex {
                "INF" | "+INF" => Some(f64::INFINITY),
                "-INF" => Some(f64::NEG_INFINITY),
                _ => lex.parse::<f64>().ok().filter(|v| !v.is_nan() || lex == "NaN"),
            };
        }
        None
    }
}

/// Shortest round-trip decimal text for a double, always with a fractional
/// part or exponent so it reads as an `xsd:double`.
pub fn format_double(value: f64) -> String {
    if value.is_nan() {
        "NaN".to_owned()
    } else if value.is_infinite() {
        if value > 0.0 { "INF" } else { "-INF" }.to_owned()
    } else {
        format!("{value:?}")
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        f.write_str(&escape_string(&self.lexical))?;
        f.write_str("\"")?;
        match &self.language {
            Some(lang) => write!(f, "@{lang}"),
            None if self.datatype == ns::XSD_STRING => Ok(()),
            None => write!(f, "^^{}", self.datatype),
        }
    }
}

pub(crate) fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            '\u{08}' => out.push_str("\\b"),
            '\u{0C}' => out.push_str("\\f"),
            c if (c as u32) < 0x20 || c == '\u{7F}' => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
    out
}

/// An RDF term. The derived ordering sorts IRIs before blank nodes before
/// literals, then by their fields.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    NamedNode(NamedNode),
    BlankNode(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn as_named_node(&self) -> Option<&NamedNode> {
        match self {
            Term::NamedNode(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_blank_node(&self) -> Option<&BlankNode> {
        match self {
            Term::BlankNode(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_blank_node(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::NamedNode(n) => n.fmt(f),
            Term::BlankNode(b) => b.fmt(f),
            Term::Literal(l) => l.fmt(f),
        }
    }
}

impl From<NamedNode> for Term {
    fn from(n: NamedNode) -> Self {
        Term::NamedNode(n)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::BlankNode(b)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl From<Subject> for Term {
    fn from(s: Subject) -> Self {
        match s {
            Subject::NamedNode(n) => Term::NamedNode(n),
            Subject::BlankNode(b) => Term::BlankNode(b),
        }
    }
}

/// Subject position: never a literal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    NamedNode(NamedNode),
    BlankNode(BlankNode),
}

impl Subject {
    pub fn as_named_node(&self) -> Option<&NamedNode> {
        match self {
            Subject::NamedNode(n) => Some(n),
            Subject::BlankNode(_) => None,
        }
    }

    pub fn to_term(&self) -> Term {
        self.clone().into()
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::NamedNode(n) => n.fmt(f),
            Subject::BlankNode(b) => b.fmt(f),
        }
    }
}

impl From<NamedNode> for Subject {
    fn from(n: NamedNode) -> Self {
        Subject::NamedNode(n)
    }
}

impl From<BlankNode> for Subject {
    fn from(b: BlankNode) -> Self {
        Subject::BlankNode(b)
    }
}

impl TryFrom<Term> for Subject {
    type Error = Literal;

    fn try_from(t: Term) -> Result<Self, Literal> {
        match t {
            Term::NamedNode(n) => Ok(Subject::NamedNode(n)),
            Term::BlankNode(b) => Ok(Subject::BlankNode(b)),
            Term::Literal(l) => Err(l),
        }
    }
}

/// A statement, optionally inside a named graph. `graph == None` is the
/// default graph.
///
/// Field order matters: the derived ordering sorts by graph first, which
/// keeps each graph's quads contiguous in a [`QuadDataset`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad {
    pub graph: Option<NamedNode>,
    pub subject: Subject,
    pub predicate: NamedNode,
    pub object: Term,
}

impl Quad {
    pub fn new(
        subject: impl Into<Subject>,
        predicate: NamedNode,
        object: impl Into<Term>,
        graph: Option<NamedNode>,
    ) -> Self {
        Quad {
            graph,
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }
}

impl AsRef<Quad> for Quad {
    fn as_ref(&self) -> &Quad {
        self
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)?;
        if let Some(g) = &self.graph {
            write!(f, " {g}")?;
        }
        f.write_str(" .")
    }
}

/// A set of quads partitioned by graph, plus prefix hints for serializers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuadDataset {
    quads: BTreeSet<Quad>,
    prefixes: BTreeMap<String, String>,
}

impl QuadDataset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns false if the quad was already present.
    pub fn insert(&mut self, quad: Quad) -> bool {
        self.quads.insert(quad)
    }

    pub fn remove(&mut self, quad: &Quad) -> bool {
        self.quads.remove(quad)
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.quads.contains(quad)
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Quad> + '_ {
        self.quads.iter()
    }

    pub fn quads(&self) -> &BTreeSet<Quad> {
        &self.quads
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: impl Into<String>, iri: impl Into<String>) {
        self.prefixes.insert(prefix.into(), iri.into());
    }

    /// Adds all quads and prefixes of `other`. Prefixes already bound here win.
    pub fn extend_from(&mut self, other: &QuadDataset) {
        self.quads.extend(other.quads.iter().cloned());
        for (p, iri) in &other.prefixes {
            self.prefixes.entry(p.clone()).or_insert_with(|| iri.clone());
        }
    }

    /// Distinct names of non-default graphs, in term order.
    pub fn graph_names(&self) -> Vec<NamedNode> {
        let mut names: Vec<NamedNode> = Vec::new();
        for q in &self.quads {
            if let Some(g) = &q.graph {
                // quads are sorted by graph, so duplicates are adjacent
                if names.last() != Some(g) {
                    names.push(g.clone());
                }
            }
        }
        names
    }

    pub fn has_named_graphs(&self) -> bool {
        self.quads.iter().next_back().is_some_and(|q| q.graph.is_some())
    }

    /// All quads whose graph component equals `graph`.
    pub fn graph_view(&self, graph: Option<&NamedNode>) -> BTreeSet<Quad> {
        self.graph_iter(graph).cloned().collect()
    }

    pub fn graph_iter<'a>(&'a self, graph: Option<&'a NamedNode>) -> impl Iterator<Item = &'a Quad> + 'a {
        self.quads.iter().filter(move |q| q.graph.as_ref() == graph)
    }

    /// Objects of `(subject, predicate, ?)` across all graphs.
    pub fn objects_of<'a>(
        &'a self,
        subject: &'a Subject,
        predicate: &'a str,
    ) -> impl Iterator<Item = &'a Term> + 'a {
        self.quads
            .iter()
            .filter(move |q| &q.subject == subject && q.predicate == predicate)
            .map(|q| &q.object)
    }
}

impl FromIterator<Quad> for QuadDataset {
    fn from_iter<I: IntoIterator<Item = Quad>>(iter: I) -> Self {
        QuadDataset {
            quads: iter.into_iter().collect(),
            prefixes: BTreeMap::new(),
        }
    }
}

impl Extend<Quad> for QuadDataset {
    fn extend<I: IntoIterator<Item = Quad>>(&mut self, iter: I) {
        self.quads.extend(iter)
    }
}

impl<'a> IntoIterator for &'a QuadDataset {
    type Item = &'a Quad;
    type IntoIter = std::collections::btree_set::Iter<'a, Quad>;

    fn into_iter(self) -> Self::IntoIter {
        self.quads.iter()
    }
}
