//! RDF terms, quads and datasets, with N-Triples, N-Quads, Turtle and TriG
//! I/O.

mod iso;
mod lexer;
mod model;
mod parser;
mod serializer;

pub use iso::{canonical_blank_labels, isomorphic, relabel};
pub use model::{
    format_double, BlankNode, Literal, NamedNode, Quad, QuadDataset, Subject, Term, TermError,
};
pub use parser::{parse_document, parse_document_with_base, ParseError, ParseErrorKind, RdfFormat};
pub use serializer::{serialize, SerializeError};
