use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use super::lexer::{Lexer, Pos, Tok};
use super::model::{BlankNode, Literal, NamedNode, Quad, QuadDataset, Subject, Term};
use crate::vocab::ns;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RdfFormat {
    NTriples,
    NQuads,
    Turtle,
    TriG,
}

impl RdfFormat {
    pub fn media_type(self) -> &'static str {
        match self {
            RdfFormat::NTriples => "application/n-triples",
            RdfFormat::NQuads => "application/n-quads",
            RdfFormat::Turtle => "text/turtle",
            RdfFormat::TriG => "application/trig",
        }
    }

    pub fn from_media_type(media_type: &str) -> Option<Self> {
        let essence = media_type.split(';').next()?.trim().to_ascii_lowercase();
        match essence.as_str() {
            "text/turtle" | "application/x-turtle" => Some(RdfFormat::Turtle),
            "application/n-triples" | "text/plain" => Some(RdfFormat::NTriples),
            "application/trig" | "application/x-trig" => Some(RdfFormat::TriG),
            "application/n-quads" | "text/x-nquads" => Some(RdfFormat::NQuads),
            _ => None,
        }
    }

    /// Short name used on the command line and as a file extension.
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext.to_ascii_lowercase().as_str() {
            "nt" => Some(RdfFormat::NTriples),
            "nq" => Some(RdfFormat::NQuads),
            "ttl" | "turtle" => Some(RdfFormat::Turtle),
            "trig" => Some(RdfFormat::TriG),
            _ => None,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            RdfFormat::NTriples => "nt",
            RdfFormat::NQuads => "nq",
            RdfFormat::Turtle => "ttl",
            RdfFormat::TriG => "trig",
        }
    }

    pub fn supports_named_graphs(self) -> bool {
        matches!(self, RdfFormat::NQuads | RdfFormat::TriG)
    }
}

impl fmt::Display for RdfFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RdfFormat::NTriples => "N-Triples",
            RdfFormat::NQuads => "N-Quads",
            RdfFormat::Turtle => "Turtle",
            RdfFormat::TriG => "TriG",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    /// Valid RDF syntax outside the supported subset (collections, quoted triples).
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{format} {}error at line {line}, column {column}: {message}", if *.kind == ParseErrorKind::Unsupported { "unsupported syntax " } else { "syntax " })]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub format: RdfFormat,
    pub kind: ParseErrorKind,
}

static DOCUMENT_SCOPE: AtomicU64 = AtomicU64::new(0);

/// Parses a whole document. Relative IRIs are rejected.
pub fn parse_document(bytes: &[u8], format: RdfFormat) -> Result<QuadDataset, ParseError> {
    parse_document_with_base(bytes, format, None)
}

/// Parses a whole document, resolving relative IRIs against `base` when given.
pub fn parse_document_with_base(
    bytes: &[u8],
    format: RdfFormat,
    base: Option<&str>,
) -> Result<QuadDataset, ParseError> {
    let text = match std::str::from_utf8(bytes) {
        Ok(t) => t,
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            let line = valid.iter().filter(|b| **b == b'\n').count() + 1;
            let last_nl = valid.iter().rposition(|b| *b == b'\n').map_or(0, |i| i + 1);
            let column = String::from_utf8_lossy(&valid[last_nl..]).chars().count() + 1;
            return Err(ParseError {
                line,
                column,
                message: "input is not valid UTF-8".into(),
                format,
                kind: ParseErrorKind::Syntax,
            });
        }
    };
    let base = match base {
        Some(b) => Some(url::Url::parse(b).map_err(|e| ParseError {
            line: 1,
            column: 1,
            message: format!("invalid base IRI {b:?}: {e}"),
            format,
            kind: ParseErrorKind::Syntax,
        })?),
        None => None,
    };
    let mut parser = Parser::new(text, format, base)?;
    match format {
        RdfFormat::NTriples | RdfFormat::NQuads => parser.parse_line_based()?,
        RdfFormat::Turtle | RdfFormat::TriG => parser.parse_turtle_family()?,
    }
    Ok(parser.out)
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: Pos,
    format: RdfFormat,
    base: Option<url::Url>,
    prefixes: HashMap<String, String>,
    scope: u64,
    anon_counter: u64,
    out: QuadDataset,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn new(text: &'a str, format: RdfFormat, base: Option<url::Url>) -> PResult<Self> {
        let mut p = Parser {
            lexer: Lexer::new(text),
            tok: Tok::Eof,
            pos: Pos { line: 1, column: 1 },
            format,
            base,
            prefixes: HashMap::new(),
            scope: DOCUMENT_SCOPE.fetch_add(1, Ordering::Relaxed),
            anon_counter: 0,
            out: QuadDataset::new(),
        };
        p.advance()?;
        Ok(p)
    }

    fn error_at<T>(&self, pos: Pos, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            line: pos.line,
            column: pos.column,
            message: message.into(),
            format: self.format,
            kind: ParseErrorKind::Syntax,
        })
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        self.error_at(self.pos, message)
    }

    fn unsupported<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            line: self.pos.line,
            column: self.pos.column,
            message: message.into(),
            format: self.format,
            kind: ParseErrorKind::Unsupported,
        })
    }

    fn advance(&mut self) -> PResult<Tok> {
        let (tok, pos) = self.lexer.next_token().map_err(|e| ParseError {
            line: e.pos.line,
            column: e.pos.column,
            message: e.message,
            format: self.format,
            kind: ParseErrorKind::Syntax,
        })?;
        self.pos = pos;
        Ok(std::mem::replace(&mut self.tok, tok))
    }

    fn expect(&mut self, want: Tok) -> PResult<()> {
        if self.tok == want {
            self.advance()?;
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", want.describe(), self.tok.describe()))
        }
    }

    fn check_unsupported(&self) -> PResult<()> {
        match self.tok {
            Tok::LParen => self.unsupported("RDF collections '( ... )' are not supported"),
            Tok::QuotedTripleOpen => self.unsupported("quoted triples '<< ... >>' are not supported"),
            _ => Ok(()),
        }
    }

    fn resolve_iri(&self, raw: &str, pos: Pos) -> PResult<NamedNode> {
        if super::model::has_scheme(raw) {
            return NamedNode::new(raw).or_else(|e| self.error_at(pos, e.to_string()));
        }
        match &self.base {
            Some(base) => match base.join(raw) {
                Ok(u) => NamedNode::new(u.as_str()).or_else(|e| self.error_at(pos, e.to_string())),
                Err(e) => self.error_at(pos, format!("cannot resolve <{raw}>: {e}")),
            },
            None => self.error_at(pos, format!("relative IRI <{raw}> and no base IRI supplied")),
        }
    }

    fn expand_pname(&self, prefix: &str, local: &str, pos: Pos) -> PResult<NamedNode> {
        match self.prefixes.get(prefix) {
            Some(ns) => NamedNode::new(format!("{ns}{local}")).or_else(|e| self.error_at(pos, e.to_string())),
            None => self.error_at(pos, format!("undeclared prefix {prefix:?}")),
        }
    }

    fn blank(&self, label: &str) -> BlankNode {
        BlankNode::new(format!("n{}-{}", self.scope, label)).expect("lexer only yields valid labels")
    }

    fn fresh_blank(&mut self) -> BlankNode {
        self.anon_counter += 1;
        BlankNode::new(format!("n{}_{}", self.scope, self.anon_counter)).expect("valid label")
    }

    fn emit(&mut self, s: Subject, p: NamedNode, o: Term, g: &Option<NamedNode>) {
        self.out.insert(Quad::new(s, p, o, g.clone()));
    }

    // ---- N-Triples / N-Quads ----

    fn parse_line_based(&mut self) -> PResult<()> {
        let quads = self.format == RdfFormat::NQuads;
        while self.tok != Tok::Eof {
            self.check_unsupported()?;
            let subject: Subject = match self.advance()? {
                Tok::IriRef(i) => self.resolve_iri(&i, self.pos)?.into(),
                Tok::Blank(b) => self.blank(&b).into(),
                t => return self.error(format!("expected subject, found {}", t.describe())),
            };
            let pos = self.pos;
            let predicate = match self.advance()? {
                Tok::IriRef(i) => self.resolve_iri(&i, pos)?,
                t => return self.error_at(pos, format!("expected predicate IRI, found {}", t.describe())),
            };
            self.check_unsupported()?;
            let pos = self.pos;
            let object: Term = match self.advance()? {
                Tok::IriRef(i) => self.resolve_iri(&i, pos)?.into(),
                Tok::Blank(b) => self.blank(&b).into(),
                Tok::Str(s) => self.finish_literal(s)?.into(),
                t => return self.error_at(pos, format!("expected object, found {}", t.describe())),
            };
            let graph = if quads {
                match self.tok.clone() {
                    Tok::IriRef(i) => {
                        let pos = self.pos;
                        self.advance()?;
                        Some(self.resolve_iri(&i, pos)?)
                    }
                    Tok::Blank(_) => return self.unsupported("blank node graph names are not supported"),
                    _ => None,
                }
            } else {
                None
            };
            self.expect(Tok::Dot)?;
            self.emit(subject, predicate, object, &graph);
        }
        Ok(())
    }

    fn finish_literal(&mut self, lexical: String) -> PResult<Literal> {
        match self.tok.clone() {
            Tok::LangTag(tag) => {
                let pos = self.pos;
                self.advance()?;
                Literal::new_language_tagged(lexical, tag).or_else(|e| self.error_at(pos, e.to_string()))
            }
            Tok::DoubleCaret => {
                self.advance()?;
                let pos = self.pos;
                let datatype = match self.advance()? {
                    Tok::IriRef(i) => self.resolve_iri(&i, pos)?,
                    Tok::PName { prefix, local } if self.is_turtle() => self.expand_pname(&prefix, &local, pos)?,
                    t => return self.error_at(pos, format!("expected datatype IRI, found {}", t.describe())),
                };
                if datatype == ns::RDF_LANG_STRING {
                    return self.error_at(pos, "rdf:langString literal without a language tag");
                }
                Ok(Literal::new_typed(lexical, datatype))
            }
            _ => Ok(Literal::new_simple(lexical)),
        }
    }

    fn is_turtle(&self) -> bool {
        matches!(self.format, RdfFormat::Turtle | RdfFormat::TriG)
    }

    // ---- Turtle / TriG ----

    fn parse_turtle_family(&mut self) -> PResult<()> {
        while self.tok != Tok::Eof {
            match self.tok {
                Tok::Prefix(at) => self.parse_prefix(at)?,
                Tok::Base(at) => self.parse_base(at)?,
                _ if self.format == RdfFormat::TriG => self.parse_trig_block()?,
                _ => {
                    self.parse_triples(&None)?;
                    self.expect(Tok::Dot)?;
                }
            }
        }
        Ok(())
    }

    fn parse_prefix(&mut self, at_form: bool) -> PResult<()> {
        self.advance()?;
        let pos = self.pos;
        let prefix = match self.advance()? {
            Tok::PName { prefix, local } if local.is_empty() => prefix,
            t => return self.error_at(pos, format!("expected prefix name ending in ':', found {}", t.describe())),
        };
        let pos = self.pos;
        let iri = match self.advance()? {
            Tok::IriRef(i) => self.resolve_iri(&i, pos)?,
            t => return self.error_at(pos, format!("expected namespace IRI, found {}", t.describe())),
        };
        if at_form {
            self.expect(Tok::Dot)?;
        }
        self.out.set_prefix(prefix.clone(), iri.as_str());
        self.prefixes.insert(prefix, iri.into_string());
        Ok(())
    }

    fn parse_base(&mut self, at_form: bool) -> PResult<()> {
        self.advance()?;
        let pos = self.pos;
        let iri = match self.advance()? {
            Tok::IriRef(i) => self.resolve_iri(&i, pos)?,
            t => return self.error_at(pos, format!("expected base IRI, found {}", t.describe())),
        };
        if at_form {
            self.expect(Tok::Dot)?;
        }
        self.base = Some(url::Url::parse(iri.as_str()).or_else(|e| self.error_at(pos, e.to_string()))?);
        Ok(())
    }

    fn parse_trig_block(&mut self) -> PResult<()> {
        match self.tok.clone() {
            Tok::LBrace => self.parse_graph_body(None),
            Tok::Graph => {
                self.advance()?;
                let pos = self.pos;
                let name = match self.advance()? {
                    Tok::IriRef(i) => self.resolve_iri(&i, pos)?,
                    Tok::PName { prefix, local } => self.expand_pname(&prefix, &local, pos)?,
                    Tok::Blank(_) | Tok::LBracket => {
                        return Err(ParseError {
                            line: pos.line,
                            column: pos.column,
                            message: "blank node graph names are not supported".into(),
                            format: self.format,
                            kind: ParseErrorKind::Unsupported,
                        })
                    }
                    t => return self.error_at(pos, format!("expected graph name, found {}", t.describe())),
                };
                self.parse_graph_body(Some(name))
            }
            Tok::IriRef(_) | Tok::PName { .. } => {
                let pos = self.pos;
                let name = self.parse_iri_token()?;
                if self.tok == Tok::LBrace {
                    self.parse_graph_body(Some(name))
                } else {
                    self.parse_predicate_object_list(&Subject::NamedNode(name), &None)?;
                    let _ = pos;
                    self.expect(Tok::Dot)
                }
            }
            Tok::Blank(_) => {
                let subject = self.parse_subject()?;
                if self.tok == Tok::LBrace {
                    return self.unsupported("blank node graph names are not supported");
                }
                self.parse_predicate_object_list(&subject, &None)?;
                self.expect(Tok::Dot)
            }
            _ => {
                self.parse_triples(&None)?;
                self.expect(Tok::Dot)
            }
        }
    }

    fn parse_graph_body(&mut self, graph: Option<NamedNode>) -> PResult<()> {
        self.expect(Tok::LBrace)?;
        loop {
            if self.tok == Tok::RBrace {
                self.advance()?;
                return Ok(());
            }
            if matches!(self.tok, Tok::Prefix(_) | Tok::Base(_) | Tok::Graph | Tok::LBrace) {
                return self.error(format!("{} is not allowed inside a graph block", self.tok.describe()));
            }
            self.parse_triples(&graph)?;
            match self.tok {
                Tok::Dot => {
                    self.advance()?;
                }
                Tok::RBrace => {}
                _ => return self.error(format!("expected '.' or '}}', found {}", self.tok.describe())),
            }
        }
    }

    fn parse_iri_token(&mut self) -> PResult<NamedNode> {
        let pos = self.pos;
        match self.advance()? {
            Tok::IriRef(i) => self.resolve_iri(&i, pos),
            Tok::PName { prefix, local } => self.expand_pname(&prefix, &local, pos),
            t => self.error_at(pos, format!("expected IRI, found {}", t.describe())),
        }
    }

    fn parse_subject(&mut self) -> PResult<Subject> {
        self.check_unsupported()?;
        match self.tok.clone() {
            Tok::IriRef(_) | Tok::PName { .. } => Ok(self.parse_iri_token()?.into()),
            Tok::Blank(b) => {
                self.advance()?;
                Ok(self.blank(&b).into())
            }
            t => self.error(format!("expected subject, found {}", t.describe())),
        }
    }

    fn parse_triples(&mut self, graph: &Option<NamedNode>) -> PResult<()> {
        self.check_unsupported()?;
        if self.tok == Tok::LBracket {
            let node = self.parse_blank_property_list(graph)?;
            // `[ ... ] .` is a complete statement on its own
            if matches!(self.tok, Tok::Dot | Tok::RBrace) {
                return Ok(());
            }
            return self.parse_predicate_object_list(&node.into(), graph);
        }
        let subject = self.parse_subject()?;
        self.parse_predicate_object_list(&subject, graph)
    }

    fn parse_blank_property_list(&mut self, graph: &Option<NamedNode>) -> PResult<BlankNode> {
        self.expect(Tok::LBracket)?;
        let node = self.fresh_blank();
        if self.tok != Tok::RBracket {
            self.parse_predicate_object_list(&node.clone().into(), graph)?;
        }
        self.expect(Tok::RBracket)?;
        Ok(node)
    }

    fn parse_predicate_object_list(&mut self, subject: &Subject, graph: &Option<NamedNode>) -> PResult<()> {
        loop {
            let predicate = match self.tok {
                Tok::A => {
                    self.advance()?;
                    NamedNode::new_unchecked(ns::RDF_TYPE)
                }
                Tok::IriRef(_) | Tok::PName { .. } => self.parse_iri_token()?,
                _ => return self.error(format!("expected predicate, found {}", self.tok.describe())),
            };
            loop {
                let object = self.parse_object(graph)?;
                self.emit(subject.clone(), predicate.clone(), object, graph);
                if self.tok != Tok::Comma {
                    break;
                }
                self.advance()?;
            }
            if self.tok != Tok::Semicolon {
                return Ok(());
            }
            while self.tok == Tok::Semicolon {
                self.advance()?;
            }
            if matches!(self.tok, Tok::Dot | Tok::RBracket | Tok::RBrace) {
                return Ok(());
            }
        }
    }

    fn parse_object(&mut self, graph: &Option<NamedNode>) -> PResult<Term> {
        self.check_unsupported()?;
        let xsd = |local: &str| NamedNode::new_unchecked(format!("{}{local}", ns::XSD));
        match self.tok.clone() {
            Tok::IriRef(_) | Tok::PName { .. } => Ok(self.parse_iri_token()?.into()),
            Tok::Blank(b) => {
                self.advance()?;
                Ok(self.blank(&b).into())
            }
            Tok::LBracket => Ok(self.parse_blank_property_list(graph)?.into()),
            Tok::Str(s) => {
                self.advance()?;
                Ok(self.finish_literal(s)?.into())
            }
            Tok::Integer(n) => {
                self.advance()?;
                Ok(Literal::new_typed(n, xsd("integer")).into())
            }
            Tok::Decimal(n) => {
                self.advance()?;
                Ok(Literal::new_typed(n, xsd("decimal")).into())
            }
            Tok::Double(n) => {
                self.advance()?;
                Ok(Literal::new_typed(n, xsd("double")).into())
            }
            Tok::True | Tok::False => {
                let value = self.tok == Tok::True;
                self.advance()?;
                Ok(Literal::boolean(value).into())
            }
            t => self.error(format!("expected object, found {}", t.describe())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ttl(s: &str) -> PResult<QuadDataset> {
        parse_document(s.as_bytes(), RdfFormat::Turtle)
    }

    #[test]
    fn empty_document() {
        assert!(ttl("").unwrap().is_empty());
        assert!(ttl("# only a comment\n").unwrap().is_empty());
    }

    #[test]
    fn single_ntriples_statement() {
        let ds = parse_document(
            b"<http://ex.org/s> <http://ex.org/p> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n",
            RdfFormat::NTriples,
        )
        .unwrap();
        assert_eq!(ds.len(), 1);
        let q = ds.iter().next().unwrap();
        assert_eq!(q.graph, None);
        let lit = q.object.as_literal().unwrap();
        assert_eq!(lit.lexical(), "1");
        assert_eq!(lit.datatype(), &ns::XSD_INTEGER);
    }

    #[test]
    fn turtle_shorthand() {
        let ds = ttl(
            "@prefix ex: <http://ex.org/> .\n\
             ex:s a ex:C ; ex:p 1, 2.5, 1e0, true ; ex:q [ ex:r \"x\"@en ] .\n",
        )
        .unwrap();
        assert_eq!(ds.len(), 7);
        assert_eq!(ds.prefixes().get("ex").map(String::as_str), Some("http://ex.org/"));
        let dts: Vec<_> = ds
            .iter()
            .filter_map(|q| q.object.as_literal())
            .map(|l| l.datatype().local_name().to_owned())
            .collect();
        for dt in ["integer", "decimal", "double", "boolean", "langString"] {
            assert!(dts.iter().any(|d| d == dt), "{dt} missing from {dts:?}");
        }
    }

    #[test]
    fn sparql_style_directives_and_trailing_semicolon() {
        let ds = ttl("PREFIX ex: <http://ex.org/>\nex:s ex:p ex:o ; .").unwrap();
        assert_eq!(ds.len(), 1);
    }

    #[test]
    fn trig_graph_blocks() {
        let doc = "@prefix ex: <http://ex.org/> .\n\
                   ex:d ex:p ex:o .\n\
                   ex:g1 { ex:a ex:p ex:b . ex:c ex:p ex:d }\n\
                   GRAPH ex:g2 { ex:a ex:p ex:b }\n\
                   { ex:e ex:p ex:f }\n";
        let ds = parse_document(doc.as_bytes(), RdfFormat::TriG).unwrap();
        assert_eq!(ds.len(), 5);
        assert_eq!(ds.graph_names().len(), 2);
        assert_eq!(ds.graph_view(None).len(), 2);
    }

    #[test]
    fn collections_rejected_with_distinct_message() {
        let err = ttl("@prefix ex: <http://ex.org/> . ex:s ex:p ( 1 2 ) .").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Unsupported);
        assert!(err.message.contains("collections"), "{}", err.message);
        assert_eq!((err.line, err.column), (1, 42));
        let err = ttl("<< <http://a> <http://b> <http://c> >> <http://p> 1 .").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Unsupported);
    }

    #[test]
    fn relative_iris_need_a_base() {
        let err = ttl("<s> <http://ex.org/p> <o> .").unwrap_err();
        assert!(err.message.contains("relative IRI"));
        let ds = parse_document_with_base(
            b"<s> <http://ex.org/p> <o> .",
            RdfFormat::Turtle,
            Some("http://base.org/dir/"),
        )
        .unwrap();
        let q = ds.iter().next().unwrap();
        assert_eq!(q.subject.as_named_node().unwrap(), &"http://base.org/dir/s");
    }

    #[test]
    fn error_positions() {
        let err = ttl("@prefix ex: <http://ex.org/> .\nex:s ex:p ex:o\nex:t ex:p ex:o .").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
        assert_eq!(err.line, 3);
        let err = ttl("ex:s ex:p ex:o .").unwrap_err();
        assert!(err.message.contains("undeclared prefix"));
        let err = parse_document(b"<http://a> <http://b> \"x", RdfFormat::NTriples).unwrap_err();
        assert_eq!((err.line, err.column), (1, 23));
        let err = parse_document(b"<http://a>\n\xff", RdfFormat::NTriples).unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn ntriples_rejects_turtle_shorthand() {
        assert!(parse_document(b"<http://a> <http://b> 1 .", RdfFormat::NTriples).is_err());
        assert!(parse_document(b"<http://a> a <http://b> .", RdfFormat::NTriples).is_err());
    }

    #[test]
    fn nquads_graph_term() {
        let ds = parse_document(
            b"<http://a> <http://b> <http://c> <http://g> .\n<http://a> <http://b> <http://c> .\n",
            RdfFormat::NQuads,
        )
        .unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.graph_names().len(), 1);
    }

    #[test]
    fn blank_labels_are_scoped_per_document() {
        let doc = b"_:x <http://ex.org/p> <http://ex.org/o> .";
        let a = parse_document(doc, RdfFormat::NTriples).unwrap();
        let b = parse_document(doc, RdfFormat::NTriples).unwrap();
        let mut merged = a.clone();
        merged.extend_from(&b);
        assert_eq!(merged.len(), 2);
    }
}
