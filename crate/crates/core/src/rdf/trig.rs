//! TriG / Turtle reading and writing.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rio_api::model as rio;
use rio_api::parser::{ParseError, QuadsParser, TriplesParser};
use rio_turtle::{TriGParser, TurtleError, TurtleParser};

use super::dataset::Dataset;
use super::term::{escape_literal, Quad, Term, CKR, DEFAULT_GRAPH, GEN, OWL, RDF, RDFS, XSD};
use super::RdfError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    TriG,
    Turtle,
}

impl Format {
    /// Guess from a file extension; anything other than `.ttl` is read as TriG.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("ttl") => Format::Turtle,
            _ => Format::TriG,
        }
    }
}

/// Prefixes written in every document header, in output order.
pub const PREFIXES: &[(&str, &str)] = &[
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("owl", OWL),
    ("xsd", XSD),
    ("ckr", CKR),
    ("", GEN),
];

/// Suffix marking a graph that holds materialized inferences.
pub const INFERENCE_SUFFIX: &str = "-inf";

fn is_inference_graph(g: &Term) -> bool {
    g.as_iri().is_some_and(|s| s.ends_with(INFERENCE_SUFFIX))
}

fn convert_error(e: TurtleError) -> RdfError {
    let message = e.to_string();
    if let Some(pos) = e.textual_position() {
        let line = pos.line_number();
        let column = pos.byte_number();
        if message.starts_with("unknown prefix") {
            return RdfError::UndefinedPrefix { line, column, message };
        }
        if message.starts_with("error while parsing IRI") {
            return RdfError::InvalidIri { line, column, message };
        }
        return RdfError::Syntax { line, column, message };
    }
    RdfError::Syntax {
        line: 0,
        column: 0,
        message,
    }
}

struct Loader {
    dataset: Dataset,
    blank_owner: HashMap<String, Term>,
    error: Option<RdfError>,
}

impl Loader {
    fn new() -> Self {
        Loader {
            dataset: Dataset::new(),
            blank_owner: HashMap::new(),
            error: None,
        }
    }

    fn term_of_subject(s: rio::Subject<'_>) -> Result<Term, RdfError> {
        match s {
            rio::Subject::NamedNode(n) => Ok(Term::iri(n.iri)),
            rio::Subject::BlankNode(b) => Ok(Term::blank(b.id)),
            rio::Subject::Triple(_) => Err(RdfError::Unsupported("RDF-star quoted triples".into())),
        }
    }

    fn term_of(t: rio::Term<'_>) -> Result<Term, RdfError> {
        match t {
            rio::Term::NamedNode(n) => Ok(Term::iri(n.iri)),
            rio::Term::BlankNode(b) => Ok(Term::blank(b.id)),
            rio::Term::Literal(rio::Literal::Simple { value }) => Ok(Term::literal(value)),
            rio::Term::Literal(rio::Literal::LanguageTaggedString { value, language }) => Ok(Term::Literal {
                lexical: value.to_owned(),
                datatype: None,
                language: Some(language.to_ascii_lowercase()),
            }),
            rio::Term::Literal(rio::Literal::Typed { value, datatype }) => Ok(Term::typed_literal(value, datatype.iri)),
            rio::Term::Triple(_) => Err(RdfError::Unsupported("RDF-star quoted triples".into())),
        }
    }

    fn claim_blank(&mut self, t: &Term, g: &Term) -> Result<(), RdfError> {
        let Term::Blank(label) = t else {
            return Ok(());
        };
        if is_inference_graph(g) {
            return Ok(());
        }
        match self.blank_owner.get(label) {
            Some(owner) if owner != g => Err(RdfError::SharedBlankNode {
                label: label.clone(),
                first: owner.to_string(),
                second: g.to_string(),
            }),
            Some(_) => Ok(()),
            None => {
                self.blank_owner.insert(label.clone(), g.clone());
                Ok(())
            }
        }
    }

    fn push(
        &mut self,
        s: rio::Subject<'_>,
        p: rio::NamedNode<'_>,
        o: rio::Term<'_>,
        g: Option<rio::GraphName<'_>>,
    ) -> Result<(), RdfError> {
        let g = match g {
            None => Term::iri(DEFAULT_GRAPH),
            Some(rio::GraphName::NamedNode(n)) => Term::iri(n.iri),
            Some(rio::GraphName::BlankNode(b)) => {
                return Err(RdfError::BlankGraphName(b.id.to_owned()));
            }
        };
        let s = Self::term_of_subject(s)?;
        let o = Self::term_of(o)?;
        self.claim_blank(&s, &g)?;
        self.claim_blank(&o, &g)?;
        self.dataset.insert(&Quad::new(s, Term::iri(p.iri), o, g));
        Ok(())
    }
}

/// Parses a TriG or Turtle document. Turtle triples land in the default graph.
pub fn load_dataset<R: BufRead>(source: R, format: Format) -> Result<Dataset, RdfError> {
    let mut loader = Loader::new();
    let result = match format {
        Format::TriG => TriGParser::new(source, None).parse_all(&mut |q| {
            if loader.error.is_none() {
                if let Err(e) = loader.push(q.subject, q.predicate, q.object, q.graph_name) {
                    loader.error = Some(e);
                }
            }
            Ok::<_, TurtleError>(())
        }),
        Format::Turtle => TurtleParser::new(source, None).parse_all(&mut |t| {
            if loader.error.is_none() {
                if let Err(e) = loader.push(t.subject, t.predicate, t.object, None) {
                    loader.error = Some(e);
                }
            }
            Ok::<_, TurtleError>(())
        }),
    };
    result.map_err(convert_error)?;
    match loader.error {
        Some(e) => Err(e),
        None => Ok(loader.dataset),
    }
}

pub fn load_str(source: &str, format: Format) -> Result<Dataset, RdfError> {
    load_dataset(source.as_bytes(), format)
}

fn is_safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => return false,
        Some(c) if !(c.is_ascii_alphanumeric() || c == '_') => return false,
        _ => {}
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn write_iri(out: &mut String, iri: &str) {
    if iri == format!("{RDF}type") {
        out.push('a');
        return;
    }
    write_name(out, iri);
}

fn write_name(out: &mut String, iri: &str) {
    for (prefix, ns) in PREFIXES {
        if let Some(local) = iri.strip_prefix(ns) {
            if is_safe_local(local) {
                out.push_str(prefix);
                out.push(':');
                out.push_str(local);
                return;
            }
        }
    }
    out.push('<');
    out.push_str(iri);
    out.push('>');
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Iri(iri) => write_name(out, iri),
        Term::Blank(label) => {
            out.push_str("_:");
            out.push_str(label);
        }
        Term::Literal {
            lexical,
            datatype,
            language,
        } => {
            out.push('"');
            out.push_str(&escape_literal(lexical));
            out.push('"');
            if let Some(lang) = language {
                out.push('@');
                out.push_str(lang);
            } else if let Some(dt) = datatype {
                out.push_str("^^");
                write_name(out, dt);
            }
        }
    }
}

fn write_triples(out: &mut String, triples: &[(Term, Term, Term)], indent: &str) {
    let mut i = 0;
    while i < triples.len() {
        let subject = &triples[i].0;
        out.push_str(indent);
        write_term(out, subject);
        let mut first = true;
        while i < triples.len() && &triples[i].0 == subject {
            if !first {
                out.push_str(" ;\n");
                out.push_str(indent);
                out.push_str("    ");
            }
            out.push(' ');
            write_iri(out, triples[i].1.as_iri().expect("predicate is an IRI"));
            out.push(' ');
            write_term(out, &triples[i].2);
            first = false;
            i += 1;
        }
        out.push_str(" .\n");
    }
}

/// Serializes a dataset. Output order follows term ids, so identical
/// construction yields byte-identical documents.
pub fn write_dataset<W: Write>(d: &Dataset, format: Format, mut sink: W) -> Result<(), RdfError> {
    let default = Term::iri(DEFAULT_GRAPH);
    let graphs = d.graph_names();
    if format == Format::Turtle && graphs.iter().any(|g| g != &default) {
        return Err(RdfError::TurtleNeedsDefaultGraph(graphs.len()));
    }
    let mut out = String::new();
    for (prefix, ns) in PREFIXES {
        out.push_str(&format!("@prefix {prefix}: <{ns}> .\n"));
    }
    if d.has_graph(&default) {
        out.push('\n');
        write_triples(&mut out, &d.graph_triples(&default), "");
    }
    for g in graphs.iter().filter(|g| *g != &default) {
        out.push('\n');
        write_term(&mut out, g);
        out.push_str(" {\n");
        write_triples(&mut out, &d.graph_triples(g), "    ");
        out.push_str("}\n");
    }
    sink.write_all(out.as_bytes())?;
    Ok(())
}

pub fn write_string(d: &Dataset, format: Format) -> Result<String, RdfError> {
    let mut buf = Vec::new();
    write_dataset(d, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("writer emits UTF-8"))
}
