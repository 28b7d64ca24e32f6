//! Parsing of the context and assertion arguments of entailment queries.

use thiserror::Error;

use super::{parse_triples, AxiomNF, CkrVocabulary, ModelError};
use crate::rdf::{load_str, Format, RdfError, Term, DEFAULT_GRAPH, PREFIXES};

#[derive(Debug, Error)]
pub enum QueryError {
    #[error("context {0:?} is neither <iri> nor a prefixed name")]
    BadContext(String),
    #[error("unknown prefix {0:?}")]
    UnknownPrefix(String),
    #[error("cannot parse the assertion: {0}")]
    Syntax(#[from] RdfError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("the assertion must be a single axiom triple")]
    NotSingle,
}

/// Turtle prefix declarations for every namespace in [`PREFIXES`].
pub fn prefix_header() -> String {
    PREFIXES
        .iter()
        .map(|(p, iri)| format!("@prefix {p}: <{iri}> .\n"))
        .collect()
}

/// Reads a context given as `<iri>`, an absolute IRI or a prefixed name.
pub fn parse_context(s: &str) -> Result<Term, QueryError> {
    let s = s.trim();
    if let Some(iri) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
        return Ok(Term::iri(iri));
    }
    if s.contains("://") {
        return Ok(Term::iri(s));
    }
    let (prefix, local) = s.split_once(':').ok_or_else(|| QueryError::BadContext(s.to_string()))?;
    let ns = PREFIXES
        .iter()
        .find(|(p, _)| *p == prefix)
        .map(|(_, ns)| *ns)
        .ok_or_else(|| QueryError::UnknownPrefix(prefix.to_string()))?;
    Ok(Term::iri(format!("{ns}{local}")))
}

/// Reads one Turtle triple, such as `:x_1_0 a :D1`, as an assertion axiom.
pub fn parse_assertion(s: &str) -> Result<AxiomNF, QueryError> {
    let text = format!("{}{} .", prefix_header(), s.trim().trim_end_matches('.'));
    let d = load_str(&text, Format::Turtle)?;
    let default = Term::iri(DEFAULT_GRAPH);
    let parsed = parse_triples(&d.graph_triples(&default), &default, &CkrVocabulary::default())?;
    let mut axioms = parsed.axioms.into_iter();
    match (axioms.next(), axioms.next()) {
        (Some(a), None) => Ok(a),
        _ => Err(QueryError::NotSingle),
    }
}
