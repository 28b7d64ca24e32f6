//! The contextualized knowledge repository model.

mod axiom;
mod encoding;
mod query;
mod repository;
mod vocab;

pub use axiom::{AxiomNF, ContextClass, Family, Shape};
pub use encoding::{encode_axiom, parse_triples, BlankNodes, ParsedGraph, Triple};
pub use query::{parse_assertion, parse_context, prefix_header, QueryError};
pub use repository::{assemble_repository, CkrRepository, KnowledgeModule};
pub use vocab::CkrVocabulary;

use thiserror::Error;

use crate::rdf::{Dataset, Term};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("malformed axiom in {graph} at {node}: {reason}")]
    Malformed {
        graph: String,
        node: String,
        reason: String,
    },
    #[error("context {context} references module {module}, which has no graph")]
    MissingModule { context: String, module: String },
    #[error("module name {0} collides with a reserved graph")]
    DuplicateModule(String),
    #[error("eval axiom in the global graph: {0}")]
    EvalInGlobal(String),
}

/// Parses every triple of graph `g` in `d`.
pub fn parse_axioms(d: &Dataset, g: &Term, vocab: &CkrVocabulary) -> Result<ParsedGraph, ModelError> {
    parse_triples(&d.graph_triples(g), g, vocab)
}
