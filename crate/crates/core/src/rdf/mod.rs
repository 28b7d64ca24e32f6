//! RDF terms, an indexed named-graph quad store, and TriG/Turtle I/O.

mod dataset;
mod term;
mod trig;

pub use dataset::{Dataset, Interner, QuadPattern, TermId};
pub use term::{Quad, Term, TermKind, CKR, DEFAULT_GRAPH, GEN, OWL, RDF, RDFS, XSD};
pub use trig::{load_dataset, load_str, write_dataset, write_string, Format, INFERENCE_SUFFIX, PREFIXES};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RdfError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: u64, column: u64, message: String },
    #[error("undefined prefix at {line}:{column}: {message}")]
    UndefinedPrefix { line: u64, column: u64, message: String },
    #[error("invalid IRI at {line}:{column}: {message}")]
    InvalidIri { line: u64, column: u64, message: String },
    #[error("blank node _:{0} used as a graph name")]
    BlankGraphName(String),
    #[error("blank node _:{label} occurs in both {first} and {second}")]
    SharedBlankNode {
        label: String,
        first: String,
        second: String,
    },
    #[error("turtle output needs a dataset holding only the default graph (found {0} graphs)")]
    TurtleNeedsDefaultGraph(usize),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
