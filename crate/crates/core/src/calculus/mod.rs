//! Fact schema of the materialization calculus and the translations between
//! axioms and facts.

mod fact;
mod translate;

pub use fact::{project, Fact, FactBase, Mask, Relation, SymbolTable, Tuple};
pub use translate::{fact_to_quad, output_translation, translate_glob, translate_loc, translate_local, translate_rl};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CalculusError {
    #[error("eval axiom {0} needs the local translation")]
    EvalAxiom(String),
    #[error("{0} is not an eval axiom")]
    NotEval(String),
    #[error("{0} is not an instance query")]
    NotInstanceQuery(String),
}
