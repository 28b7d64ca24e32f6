//! Materialization-based reasoning over contextualized knowledge repositories
//! stored as RDF datasets.

pub mod bench;
pub mod calculus;
pub mod engine;
pub mod generator;
pub mod model;
pub mod rdf;
