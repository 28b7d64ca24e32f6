use std::collections::{BTreeMap, BTreeSet};

use log::warn;

use super::axiom::AxiomNF;
use super::encoding::parse_triples;
use super::vocab::CkrVocabulary;
use super::ModelError;
use crate::rdf::{Dataset, Term, DEFAULT_GRAPH, INFERENCE_SUFFIX};

/// A named graph of axioms attachable to contexts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeModule {
    pub name: Term,
    pub axioms: BTreeSet<AxiomNF>,
    pub source_graph: Term,
}

/// An assembled repository: global knowledge, modules, and (after the global
/// closure) the derived context structure.
#[derive(Debug, Clone, Default)]
pub struct CkrRepository {
    pub vocab: CkrVocabulary,
    /// Object-language axioms of the global graph; these hold in every context.
    pub global: BTreeSet<AxiomNF>,
    /// Meta-level assertions of the global graph (context declarations,
    /// module links, context-class memberships).
    pub meta: BTreeSet<AxiomNF>,
    pub modules: BTreeMap<Term, KnowledgeModule>,
    pub contexts: BTreeSet<Term>,
    pub mod_assoc: BTreeSet<(Term, Term)>,
    /// Previously materialized inferences, keyed by context (or the global
    /// graph), read back from `*-inf` graphs.
    pub materialized: BTreeMap<Term, BTreeSet<AxiomNF>>,
    pub warnings: Vec<String>,
}

impl CkrRepository {
    /// Union of the modules associated with `context` via `mod_assoc`.
    pub fn context_knowledge(&self, context: &Term) -> BTreeSet<&AxiomNF> {
        self.mod_assoc
            .iter()
            .filter(|(c, _)| c == context)
            .filter_map(|(_, m)| self.modules.get(m))
            .flat_map(|m| m.axioms.iter())
            .collect()
    }

    pub fn module_axiom_count(&self) -> usize {
        self.modules.values().map(|m| m.axioms.len()).sum()
    }

    /// Module links asserted in the global graph, as (context, module).
    pub fn asserted_links(&self) -> impl Iterator<Item = (&Term, &Term)> {
        self.meta.iter().filter_map(move |a| match a {
            AxiomNF::RoleAssert { role, subject, object } if role == &self.vocab.mod_property => {
                Some((subject, object))
            }
            _ => None,
        })
    }
}

fn is_meta(a: &AxiomNF, vocab: &CkrVocabulary, declared: &BTreeSet<Term>) -> bool {
    if a.terms().iter().any(|t| vocab.is_meta_term(t)) {
        return true;
    }
    matches!(a, AxiomNF::ConceptAssert { individual, .. } if declared.contains(individual))
}

/// Builds a repository from a dataset.
///
/// Triples of the default graph are read as part of the global graph. Graphs
/// whose name ends in `-inf` hold earlier inferences of the context they are
/// named after. Every other named graph is a knowledge module.
pub fn assemble_repository(d: &Dataset, vocab: &CkrVocabulary) -> Result<CkrRepository, ModelError> {
    let default = Term::iri(DEFAULT_GRAPH);
    let mut repo = CkrRepository {
        vocab: vocab.clone(),
        ..Default::default()
    };

    let mut global_triples = d.graph_triples(&vocab.global_graph);
    global_triples.extend(d.graph_triples(&default));
    let parsed = parse_triples(&global_triples, &vocab.global_graph, vocab)?;
    repo.warnings.extend(parsed.warnings);

    let declared: BTreeSet<Term> = parsed
        .axioms
        .iter()
        .filter_map(|a| match a {
            AxiomNF::ConceptAssert { class, individual } if class == &vocab.ctx_class => Some(individual.clone()),
            AxiomNF::RoleAssert { role, subject, .. } if role == &vocab.mod_property => Some(subject.clone()),
            _ => None,
        })
        .collect();
    for a in parsed.axioms {
        if a.is_eval() {
            return Err(ModelError::EvalInGlobal(a.to_string()));
        }
        if is_meta(&a, vocab, &declared) {
            repo.meta.insert(a);
        } else {
            repo.global.insert(a);
        }
    }

    let linked: BTreeSet<Term> = repo.asserted_links().map(|(_, m)| m.clone()).collect();
    let global_inf = vocab.inference_graph(&vocab.global_graph);

    for g in d.graph_names() {
        if g == vocab.global_graph || g == default {
            continue;
        }
        let name = g.lexical();
        let prior_inference = name.strip_suffix(INFERENCE_SUFFIX).filter(|_| !linked.contains(&g));
        if let Some(owner) = prior_inference {
            let owner = if g == global_inf {
                vocab.global_graph.clone()
            } else {
                Term::iri(owner)
            };
            let parsed = parse_triples(&d.graph_triples(&g), &g, vocab)?;
            repo.warnings.extend(parsed.warnings);
            repo.materialized.entry(owner).or_default().extend(parsed.axioms);
            continue;
        }
        let parsed = parse_triples(&d.graph_triples(&g), &g, vocab)?;
        repo.warnings.extend(parsed.warnings);
        if !linked.contains(&g) {
            repo.warnings.push(format!("module {g} is not linked to any context"));
        }
        repo.modules.insert(
            g.clone(),
            KnowledgeModule {
                name: g.clone(),
                axioms: parsed.axioms,
                source_graph: g,
            },
        );
    }

    for (c, m) in repo.asserted_links() {
        if m == &vocab.global_graph || m == &default {
            return Err(ModelError::DuplicateModule(m.to_string()));
        }
        if !repo.modules.contains_key(m) {
            return Err(ModelError::MissingModule {
                context: c.to_string(),
                module: m.to_string(),
            });
        }
    }

    for w in &repo.warnings {
        warn!("{w}");
    }
    Ok(repo)
}
