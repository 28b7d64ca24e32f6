use crate::rdf::{Term, CKR};

/// IRIs of the context meta-vocabulary used for one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CkrVocabulary {
    /// The class of all contexts.
    pub ctx_class: Term,
    /// Role associating a context with a knowledge module.
    pub mod_property: Term,
    /// Name of the graph holding the global knowledge base.
    pub global_graph: Term,
    pub eval_of: Term,
    pub eval_in: Term,
    /// Class marking a context whose knowledge is contradictory.
    pub inconsistent: Term,
}

impl Default for CkrVocabulary {
    fn default() -> Self {
        CkrVocabulary {
            ctx_class: Term::ckr("Ctx"),
            mod_property: Term::ckr("mod"),
            global_graph: Term::ckr("global"),
            eval_of: Term::ckr("evalOf"),
            eval_in: Term::ckr("evalIn"),
            inconsistent: Term::ckr("Inconsistent"),
        }
    }
}

impl CkrVocabulary {
    pub fn is_meta_term(&self, t: &Term) -> bool {
        t.as_iri().is_some_and(|s| s.starts_with(CKR))
    }

    /// Synthetic class whose only member is the context `c`.
    pub fn nominal_class(&self, c: &Term) -> Term {
        Term::iri(format!("{CKR}nominal?{}", c.lexical()))
    }

    /// Graph receiving the materialized inferences of context `c`.
    pub fn inference_graph(&self, c: &Term) -> Term {
        Term::iri(format!("{}{}", c.lexical(), crate::rdf::INFERENCE_SUFFIX))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn vocabulary_terms_are_distinct() {
        let v = CkrVocabulary::default();
        let all: HashSet<&Term> = [
            &v.ctx_class,
            &v.mod_property,
            &v.global_graph,
            &v.eval_of,
            &v.eval_in,
            &v.inconsistent,
        ]
        .into_iter()
        .collect();
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|t| v.is_meta_term(t)));
    }
}
