//! Input and output translations from axioms to facts.

use super::fact::{Fact, Relation, SymbolTable};
use super::CalculusError;
use crate::model::{AxiomNF, CkrRepository, CkrVocabulary, ContextClass};
use crate::rdf::{Quad, Term, TermId};

/// Translates a non-eval axiom holding in context `c` into its fact.
pub fn translate_rl(a: &AxiomNF, c: TermId, syms: &mut SymbolTable) -> Result<Fact, CalculusError> {
    use AxiomNF::*;
    let mut id = |t: &Term| syms.intern(t);
    let fact = match a {
        SubClass { sub, sup } => Fact::new(Relation::SubClass, &[id(sub), id(sup), c]),
        SubClassNeg { sub, neg } => Fact::new(Relation::SubClassNeg, &[id(sub), id(neg), c]),
        SubHasValue { sub, role, value } => Fact::new(Relation::SubHasValue, &[id(sub), id(role), id(value), c]),
        SubConj { left, right, sup } => Fact::new(Relation::SubConj, &[id(left), id(right), id(sup), c]),
        SubEx { role, filler, sup } => Fact::new(Relation::SubEx, &[id(role), id(filler), id(sup), c]),
        SupAll { sub, role, filler } => Fact::new(Relation::SupAll, &[id(sub), id(role), id(filler), c]),
        SupMax1 { sub, role, filler } => Fact::new(Relation::SupMax1, &[id(sub), id(role), id(filler), c]),
        ConceptAssert { class, individual } => Fact::new(Relation::Inst, &[id(individual), id(class), c]),
        RoleAssert { role, subject, object } => Fact::new(Relation::Triple, &[id(subject), id(role), id(object), c]),
        NegRoleAssert { role, subject, object } => {
            Fact::new(Relation::NTriple, &[id(subject), id(role), id(object), c])
        }
        Same { left, right } => Fact::new(Relation::Eq, &[id(left), id(right), c]),
        Different { left, right } => Fact::new(Relation::Neq, &[id(left), id(right), c]),
        SubRole { sub, sup } => Fact::new(Relation::SubRole, &[id(sub), id(sup), c]),
        InvRole { role, inverse } => Fact::new(Relation::InvRole, &[id(role), id(inverse), c]),
        RoleChain { first, second, sup } => Fact::new(Relation::SubRChain, &[id(first), id(second), id(sup), c]),
        DisRole { left, right } => Fact::new(Relation::DisRole, &[id(left), id(right), c]),
        IrrRole { role } => Fact::new(Relation::IrrRole, &[id(role), c]),
        EvalSubClass { .. } | EvalSubRole { .. } => return Err(CalculusError::EvalAxiom(a.to_string())),
    };
    Ok(fact)
}

/// Translates an eval axiom of context `c`. A nominal context class `{c'}`
/// becomes a synthetic class plus the global membership `inst(c', ν, g)`.
pub fn translate_loc(
    a: &AxiomNF,
    c: TermId,
    syms: &mut SymbolTable,
    vocab: &CkrVocabulary,
) -> Result<Vec<Fact>, CalculusError> {
    let (relation, x, context, sup) = match a {
        AxiomNF::EvalSubClass { class, context, sup } => (Relation::SubEval, class, context, sup),
        AxiomNF::EvalSubRole { role, context, sup } => (Relation::SubEvalR, role, context, sup),
        _ => return Err(CalculusError::NotEval(a.to_string())),
    };
    let x = syms.intern(x);
    let sup = syms.intern(sup);
    let mut out = Vec::with_capacity(2);
    let class = match context {
        ContextClass::Named(cls) => syms.intern(cls),
        ContextClass::Nominal(member) => {
            let nu = syms.intern_owned(vocab.nominal_class(member));
            let member = syms.intern(member);
            let g = syms.intern(&vocab.global_graph);
            out.push(Fact::new(Relation::Inst, &[member, nu, g]));
            nu
        }
    };
    out.insert(0, Fact::new(relation, &[x, class, sup, c]));
    Ok(out)
}

/// Translates any axiom of a local knowledge base in context `c`.
pub fn translate_local(a: &AxiomNF, c: TermId, syms: &mut SymbolTable, vocab: &CkrVocabulary) -> Vec<Fact> {
    if a.is_eval() {
        translate_loc(a, c, syms, vocab).expect("eval axiom")
    } else {
        vec![translate_rl(a, c, syms).expect("non-eval axiom")]
    }
}

/// Facts of the global program: meta assertions and global axioms, all in `g`.
pub fn translate_glob(repo: &CkrRepository, syms: &mut SymbolTable) -> Vec<Fact> {
    let g = syms.intern(&repo.vocab.global_graph);
    repo.meta
        .iter()
        .chain(&repo.global)
        .map(|a| translate_rl(a, g, syms).expect("global axioms are never eval axioms"))
        .collect()
}

/// The fact whose derivation witnesses the ABox assertion `a` in `c`.
pub fn output_translation(a: &AxiomNF, c: TermId, syms: &mut SymbolTable) -> Result<Fact, CalculusError> {
    match a {
        AxiomNF::ConceptAssert { .. } | AxiomNF::RoleAssert { .. } => translate_rl(a, c, syms),
        _ => Err(CalculusError::NotInstanceQuery(a.to_string())),
    }
}

/// RDF statement materializing a derived fact, if the relation has one.
///
/// `inst`, `triple` and `eq` become `rdf:type`, plain and `owl:sameAs` triples;
/// `unsat(c)` becomes `c rdf:type ckr:Inconsistent`. All land in the inference
/// graph of the fact's context.
pub fn fact_to_quad(fact: &Fact, syms: &SymbolTable, vocab: &CkrVocabulary) -> Option<Quad> {
    let t = |i: usize| syms.resolve(fact.args[i]).clone();
    let ctx = syms.resolve(fact.ctx());
    let graph = vocab.inference_graph(ctx);
    let (s, p, o) = match fact.relation {
        Relation::Inst => (t(0), Term::rdf("type"), t(1)),
        Relation::Triple => (t(0), t(1), t(2)),
        Relation::Eq => (t(0), Term::owl("sameAs"), t(1)),
        Relation::Unsat => (ctx.clone(), Term::rdf("type"), vocab.inconsistent.clone()),
        _ => return None,
    };
    if s.is_literal() || !p.is_iri() || !graph.is_iri() {
        return None;
    }
    Some(Quad::new(s, p, o, graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::assemble_repository;
    use crate::rdf::{load_str, Format};

    fn g(s: &str) -> Term {
        Term::gen(s)
    }

    fn show(f: &Fact, syms: &SymbolTable) -> String {
        f.display(syms).to_string()
    }

    #[test]
    fn sub_class_and_assertions() {
        let mut syms = SymbolTable::new();
        let c0 = syms.intern(&g("c0"));
        let f = translate_rl(
            &AxiomNF::SubClass {
                sub: g("A0"),
                sup: g("A1"),
            },
            c0,
            &mut syms,
        )
        .unwrap();
        assert_eq!(f.relation, Relation::SubClass);
        assert_eq!(f.args(), &[syms.intern(&g("A0")), syms.intern(&g("A1")), c0]);
        let f = translate_rl(
            &AxiomNF::ConceptAssert {
                class: g("A0"),
                individual: g("a0"),
            },
            c0,
            &mut syms,
        )
        .unwrap();
        assert_eq!(f.relation, Relation::Inst);
        assert_eq!(f.args()[0], syms.intern(&g("a0")));
        let gl = syms.intern(&Term::ckr("global"));
        let f = translate_rl(
            &AxiomNF::RoleChain {
                first: g("R"),
                second: g("S"),
                sup: g("T"),
            },
            gl,
            &mut syms,
        )
        .unwrap();
        assert_eq!(f.relation, Relation::SubRChain);
        assert_eq!(f.ctx(), gl);
    }

    #[test]
    fn eval_shapes_are_rejected_by_translate_rl() {
        let mut syms = SymbolTable::new();
        let a = AxiomNF::EvalSubClass {
            class: g("D0"),
            context: ContextClass::Named(Term::ckr("Ctx")),
            sup: g("D1"),
        };
        assert!(matches!(
            translate_rl(&a, 0, &mut syms),
            Err(CalculusError::EvalAxiom(_))
        ));
    }

    #[test]
    fn eval_translation() {
        let v = CkrVocabulary::default();
        let mut syms = SymbolTable::new();
        let c0 = syms.intern(&g("c0"));
        let named = AxiomNF::EvalSubClass {
            class: g("D0"),
            context: ContextClass::Named(g("Cls")),
            sup: g("D1"),
        };
        let facts = translate_loc(&named, c0, &mut syms, &v).unwrap();
        assert_eq!(facts.len(), 1);
        assert_eq!(facts[0].relation, Relation::SubEval);
        assert_eq!(facts[0].args()[1], syms.intern(&g("Cls")));

        let nominal = AxiomNF::EvalSubClass {
            class: g("D0"),
            context: ContextClass::Nominal(g("c1")),
            sup: g("D1"),
        };
        let facts = translate_loc(&nominal, c0, &mut syms, &v).unwrap();
        assert_eq!(facts.len(), 2);
        let nu = facts[0].args()[1];
        assert_eq!(
            facts[1],
            Fact::new(
                Relation::Inst,
                &[syms.intern(&g("c1")), nu, syms.intern(&v.global_graph)]
            )
        );
        assert_ne!(nu, syms.intern(&g("c1")));

        let role = AxiomNF::EvalSubRole {
            role: g("R0"),
            context: ContextClass::Named(g("Cls")),
            sup: g("S0"),
        };
        let facts = translate_loc(&role, c0, &mut syms, &v).unwrap();
        assert_eq!(
            show(&facts[0], &syms),
            format!("subEvalR({}, {}, {}, {})", g("R0"), g("Cls"), g("S0"), g("c0"))
        );
        assert!(translate_loc(&AxiomNF::IrrRole { role: g("R") }, c0, &mut syms, &v).is_err());
    }

    #[test]
    fn global_translation() {
        let doc = "@prefix : <http://dkm.fbk.eu/ckr/gen#> .\n\
                   @prefix ckr: <http://dkm.fbk.eu/ckr/meta#> .\n\
                   ckr:global { :c0 a ckr:Ctx . :c0 ckr:mod :m0 } :m0 { :a0 a :A0 }";
        let v = CkrVocabulary::default();
        let repo = assemble_repository(&load_str(doc, Format::TriG).unwrap(), &v).unwrap();
        let mut syms = SymbolTable::new();
        let mut facts: Vec<String> = translate_glob(&repo, &mut syms)
            .iter()
            .map(|f| show(f, &syms))
            .collect();
        facts.sort();
        assert_eq!(
            facts,
            vec![
                format!("inst({}, {}, {})", g("c0"), v.ctx_class, v.global_graph),
                format!(
                    "triple({}, {}, {}, {})",
                    g("c0"),
                    v.mod_property,
                    g("m0"),
                    v.global_graph
                ),
            ]
        );
        let empty = CkrRepository::default();
        assert!(translate_glob(&empty, &mut syms).is_empty());
    }

    #[test]
    fn output_translation_covers_assertions_only() {
        let mut syms = SymbolTable::new();
        let c0 = syms.intern(&g("c0"));
        let f = output_translation(
            &AxiomNF::ConceptAssert {
                class: g("A1"),
                individual: g("a0"),
            },
            c0,
            &mut syms,
        )
        .unwrap();
        assert_eq!(show(&f, &syms), format!("inst({}, {}, {})", g("a0"), g("A1"), g("c0")));
        let f = output_translation(
            &AxiomNF::RoleAssert {
                role: g("R0"),
                subject: g("a0"),
                object: g("a1"),
            },
            c0,
            &mut syms,
        )
        .unwrap();
        assert_eq!(f.relation, Relation::Triple);
        let err = output_translation(
            &AxiomNF::SubClass {
                sub: g("A0"),
                sup: g("A1"),
            },
            c0,
            &mut syms,
        )
        .unwrap_err();
        assert!(err.to_string().contains("not an instance query"));
    }
}
