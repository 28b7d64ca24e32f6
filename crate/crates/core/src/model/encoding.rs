//! Mapping between RDF triples and normal-form axioms.
//!
//! Complex class expressions hang off blank nodes using the usual OWL
//! vocabulary. Eval inclusions use a blank node carrying `ckr:evalOf` and
//! `ckr:evalIn`, linked to the right-hand symbol by `rdfs:subClassOf` or
//! `rdfs:subPropertyOf`; a nominal context class is `[ owl:oneOf ( :c ) ]`.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::axiom::{AxiomNF, ContextClass};
use super::vocab::CkrVocabulary;
use super::ModelError;
use crate::rdf::{Term, OWL, RDF, RDFS, XSD};

pub type Triple = (Term, Term, Term);

/// Axioms read from one graph plus anything that could not be interpreted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedGraph {
    pub axioms: BTreeSet<AxiomNF>,
    pub warnings: Vec<String>,
}

struct Names {
    rdf_type: Term,
    first: Term,
    rest: Term,
    nil: Term,
    sub_class_of: Term,
    sub_property_of: Term,
    complement_of: Term,
    intersection_of: Term,
    one_of: Term,
    restriction: Term,
    on_property: Term,
    on_class: Term,
    some_values_from: Term,
    all_values_from: Term,
    has_value: Term,
    max_qualified_cardinality: Term,
    inverse_of: Term,
    property_chain_axiom: Term,
    property_disjoint_with: Term,
    irreflexive_property: Term,
    same_as: Term,
    different_from: Term,
    negative_property_assertion: Term,
    source_individual: Term,
    assertion_property: Term,
    target_individual: Term,
    declarations: [Term; 5],
}

impl Names {
    fn new() -> Self {
        Names {
            rdf_type: Term::rdf("type"),
            first: Term::rdf("first"),
            rest: Term::rdf("rest"),
            nil: Term::rdf("nil"),
            sub_class_of: Term::rdfs("subClassOf"),
            sub_property_of: Term::rdfs("subPropertyOf"),
            complement_of: Term::owl("complementOf"),
            intersection_of: Term::owl("intersectionOf"),
            one_of: Term::owl("oneOf"),
            restriction: Term::owl("Restriction"),
            on_property: Term::owl("onProperty"),
            on_class: Term::owl("onClass"),
            some_values_from: Term::owl("someValuesFrom"),
            all_values_from: Term::owl("allValuesFrom"),
            has_value: Term::owl("hasValue"),
            max_qualified_cardinality: Term::owl("maxQualifiedCardinality"),
            inverse_of: Term::owl("inverseOf"),
            property_chain_axiom: Term::owl("propertyChainAxiom"),
            property_disjoint_with: Term::owl("propertyDisjointWith"),
            irreflexive_property: Term::owl("IrreflexiveProperty"),
            same_as: Term::owl("sameAs"),
            different_from: Term::owl("differentFrom"),
            negative_property_assertion: Term::owl("NegativePropertyAssertion"),
            source_individual: Term::owl("sourceIndividual"),
            assertion_property: Term::owl("assertionProperty"),
            target_individual: Term::owl("targetIndividual"),
            declarations: [
                Term::owl("Class"),
                Term::owl("ObjectProperty"),
                Term::owl("NamedIndividual"),
                Term::rdfs("Class"),
                Term::rdf("Property"),
            ],
        }
    }
}

thread_local! {
    static NAMES: Names = Names::new();
}

/// Predicates that only make sense as part of a blank-node structure.
fn is_structural(p: &Term, n: &Names, v: &CkrVocabulary) -> bool {
    [
        &n.first,
        &n.rest,
        &n.complement_of,
        &n.intersection_of,
        &n.one_of,
        &n.on_property,
        &n.on_class,
        &n.some_values_from,
        &n.all_values_from,
        &n.has_value,
        &n.max_qualified_cardinality,
        &n.source_individual,
        &n.assertion_property,
        &n.target_individual,
        &v.eval_of,
        &v.eval_in,
    ]
    .contains(&p)
}

fn is_reserved_namespace(t: &Term) -> bool {
    t.as_iri()
        .is_some_and(|s| s.starts_with(RDF) || s.starts_with(RDFS) || s.starts_with(OWL))
}

struct GraphReader<'a> {
    graph: &'a Term,
    names: &'a Names,
    vocab: &'a CkrVocabulary,
    props: HashMap<&'a Term, Vec<(&'a Term, &'a Term)>>,
    consumed: HashSet<&'a Term>,
}

impl<'a> GraphReader<'a> {
    fn malformed(&self, node: &Term, reason: impl Into<String>) -> ModelError {
        ModelError::Malformed {
            graph: self.graph.to_string(),
            node: node.to_string(),
            reason: reason.into(),
        }
    }

    fn values(&self, node: &Term, p: &Term) -> Vec<&'a Term> {
        self.props
            .get(node)
            .map(|ps| ps.iter().filter(|(q, _)| *q == p).map(|(_, o)| *o).collect())
            .unwrap_or_default()
    }

    fn one(&self, node: &Term, p: &Term) -> Result<Option<&'a Term>, ModelError> {
        let vs = self.values(node, p);
        match vs.as_slice() {
            [] => Ok(None),
            [v] => Ok(Some(v)),
            _ => Err(self.malformed(node, format!("multiple values for {p}"))),
        }
    }

    fn require(&self, node: &Term, p: &Term) -> Result<&'a Term, ModelError> {
        self.one(node, p)?
            .ok_or_else(|| self.malformed(node, format!("missing {p}")))
    }

    fn consume(&mut self, node: &'a Term) {
        self.consumed.insert(node);
    }

    fn atomic(&self, node: &Term, t: &'a Term) -> Result<Term, ModelError> {
        if t.is_iri() {
            Ok(t.clone())
        } else {
            Err(self.malformed(node, format!("expected a named class or role, found {t}")))
        }
    }

    fn list(&mut self, head: &'a Term) -> Result<Vec<Term>, ModelError> {
        let mut items = Vec::new();
        let mut node = head;
        let mut seen = HashSet::new();
        while node != &self.names.nil {
            if !node.is_blank() || !seen.insert(node) {
                return Err(self.malformed(head, "malformed RDF list"));
            }
            let first = self.require(node, &self.names.first)?;
            let rest = self.require(node, &self.names.rest)?;
            items.push(first.clone());
            self.consume(node);
            node = rest;
        }
        Ok(items)
    }

    fn context_class(&mut self, node: &Term, c: &'a Term) -> Result<ContextClass, ModelError> {
        match c {
            Term::Iri(_) => Ok(ContextClass::Named(c.clone())),
            Term::Blank(_) => {
                let list = self
                    .one(c, &self.names.one_of)?
                    .ok_or_else(|| self.malformed(node, "context class is neither named nor a nominal"))?;
                let members = self.list(list)?;
                self.consume(c);
                match members.as_slice() {
                    [m] if m.is_iri() => Ok(ContextClass::Nominal(m.clone())),
                    _ => Err(self.malformed(node, "nominal context class must name exactly one context")),
                }
            }
            Term::Literal { .. } => Err(self.malformed(node, "literal context class")),
        }
    }

    /// Reads an eval node into (evaluated symbol, context class).
    fn eval_node(&mut self, node: &'a Term) -> Result<(Term, ContextClass), ModelError> {
        let of = self
            .one(node, &self.vocab.eval_of)?
            .ok_or_else(|| self.malformed(node, "eval expression missing ckr:evalOf"))?;
        let of = self.atomic(node, of)?;
        let inn = self
            .one(node, &self.vocab.eval_in)?
            .ok_or_else(|| self.malformed(node, "eval expression missing ckr:evalIn"))?;
        let ctx = self.context_class(node, inn)?;
        self.consume(node);
        Ok((of, ctx))
    }

    fn is_eval(&self, node: &Term) -> bool {
        !self.values(node, &self.vocab.eval_of).is_empty() || !self.values(node, &self.vocab.eval_in).is_empty()
    }

    fn restriction_property(&self, node: &Term) -> Result<Term, ModelError> {
        let p = self
            .one(node, &self.names.on_property)?
            .ok_or_else(|| self.malformed(node, "restriction missing owl:onProperty"))?;
        self.atomic(node, p)
    }

    fn sub_class(&mut self, s: &'a Term, o: &'a Term) -> Result<AxiomNF, ModelError> {
        let n = self.names;
        match (s, o) {
            (Term::Iri(_), Term::Iri(_)) => Ok(AxiomNF::SubClass {
                sub: s.clone(),
                sup: o.clone(),
            }),
            (Term::Iri(_), Term::Blank(_)) => {
                if let Some(neg) = self.one(o, &n.complement_of)? {
                    let neg = self.atomic(o, neg)?;
                    self.consume(o);
                    return Ok(AxiomNF::SubClassNeg { sub: s.clone(), neg });
                }
                let role = self.restriction_property(o)?;
                let axiom = if let Some(value) = self.one(o, &n.has_value)? {
                    AxiomNF::SubHasValue {
                        sub: s.clone(),
                        role,
                        value: value.clone(),
                    }
                } else if let Some(filler) = self.one(o, &n.all_values_from)? {
                    AxiomNF::SupAll {
                        sub: s.clone(),
                        role,
                        filler: self.atomic(o, filler)?,
                    }
                } else if let Some(card) = self.one(o, &n.max_qualified_cardinality)? {
                    if card.lexical().trim() != "1" || !card.is_literal() {
                        return Err(self.malformed(o, format!("cardinality must be 1, found {card}")));
                    }
                    let filler = self.require(o, &n.on_class)?;
                    AxiomNF::SupMax1 {
                        sub: s.clone(),
                        role,
                        filler: self.atomic(o, filler)?,
                    }
                } else {
                    return Err(self.malformed(o, "unsupported right-hand restriction"));
                };
                self.consume(o);
                Ok(axiom)
            }
            (Term::Blank(_), Term::Iri(_)) => {
                if self.is_eval(s) {
                    let (class, context) = self.eval_node(s)?;
                    return Ok(AxiomNF::EvalSubClass {
                        class,
                        context,
                        sup: o.clone(),
                    });
                }
                if let Some(list) = self.one(s, &n.intersection_of)? {
                    let parts = self.list(list)?;
                    self.consume(s);
                    return match parts.as_slice() {
                        [l, r] if l.is_iri() && r.is_iri() => Ok(AxiomNF::SubConj {
                            left: l.clone(),
                            right: r.clone(),
                            sup: o.clone(),
                        }),
                        _ => Err(self.malformed(s, "intersection must have two named classes")),
                    };
                }
                let role = self.restriction_property(s)?;
                let filler = self
                    .one(s, &n.some_values_from)?
                    .ok_or_else(|| self.malformed(s, "unsupported left-hand restriction"))?;
                let filler = self.atomic(s, filler)?;
                self.consume(s);
                Ok(AxiomNF::SubEx {
                    role,
                    filler,
                    sup: o.clone(),
                })
            }
            _ => Err(self.malformed(s, "subclass axiom outside the supported normal forms")),
        }
    }

    fn sub_property(&mut self, s: &'a Term, o: &'a Term) -> Result<AxiomNF, ModelError> {
        let sup = self.atomic(s, o)?;
        match s {
            Term::Iri(_) => Ok(AxiomNF::SubRole { sub: s.clone(), sup }),
            Term::Blank(_) if self.is_eval(s) => {
                let (role, context) = self.eval_node(s)?;
                Ok(AxiomNF::EvalSubRole { role, context, sup })
            }
            _ => Err(self.malformed(s, "sub-property axiom outside the supported normal forms")),
        }
    }

    fn negative_assertion(&mut self, s: &'a Term) -> Result<AxiomNF, ModelError> {
        let n = self.names;
        let subject = self.require(s, &n.source_individual)?.clone();
        let role = self.require(s, &n.assertion_property)?;
        let role = self.atomic(s, role)?;
        let object = self.require(s, &n.target_individual)?.clone();
        self.consume(s);
        Ok(AxiomNF::NegRoleAssert { role, subject, object })
    }
}

/// Interprets the triples of one graph as normal-form axioms.
pub fn parse_triples(triples: &[Triple], graph: &Term, vocab: &CkrVocabulary) -> Result<ParsedGraph, ModelError> {
    NAMES.with(|names| parse_with(triples, graph, vocab, names))
}

fn parse_with(triples: &[Triple], graph: &Term, vocab: &CkrVocabulary, n: &Names) -> Result<ParsedGraph, ModelError> {
    let mut props: HashMap<&Term, Vec<(&Term, &Term)>> = HashMap::new();
    for (s, p, o) in triples {
        if s.is_blank() {
            props.entry(s).or_default().push((p, o));
        }
    }
    let mut r = GraphReader {
        graph,
        names: n,
        vocab,
        props,
        consumed: HashSet::new(),
    };
    let mut out = ParsedGraph::default();

    for (s, p, o) in triples {
        let axiom = if p == &n.sub_class_of {
            r.sub_class(s, o)?
        } else if p == &n.sub_property_of {
            r.sub_property(s, o)?
        } else if p == &n.inverse_of {
            AxiomNF::InvRole {
                role: r.atomic(s, s)?,
                inverse: r.atomic(s, o)?,
            }
        } else if p == &n.property_disjoint_with {
            AxiomNF::DisRole {
                left: r.atomic(s, s)?,
                right: r.atomic(s, o)?,
            }
        } else if p == &n.property_chain_axiom {
            let chain = r.list(o)?;
            match chain.as_slice() {
                [first, second] if first.is_iri() && second.is_iri() => AxiomNF::RoleChain {
                    first: first.clone(),
                    second: second.clone(),
                    sup: r.atomic(s, s)?,
                },
                _ => return Err(r.malformed(s, "property chain must have two named roles")),
            }
        } else if p == &n.same_as {
            AxiomNF::Same {
                left: s.clone(),
                right: o.clone(),
            }
        } else if p == &n.different_from {
            AxiomNF::Different {
                left: s.clone(),
                right: o.clone(),
            }
        } else if p == &n.rdf_type {
            if o == &n.irreflexive_property {
                AxiomNF::IrrRole { role: r.atomic(s, s)? }
            } else if o == &n.negative_property_assertion {
                r.negative_assertion(s)?
            } else if o == &n.restriction || n.declarations.contains(o) {
                continue;
            } else if s.is_blank() && r.props[s].iter().any(|(p, _)| is_structural(p, n, vocab)) {
                // Typed structural node; interpreted through its owner.
                continue;
            } else if is_reserved_namespace(o) {
                out.warnings.push(format!("{graph}: ignoring {s} rdf:type {o}"));
                continue;
            } else {
                AxiomNF::ConceptAssert {
                    class: o.clone(),
                    individual: s.clone(),
                }
            }
        } else if is_structural(p, n, vocab) {
            continue;
        } else if is_reserved_namespace(p) {
            out.warnings
                .push(format!("{graph}: ignoring unsupported triple {s} {p} {o}"));
            continue;
        } else {
            AxiomNF::RoleAssert {
                role: p.clone(),
                subject: s.clone(),
                object: o.clone(),
            }
        };
        out.axioms.insert(axiom);
    }

    for (node, ps) in &r.props {
        if !r.consumed.contains(node) && ps.iter().any(|(p, _)| is_structural(p, n, vocab)) {
            out.warnings
                .push(format!("{graph}: structure at {node} is not part of any axiom"));
        }
    }
    out.warnings.sort();
    Ok(out)
}

/// Source of fresh blank-node labels for encoding.
#[derive(Debug, Clone)]
pub struct BlankNodes {
    prefix: String,
    next: u64,
}

impl BlankNodes {
    pub fn new(prefix: impl Into<String>) -> Self {
        BlankNodes {
            prefix: prefix.into(),
            next: 0,
        }
    }

    pub fn fresh(&mut self) -> Term {
        let t = Term::blank(format!("{}{}", self.prefix, self.next));
        self.next += 1;
        t
    }
}

impl Default for BlankNodes {
    fn default() -> Self {
        BlankNodes::new("b")
    }
}

fn encode_list(items: &[&Term], blanks: &mut BlankNodes, out: &mut Vec<Triple>) -> Term {
    let nil = Term::rdf("nil");
    let nodes: Vec<Term> = items.iter().map(|_| blanks.fresh()).collect();
    for (i, item) in items.iter().enumerate() {
        out.push((nodes[i].clone(), Term::rdf("first"), (*item).clone()));
        let rest = nodes.get(i + 1).cloned().unwrap_or_else(|| nil.clone());
        out.push((nodes[i].clone(), Term::rdf("rest"), rest));
    }
    nodes.into_iter().next().unwrap_or(nil)
}

fn restriction(role: &Term, blanks: &mut BlankNodes, out: &mut Vec<Triple>) -> Term {
    let r = blanks.fresh();
    out.push((r.clone(), Term::rdf("type"), Term::owl("Restriction")));
    out.push((r.clone(), Term::owl("onProperty"), role.clone()));
    r
}

fn encode_eval(
    x: &Term,
    context: &ContextClass,
    vocab: &CkrVocabulary,
    blanks: &mut BlankNodes,
    out: &mut Vec<Triple>,
) -> Term {
    let e = blanks.fresh();
    out.push((e.clone(), vocab.eval_of.clone(), x.clone()));
    let class = match context {
        ContextClass::Named(c) => c.clone(),
        ContextClass::Nominal(c) => {
            let nominal = blanks.fresh();
            let list = encode_list(&[c], blanks, out);
            out.push((nominal.clone(), Term::owl("oneOf"), list));
            nominal
        }
    };
    out.push((e.clone(), vocab.eval_in.clone(), class));
    e
}

/// Triples encoding `axiom`; inverse of [`parse_triples`].
pub fn encode_axiom(axiom: &AxiomNF, vocab: &CkrVocabulary, blanks: &mut BlankNodes) -> Vec<Triple> {
    use AxiomNF::*;
    let mut out = Vec::new();
    let sub_class_of = Term::rdfs("subClassOf");
    match axiom {
        SubClass { sub, sup } => out.push((sub.clone(), sub_class_of, sup.clone())),
        SubClassNeg { sub, neg } => {
            let c = blanks.fresh();
            out.push((sub.clone(), sub_class_of, c.clone()));
            out.push((c, Term::owl("complementOf"), neg.clone()));
        }
        SubHasValue { sub, role, value } => {
            let r = restriction(role, blanks, &mut out);
            out.push((r.clone(), Term::owl("hasValue"), value.clone()));
            out.push((sub.clone(), sub_class_of, r));
        }
        SubConj { left, right, sup } => {
            let c = blanks.fresh();
            let list = encode_list(&[left, right], blanks, &mut out);
            out.push((c.clone(), Term::owl("intersectionOf"), list));
            out.push((c, sub_class_of, sup.clone()));
        }
        SubEx { role, filler, sup } => {
            let r = restriction(role, blanks, &mut out);
            out.push((r.clone(), Term::owl("someValuesFrom"), filler.clone()));
            out.push((r, sub_class_of, sup.clone()));
        }
        SupAll { sub, role, filler } => {
            let r = restriction(role, blanks, &mut out);
            out.push((r.clone(), Term::owl("allValuesFrom"), filler.clone()));
            out.push((sub.clone(), sub_class_of, r));
        }
        SupMax1 { sub, role, filler } => {
            let r = restriction(role, blanks, &mut out);
            out.push((
                r.clone(),
                Term::owl("maxQualifiedCardinality"),
                Term::typed_literal("1", format!("{XSD}nonNegativeInteger")),
            ));
            out.push((r.clone(), Term::owl("onClass"), filler.clone()));
            out.push((sub.clone(), sub_class_of, r));
        }
        ConceptAssert { class, individual } => out.push((individual.clone(), Term::rdf("type"), class.clone())),
        RoleAssert { role, subject, object } => out.push((subject.clone(), role.clone(), object.clone())),
        NegRoleAssert { role, subject, object } => {
            let a = blanks.fresh();
            out.push((a.clone(), Term::rdf("type"), Term::owl("NegativePropertyAssertion")));
            out.push((a.clone(), Term::owl("sourceIndividual"), subject.clone()));
            out.push((a.clone(), Term::owl("assertionProperty"), role.clone()));
            out.push((a, Term::owl("targetIndividual"), object.clone()));
        }
        Same { left, right } => out.push((left.clone(), Term::owl("sameAs"), right.clone())),
        Different { left, right } => out.push((left.clone(), Term::owl("differentFrom"), right.clone())),
        SubRole { sub, sup } => out.push((sub.clone(), Term::rdfs("subPropertyOf"), sup.clone())),
        InvRole { role, inverse } => out.push((role.clone(), Term::owl("inverseOf"), inverse.clone())),
        RoleChain { first, second, sup } => {
            let list = encode_list(&[first, second], blanks, &mut out);
            out.push((sup.clone(), Term::owl("propertyChainAxiom"), list));
        }
        DisRole { left, right } => out.push((left.clone(), Term::owl("propertyDisjointWith"), right.clone())),
        IrrRole { role } => out.push((role.clone(), Term::rdf("type"), Term::owl("IrreflexiveProperty"))),
        EvalSubClass { class, context, sup } => {
            let e = encode_eval(class, context, vocab, blanks, &mut out);
            out.push((e, sub_class_of, sup.clone()));
        }
        EvalSubRole { role, context, sup } => {
            let e = encode_eval(role, context, vocab, blanks, &mut out);
            out.push((e, Term::rdfs("subPropertyOf"), sup.clone()));
        }
    }
    out
}
