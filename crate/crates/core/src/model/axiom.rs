use std::fmt;

use crate::rdf::Term;

/// Context-class argument of an eval expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ContextClass {
    /// An atomic context class such as `ckr:Ctx`.
    Named(Term),
    /// The singleton class `{c}`.
    Nominal(Term),
}

/// Normal-form axiom of the supported language.
///
/// Concept positions hold atomic class names; `SubHasValue` carries an
/// individual (or literal) value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomNF {
    /// `A ⊑ B`
    SubClass { sub: Term, sup: Term },
    /// `A ⊑ ¬B`
    SubClassNeg { sub: Term, neg: Term },
    /// `A ⊑ ∃R.{a}`
    SubHasValue { sub: Term, role: Term, value: Term },
    /// `A ⊓ B ⊑ C`
    SubConj { left: Term, right: Term, sup: Term },
    /// `∃R.A ⊑ B`
    SubEx { role: Term, filler: Term, sup: Term },
    /// `A ⊑ ∀R.B`
    SupAll { sub: Term, role: Term, filler: Term },
    /// `A ⊑ ≤1 R.B`
    SupMax1 { sub: Term, role: Term, filler: Term },
    /// `A(a)`
    ConceptAssert { class: Term, individual: Term },
    /// `R(a, b)`
    RoleAssert { role: Term, subject: Term, object: Term },
    /// `¬R(a, b)`
    NegRoleAssert { role: Term, subject: Term, object: Term },
    /// `a = b`
    Same { left: Term, right: Term },
    /// `a ≠ b`
    Different { left: Term, right: Term },
    /// `R ⊑ T`
    SubRole { sub: Term, sup: Term },
    /// `Inv(R, S)`
    InvRole { role: Term, inverse: Term },
    /// `R ∘ S ⊑ T`
    RoleChain { first: Term, second: Term, sup: Term },
    /// `Dis(R, S)`
    DisRole { left: Term, right: Term },
    /// `Irr(R)`
    IrrRole { role: Term },
    /// `eval(A, C) ⊑ B`
    EvalSubClass {
        class: Term,
        context: ContextClass,
        sup: Term,
    },
    /// `eval(R, C) ⊑ S`
    EvalSubRole {
        role: Term,
        context: ContextClass,
        sup: Term,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    TBox,
    ABox,
    RBox,
    Eval,
}

/// Axiom shape without its arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    SubClass,
    SubClassNeg,
    SubHasValue,
    SubConj,
    SubEx,
    SupAll,
    SupMax1,
    ConceptAssert,
    RoleAssert,
    NegRoleAssert,
    Same,
    Different,
    SubRole,
    InvRole,
    RoleChain,
    DisRole,
    IrrRole,
    EvalSubClass,
    EvalSubRole,
}

impl Shape {
    pub const ALL: [Shape; 19] = [
        Shape::SubClass,
        Shape::SubClassNeg,
        Shape::SubHasValue,
        Shape::SubConj,
        Shape::SubEx,
        Shape::SupAll,
        Shape::SupMax1,
        Shape::ConceptAssert,
        Shape::RoleAssert,
        Shape::NegRoleAssert,
        Shape::Same,
        Shape::Different,
        Shape::SubRole,
        Shape::InvRole,
        Shape::RoleChain,
        Shape::DisRole,
        Shape::IrrRole,
        Shape::EvalSubClass,
        Shape::EvalSubRole,
    ];

    pub fn family(self) -> Family {
        use Shape::*;
        match self {
            SubClass | SubClassNeg | SubHasValue | SubConj | SubEx | SupAll | SupMax1 => Family::TBox,
            ConceptAssert | RoleAssert | NegRoleAssert | Same | Different => Family::ABox,
            SubRole | InvRole | RoleChain | DisRole | IrrRole => Family::RBox,
            EvalSubClass | EvalSubRole => Family::Eval,
        }
    }
}

impl AxiomNF {
    pub fn shape(&self) -> Shape {
        match self {
            AxiomNF::SubClass { .. } => Shape::SubClass,
            AxiomNF::SubClassNeg { .. } => Shape::SubClassNeg,
            AxiomNF::SubHasValue { .. } => Shape::SubHasValue,
            AxiomNF::SubConj { .. } => Shape::SubConj,
            AxiomNF::SubEx { .. } => Shape::SubEx,
            AxiomNF::SupAll { .. } => Shape::SupAll,
            AxiomNF::SupMax1 { .. } => Shape::SupMax1,
            AxiomNF::ConceptAssert { .. } => Shape::ConceptAssert,
            AxiomNF::RoleAssert { .. } => Shape::RoleAssert,
            AxiomNF::NegRoleAssert { .. } => Shape::NegRoleAssert,
            AxiomNF::Same { .. } => Shape::Same,
            AxiomNF::Different { .. } => Shape::Different,
            AxiomNF::SubRole { .. } => Shape::SubRole,
            AxiomNF::InvRole { .. } => Shape::InvRole,
            AxiomNF::RoleChain { .. } => Shape::RoleChain,
            AxiomNF::DisRole { .. } => Shape::DisRole,
            AxiomNF::IrrRole { .. } => Shape::IrrRole,
            AxiomNF::EvalSubClass { .. } => Shape::EvalSubClass,
            AxiomNF::EvalSubRole { .. } => Shape::EvalSubRole,
        }
    }

    pub fn family(&self) -> Family {
        self.shape().family()
    }

    pub fn is_eval(&self) -> bool {
        self.family() == Family::Eval
    }

    /// Every term the axiom mentions, context-class arguments included.
    pub fn terms(&self) -> Vec<&Term> {
        use AxiomNF::*;
        match self {
            SubClass { sub, sup } | SubRole { sub, sup } => vec![sub, sup],
            SubClassNeg { sub, neg } => vec![sub, neg],
            SubHasValue { sub, role, value } => vec![sub, role, value],
            SubConj { left, right, sup } => vec![left, right, sup],
            SubEx { role, filler, sup } => vec![role, filler, sup],
            SupAll { sub, role, filler } | SupMax1 { sub, role, filler } => vec![sub, role, filler],
            ConceptAssert { class, individual } => vec![class, individual],
            RoleAssert { role, subject, object } | NegRoleAssert { role, subject, object } => {
                vec![role, subject, object]
            }
            Same { left, right } | Different { left, right } | DisRole { left, right } => {
                vec![left, right]
            }
            InvRole { role, inverse } => vec![role, inverse],
            RoleChain { first, second, sup } => vec![first, second, sup],
            IrrRole { role } => vec![role],
            EvalSubClass { class: x, context, sup } | EvalSubRole { role: x, context, sup } => {
                let c = match context {
                    ContextClass::Named(t) | ContextClass::Nominal(t) => t,
                };
                vec![x, c, sup]
            }
        }
    }
}

impl fmt::Display for ContextClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextClass::Named(t) => write!(f, "{t}"),
            ContextClass::Nominal(t) => write!(f, "{{{t}}}"),
        }
    }
}

impl fmt::Display for AxiomNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AxiomNF::*;
        match self {
            SubClass { sub, sup } => write!(f, "{sub} ⊑ {sup}"),
            SubClassNeg { sub, neg } => write!(f, "{sub} ⊑ ¬{neg}"),
            SubHasValue { sub, role, value } => write!(f, "{sub} ⊑ ∃{role}.{{{value}}}"),
            SubConj { left, right, sup } => write!(f, "{left} ⊓ {right} ⊑ {sup}"),
            SubEx { role, filler, sup } => write!(f, "∃{role}.{filler} ⊑ {sup}"),
            SupAll { sub, role, filler } => write!(f, "{sub} ⊑ ∀{role}.{filler}"),
            SupMax1 { sub, role, filler } => write!(f, "{sub} ⊑ ≤1 {role}.{filler}"),
            ConceptAssert { class, individual } => write!(f, "{class}({individual})"),
            RoleAssert { role, subject, object } => write!(f, "{role}({subject}, {object})"),
            NegRoleAssert { role, subject, object } => write!(f, "¬{role}({subject}, {object})"),
            Same { left, right } => write!(f, "{left} = {right}"),
            Different { left, right } => write!(f, "{left} ≠ {right}"),
            SubRole { sub, sup } => write!(f, "{sub} ⊑ {sup}"),
            InvRole { role, inverse } => write!(f, "Inv({role}, {inverse})"),
            RoleChain { first, second, sup } => write!(f, "{first} ∘ {second} ⊑ {sup}"),
            DisRole { left, right } => write!(f, "Dis({left}, {right})"),
            IrrRole { role } => write!(f, "Irr({role})"),
            EvalSubClass { class, context, sup } => write!(f, "eval({class}, {context}) ⊑ {sup}"),
            EvalSubRole { role, context, sup } => write!(f, "eval({role}, {context}) ⊑ {sup}"),
        }
    }
}
