use std::fmt;

use crate::calculus::Relation;
use crate::rdf::TermId;

pub type Var = u8;

/// Maximum number of distinct variables in one rule.
pub const MAX_VARS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arg {
    Var(Var),
    Const(TermId),
    /// The global context, resolved against the symbol table at evaluation.
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub relation: Relation,
    pub args: Vec<Arg>,
}

impl Atom {
    pub fn new(relation: Relation, args: &[Arg]) -> Self {
        assert_eq!(args.len(), relation.arity(), "arity mismatch in atom over {relation}");
        Atom {
            relation,
            args: args.to_vec(),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.args.iter().filter_map(|a| match a {
            Arg::Var(v) => Some(*v),
            _ => None,
        })
    }
}

/// A positive datalog rule `body → head`.
///
/// Firing is filtered by the fact base's set semantics: a head that is
/// already present is never added again.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub name: String,
    pub body: Vec<Atom>,
    pub head: Atom,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("rule {rule}: head variable ?{var} does not occur in the body")]
    NotRangeRestricted { rule: String, var: Var },
    #[error("rule {rule}: variable ?{var} exceeds the supported range")]
    TooManyVars { rule: String, var: Var },
    #[error("rule {0} has an empty body")]
    EmptyBody(String),
}

impl Rule {
    pub fn new(name: impl Into<String>, body: Vec<Atom>, head: Atom) -> Result<Self, RuleError> {
        let rule = Rule {
            name: name.into(),
            body,
            head,
        };
        if rule.body.is_empty() {
            return Err(RuleError::EmptyBody(rule.name));
        }
        for v in rule.body.iter().flat_map(Atom::vars).chain(rule.head.vars()) {
            if v as usize >= MAX_VARS {
                return Err(RuleError::TooManyVars {
                    rule: rule.name.clone(),
                    var: v,
                });
            }
        }
        for v in rule.head.vars() {
            if !rule.body.iter().any(|a| a.vars().any(|b| b == v)) {
                return Err(RuleError::NotRangeRestricted {
                    rule: rule.name.clone(),
                    var: v,
                });
            }
        }
        Ok(rule)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.relation)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match a {
                Arg::Var(v) => write!(f, "?{v}")?,
                Arg::Const(c) => write!(f, "#{c}")?,
                Arg::Global => f.write_str("g")?,
            }
        }
        f.write_str(")")
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.name)?;
        for (i, a) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∧ ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, " → {}", self.head)
    }
}
