//! Deduction rule catalog and the four reasoning regimes.

use std::fmt;
use std::str::FromStr;

use super::rule::{Arg, Atom, Rule};
use super::EngineError;
use crate::calculus::Relation::{self, *};

fn v(i: u8) -> Arg {
    Arg::Var(i)
}

fn atom(rel: Relation, args: &[Arg]) -> Atom {
    Atom::new(rel, args)
}

fn rule(name: &str, body: Vec<Atom>, head: Atom) -> Rule {
    Rule::new(name, body, head).expect("catalog rules are range-restricted")
}

// Variable names shared by the catalog.
const X: u8 = 0;
const Y: u8 = 1;
const Z: u8 = 2;
const C: u8 = 3;
const W: u8 = 4;
const R: u8 = 5;
const S: u8 = 6;
const T: u8 = 7;
const W2: u8 = 8;
const Y2: u8 = 9;
const CP: u8 = 10;
const C1: u8 = 11;

/// Class and property subsumption.
pub fn subsumption_rules() -> Vec<Rule> {
    vec![
        rule(
            "subClass",
            vec![atom(SubClass, &[v(Y), v(Z), v(C)]), atom(Inst, &[v(X), v(Y), v(C)])],
            atom(Inst, &[v(X), v(Z), v(C)]),
        ),
        rule(
            "subRole",
            vec![
                atom(SubRole, &[v(R), v(T), v(C)]),
                atom(Triple, &[v(X), v(R), v(Y), v(C)]),
            ],
            atom(Triple, &[v(X), v(T), v(Y), v(C)]),
        ),
    ]
}

/// Deduction rules for every normal-form shape, including equality and
/// inconsistency detection.
pub fn rl_rules() -> Vec<Rule> {
    let mut rules = subsumption_rules();
    rules.extend([
        rule(
            "subConj",
            vec![
                atom(SubConj, &[v(Y), v(Y2), v(Z), v(C)]),
                atom(Inst, &[v(X), v(Y), v(C)]),
                atom(Inst, &[v(X), v(Y2), v(C)]),
            ],
            atom(Inst, &[v(X), v(Z), v(C)]),
        ),
        rule(
            "subEx",
            vec![
                atom(SubEx, &[v(R), v(Y), v(Z), v(C)]),
                atom(Triple, &[v(X), v(R), v(W), v(C)]),
                atom(Inst, &[v(W), v(Y), v(C)]),
            ],
            atom(Inst, &[v(X), v(Z), v(C)]),
        ),
        rule(
            "subHasValue",
            vec![
                atom(SubHasValue, &[v(Y), v(R), v(W), v(C)]),
                atom(Inst, &[v(X), v(Y), v(C)]),
            ],
            atom(Triple, &[v(X), v(R), v(W), v(C)]),
        ),
        rule(
            "supAll",
            vec![
                atom(SupAll, &[v(Y), v(R), v(Z), v(C)]),
                atom(Inst, &[v(X), v(Y), v(C)]),
                atom(Triple, &[v(X), v(R), v(W), v(C)]),
            ],
            atom(Inst, &[v(W), v(Z), v(C)]),
        ),
        rule(
            "supMax1",
            vec![
                atom(SupMax1, &[v(Y), v(R), v(Z), v(C)]),
                atom(Inst, &[v(X), v(Y), v(C)]),
                atom(Triple, &[v(X), v(R), v(W), v(C)]),
                atom(Inst, &[v(W), v(Z), v(C)]),
                atom(Triple, &[v(X), v(R), v(W2), v(C)]),
                atom(Inst, &[v(W2), v(Z), v(C)]),
            ],
            atom(Eq, &[v(W), v(W2), v(C)]),
        ),
        rule(
            "invRole",
            vec![
                atom(InvRole, &[v(R), v(S), v(C)]),
                atom(Triple, &[v(X), v(R), v(Y), v(C)]),
            ],
            atom(Triple, &[v(Y), v(S), v(X), v(C)]),
        ),
        rule(
            "invRole-inverse",
            vec![
                atom(InvRole, &[v(R), v(S), v(C)]),
                atom(Triple, &[v(X), v(S), v(Y), v(C)]),
            ],
            atom(Triple, &[v(Y), v(R), v(X), v(C)]),
        ),
        rule(
            "subRChain",
            vec![
                atom(SubRChain, &[v(R), v(S), v(T), v(C)]),
                atom(Triple, &[v(X), v(R), v(Y), v(C)]),
                atom(Triple, &[v(Y), v(S), v(Z), v(C)]),
            ],
            atom(Triple, &[v(X), v(T), v(Z), v(C)]),
        ),
        rule(
            "eq-sym",
            vec![atom(Eq, &[v(X), v(Y), v(C)])],
            atom(Eq, &[v(Y), v(X), v(C)]),
        ),
        rule(
            "eq-trans",
            vec![atom(Eq, &[v(X), v(Y), v(C)]), atom(Eq, &[v(Y), v(Z), v(C)])],
            atom(Eq, &[v(X), v(Z), v(C)]),
        ),
        rule(
            "eq-inst",
            vec![atom(Eq, &[v(X), v(Y), v(C)]), atom(Inst, &[v(X), v(Z), v(C)])],
            atom(Inst, &[v(Y), v(Z), v(C)]),
        ),
        rule(
            "eq-subject",
            vec![atom(Eq, &[v(X), v(Y), v(C)]), atom(Triple, &[v(X), v(R), v(Z), v(C)])],
            atom(Triple, &[v(Y), v(R), v(Z), v(C)]),
        ),
        rule(
            "eq-object",
            vec![atom(Eq, &[v(X), v(Y), v(C)]), atom(Triple, &[v(Z), v(R), v(X), v(C)])],
            atom(Triple, &[v(Z), v(R), v(Y), v(C)]),
        ),
        rule(
            "unsat-subClassNeg",
            vec![
                atom(SubClassNeg, &[v(Y), v(Z), v(C)]),
                atom(Inst, &[v(X), v(Y), v(C)]),
                atom(Inst, &[v(X), v(Z), v(C)]),
            ],
            atom(Unsat, &[v(C)]),
        ),
        rule(
            "unsat-disRole",
            vec![
                atom(DisRole, &[v(R), v(S), v(C)]),
                atom(Triple, &[v(X), v(R), v(Y), v(C)]),
                atom(Triple, &[v(X), v(S), v(Y), v(C)]),
            ],
            atom(Unsat, &[v(C)]),
        ),
        rule(
            "unsat-irrRole",
            vec![atom(IrrRole, &[v(R), v(C)]), atom(Triple, &[v(X), v(R), v(X), v(C)])],
            atom(Unsat, &[v(C)]),
        ),
        rule(
            "unsat-ntriple",
            vec![
                atom(NTriple, &[v(X), v(R), v(Y), v(C)]),
                atom(Triple, &[v(X), v(R), v(Y), v(C)]),
            ],
            atom(Unsat, &[v(C)]),
        ),
        rule(
            "unsat-neq",
            vec![atom(Neq, &[v(X), v(Y), v(C)]), atom(Eq, &[v(X), v(Y), v(C)])],
            atom(Unsat, &[v(C)]),
        ),
    ]);
    rules
}

/// Rules resolving eval expressions against the global context structure.
pub fn eval_rules() -> Vec<Rule> {
    vec![
        rule(
            "subEval",
            vec![
                atom(SubEval, &[v(Y), v(C1), v(Z), v(C)]),
                atom(Inst, &[v(CP), v(C1), Arg::Global]),
                atom(Inst, &[v(X), v(Y), v(CP)]),
            ],
            atom(Inst, &[v(X), v(Z), v(C)]),
        ),
        rule(
            "subEvalR",
            vec![
                atom(SubEvalR, &[v(R), v(C1), v(S), v(C)]),
                atom(Inst, &[v(CP), v(C1), Arg::Global]),
                atom(Triple, &[v(X), v(R), v(Y), v(CP)]),
            ],
            atom(Triple, &[v(X), v(S), v(Y), v(C)]),
        ),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum RegimeId {
    #[serde(rename = "ckr-rdfs-global")]
    RdfsGlobal,
    #[serde(rename = "ckr-rdfs-local")]
    RdfsLocal,
    #[serde(rename = "ckr-owl-global")]
    OwlGlobal,
    #[serde(rename = "ckr-owl-local")]
    OwlLocal,
}

impl RegimeId {
    pub const ALL: [RegimeId; 4] = [
        RegimeId::RdfsGlobal,
        RegimeId::OwlGlobal,
        RegimeId::RdfsLocal,
        RegimeId::OwlLocal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegimeId::RdfsGlobal => "ckr-rdfs-global",
            RegimeId::RdfsLocal => "ckr-rdfs-local",
            RegimeId::OwlGlobal => "ckr-owl-global",
            RegimeId::OwlLocal => "ckr-owl-local",
        }
    }
}

impl fmt::Display for RegimeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegimeId {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RegimeId::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| EngineError::UnknownRegime(s.to_owned()))
    }
}

/// Where a stage's rules are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// The global context only.
    Global,
    /// Derivation of contexts and their module associations.
    Meta,
    /// All contexts jointly, global context included.
    Local,
}

#[derive(Debug, Clone)]
pub struct Stage {
    pub name: &'static str,
    pub scope: Scope,
    pub rules: Vec<Rule>,
}

#[derive(Debug, Clone)]
pub struct Regime {
    pub id: RegimeId,
    pub stages: Vec<Stage>,
}

impl Regime {
    pub fn stage(&self, scope: Scope) -> Option<&Stage> {
        self.stages.iter().find(|s| s.scope == scope)
    }

    pub fn is_local(&self) -> bool {
        self.stage(Scope::Local).is_some()
    }
}

pub fn instantiate_ruleset(id: RegimeId) -> Regime {
    let global_rules = match id {
        RegimeId::RdfsGlobal | RegimeId::RdfsLocal => subsumption_rules(),
        RegimeId::OwlGlobal | RegimeId::OwlLocal => rl_rules(),
    };
    let mut stages = vec![Stage {
        name: "global",
        scope: Scope::Global,
        rules: global_rules,
    }];
    let local_rules = match id {
        RegimeId::RdfsGlobal | RegimeId::OwlGlobal => None,
        RegimeId::RdfsLocal => Some(subsumption_rules()),
        RegimeId::OwlLocal => Some(rl_rules().into_iter().chain(eval_rules()).collect()),
    };
    if let Some(rules) = local_rules {
        stages.push(Stage {
            name: "assoc",
            scope: Scope::Meta,
            rules: Vec::new(),
        });
        stages.push(Stage {
            name: "local",
            scope: Scope::Local,
            rules,
        });
    }
    Regime { id, stages }
}

pub fn regime_by_name(name: &str) -> Result<Regime, EngineError> {
    Ok(instantiate_ruleset(name.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(rules: &[Rule]) -> Vec<&str> {
        rules.iter().map(|r| r.name.as_str()).collect()
    }

    #[test]
    fn rdfs_global_has_one_stage() {
        let r = instantiate_ruleset(RegimeId::RdfsGlobal);
        assert_eq!(r.stages.len(), 1);
        assert_eq!(r.stages[0].scope, Scope::Global);
        assert_eq!(names(&r.stages[0].rules), vec!["subClass", "subRole"]);
        assert!(!r.is_local());
    }

    #[test]
    fn owl_local_has_three_stages() {
        let r = instantiate_ruleset(RegimeId::OwlLocal);
        let scopes: Vec<Scope> = r.stages.iter().map(|s| s.scope).collect();
        assert_eq!(scopes, vec![Scope::Global, Scope::Meta, Scope::Local]);
        let local = names(&r.stages[2].rules);
        assert!(local.contains(&"subEval") && local.contains(&"subEvalR"));
        assert!(local.contains(&"supMax1"));
        assert!(!names(&r.stages[0].rules).contains(&"subEval"));
    }

    #[test]
    fn rdfs_local_uses_subsumption_only() {
        let r = instantiate_ruleset(RegimeId::RdfsLocal);
        assert_eq!(
            names(&r.stage(Scope::Local).unwrap().rules),
            vec!["subClass", "subRole"]
        );
    }

    #[test]
    fn regime_names() {
        for id in RegimeId::ALL {
            assert_eq!(id.as_str().parse::<RegimeId>().unwrap(), id);
        }
        assert!(matches!(
            "ckr-full".parse::<RegimeId>(),
            Err(EngineError::UnknownRegime(_))
        ));
    }

    #[test]
    fn catalog_covers_every_relation() {
        let rules: Vec<Rule> = rl_rules().into_iter().chain(eval_rules()).collect();
        for rel in Relation::ALL {
            let used = rules
                .iter()
                .any(|r| r.head.relation == rel || r.body.iter().any(|a| a.relation == rel));
            assert!(used, "{rel} unused");
        }
    }
}
