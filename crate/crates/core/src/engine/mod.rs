//! Rule sets, regimes and the staged fixpoint closure.

mod closure;
mod fixpoint;
mod rule;
mod ruleset;

pub use closure::{
    check_entailment, compute_closure, stage_millis_map, ClosureOptions, ClosureResult, DEFAULT_BUDGET_MS,
};
pub use fixpoint::{saturate, FixpointOptions, FixpointStats};
pub use rule::{Arg, Atom, Rule, RuleError, Var, MAX_VARS};
pub use ruleset::{
    eval_rules, instantiate_ruleset, regime_by_name, rl_rules, subsumption_rules, Regime, RegimeId, Scope, Stage,
};

use thiserror::Error;

use crate::calculus::CalculusError;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown regime {0:?}")]
    UnknownRegime(String),
    #[error("unknown context {0}")]
    UnknownContext(String),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}
