//! Staged closure of a repository: global fixpoint, context structure, joint
//! local fixpoint.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use log::{debug, warn};

use super::fixpoint::{saturate, FixpointOptions, FixpointStats};
use super::ruleset::{Regime, RegimeId, Scope};
use super::EngineError;
use crate::calculus::{
    fact_to_quad, output_translation, translate_glob, translate_local, translate_rl, Fact, FactBase, Relation,
    SymbolTable,
};
use crate::model::{AxiomNF, CkrRepository, CkrVocabulary};
use crate::rdf::{Dataset, Quad, Term, TermId};

pub const DEFAULT_BUDGET_MS: u64 = 1_800_000;

#[derive(Debug, Clone)]
pub struct ClosureOptions {
    pub budget_ms: u64,
    /// Evaluate rules of one round on the rayon pool.
    pub parallel: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            budget_ms: DEFAULT_BUDGET_MS,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub regime: RegimeId,
    pub vocab: CkrVocabulary,
    pub derived: FactBase,
    pub symbols: SymbolTable,
    pub asserted_count: usize,
    pub inferred_count: usize,
    /// Elapsed time per stage, in stage order.
    pub per_stage_millis: Vec<(&'static str, f64)>,
    pub stage_stats: Vec<(&'static str, FixpointStats)>,
    pub inconsistent_contexts: BTreeSet<Term>,
    pub timed_out: bool,
    /// Contexts derived in the global stage.
    pub contexts: BTreeSet<Term>,
    /// Derived (context, module) associations.
    pub mod_assoc: BTreeSet<(Term, Term)>,
}

impl ClosureResult {
    pub fn elapsed_millis(&self) -> f64 {
        self.per_stage_millis.iter().map(|(_, ms)| ms).sum()
    }

    /// Derived facts as quads in the inference graphs.
    pub fn inferred_quads(&self) -> Vec<Quad> {
        self.derived
            .inferred()
            .filter_map(|f| fact_to_quad(&f, &self.symbols, &self.vocab))
            .collect()
    }

    /// `input` extended with the inference graphs.
    pub fn closed_dataset(&self, input: &Dataset) -> Dataset {
        let mut out = input.clone();
        out.add_quads(&self.inferred_quads());
        out
    }

    /// Whether the ABox assertion `a` holds in context `c`.
    ///
    /// Global regimes reason only in the global context, so there `c` entails
    /// what is asserted in its own knowledge base plus what holds globally.
    pub fn entails(&self, repo: &CkrRepository, a: &AxiomNF, c: &Term) -> Result<bool, EngineError> {
        if c != &self.vocab.global_graph && !self.contexts.contains(c) {
            return Err(EngineError::UnknownContext(c.to_string()));
        }
        let held = |ctx: &Term| -> Result<bool, EngineError> {
            let mut probe = self.symbols.clone();
            let before = probe.len();
            let cid = probe.intern(ctx);
            let fact = output_translation(a, cid, &mut probe)?;
            // a fresh symbol cannot occur in any derived fact
            if fact.args().iter().any(|&id| id as usize >= before) {
                return Ok(false);
            }
            Ok(self.derived.contains(&fact))
        };
        if held(c)? {
            return Ok(true);
        }
        if self.regime == RegimeId::RdfsGlobal || self.regime == RegimeId::OwlGlobal {
            if held(&self.vocab.global_graph)? {
                return Ok(true);
            }
            let local = self
                .mod_assoc
                .iter()
                .filter(|(ctx, _)| ctx == c)
                .filter_map(|(_, m)| repo.modules.get(m))
                .any(|m| m.axioms.contains(a));
            return Ok(local);
        }
        Ok(false)
    }

    pub fn unsat(&self, c: &Term) -> bool {
        self.symbols
            .get(c)
            .is_some_and(|id| self.derived.contains(&Fact::new(Relation::Unsat, &[id])))
    }
}

fn materialized_fact(a: &AxiomNF, c: TermId, syms: &mut SymbolTable, vocab: &CkrVocabulary) -> Option<Fact> {
    match a {
        AxiomNF::ConceptAssert { class, individual } if class == &vocab.inconsistent => {
            Some(Fact::new(Relation::Unsat, &[syms.intern(individual)]))
        }
        AxiomNF::ConceptAssert { .. } | AxiomNF::RoleAssert { .. } | AxiomNF::Same { .. } => {
            translate_rl(a, c, syms).ok()
        }
        _ => None,
    }
}

fn load_materialized(fb: &mut FactBase, repo: &CkrRepository, owner: &Term, c: TermId, syms: &mut SymbolTable) {
    if let Some(axioms) = repo.materialized.get(owner) {
        for a in axioms {
            match materialized_fact(a, c, syms, &repo.vocab) {
                Some(f) => {
                    fb.insert_asserted(f);
                }
                None => warn!("ignoring non-assertion {a} in the inference graph of {owner}"),
            }
        }
    }
}

/// Runs the stages of `regime` over `repo`.
pub fn compute_closure(repo: &CkrRepository, regime: &Regime, opts: &ClosureOptions) -> ClosureResult {
    let start = Instant::now();
    let budget = Duration::from_millis(opts.budget_ms);
    let fix_opts = FixpointOptions {
        deadline: start.checked_add(budget),
        parallel: opts.parallel,
    };
    let vocab = &repo.vocab;
    let mut syms = SymbolTable::new();
    let g = syms.intern(&vocab.global_graph);
    let mut fb = FactBase::new();
    let mut per_stage_millis = Vec::new();
    let mut stage_stats = Vec::new();
    let mut timed_out = false;

    // Stage A: global context.
    let t = Instant::now();
    for f in translate_glob(repo, &mut syms) {
        fb.insert_asserted(f);
    }
    load_materialized(&mut fb, repo, &vocab.global_graph, g, &mut syms);
    if let Some(stage) = regime.stage(Scope::Global) {
        let stats = saturate(&mut fb, &stage.rules, g, &fix_opts);
        timed_out |= stats.timed_out;
        stage_stats.push((stage.name, stats));
    }
    per_stage_millis.push(("global", t.elapsed().as_secs_f64() * 1e3));

    // Stage B: contexts and module associations from the global closure.
    let t = Instant::now();
    let ctx_class = syms.intern(&vocab.ctx_class);
    let mod_prop = syms.intern(&vocab.mod_property);
    let contexts: BTreeSet<Term> = fb
        .rows(Relation::Inst)
        .iter()
        .filter(|r| r[1] == ctx_class && r[2] == g)
        .map(|r| syms.resolve(r[0]).clone())
        .collect();
    let mod_assoc: BTreeSet<(Term, Term)> = fb
        .rows(Relation::Triple)
        .iter()
        .filter(|r| r[1] == mod_prop && r[3] == g)
        .map(|r| (syms.resolve(r[0]).clone(), syms.resolve(r[2]).clone()))
        .filter(|(c, _)| contexts.contains(c))
        .collect();
    for (c, m) in &mod_assoc {
        if !repo.modules.contains_key(m) {
            warn!("context {c} is associated with {m}, which is not a module");
        }
    }
    per_stage_millis.push(("assoc", t.elapsed().as_secs_f64() * 1e3));

    // Stage C: one joint fixpoint over every context.
    if let Some(stage) = regime.stage(Scope::Local).filter(|_| !timed_out) {
        let t = Instant::now();
        for c in &contexts {
            let cid = syms.intern(c);
            let knowledge: BTreeSet<&AxiomNF> = mod_assoc
                .iter()
                .filter(|(ctx, _)| ctx == c)
                .filter_map(|(_, m)| repo.modules.get(m))
                .flat_map(|m| m.axioms.iter())
                .collect();
            for a in knowledge {
                for f in translate_local(a, cid, &mut syms, vocab) {
                    fb.insert_asserted(f);
                }
            }
            for a in &repo.global {
                let f = translate_rl(a, cid, &mut syms).expect("global axioms are never eval axioms");
                fb.insert_asserted(f);
            }
            load_materialized(&mut fb, repo, c, cid, &mut syms);
        }
        let stats = saturate(&mut fb, &stage.rules, g, &fix_opts);
        timed_out |= stats.timed_out;
        stage_stats.push((stage.name, stats));
        per_stage_millis.push(("local", t.elapsed().as_secs_f64() * 1e3));
    }

    timed_out |= start.elapsed() > budget;
    let inconsistent_contexts = fb
        .rows(Relation::Unsat)
        .iter()
        .map(|r| syms.resolve(r[0]).clone())
        .collect();
    let asserted_count = fb.asserted_count();
    let inferred_count = fb.len() - asserted_count;
    debug!(
        "{}: {asserted_count} asserted, {inferred_count} inferred, {} contexts",
        regime.id,
        contexts.len()
    );
    ClosureResult {
        regime: regime.id,
        vocab: vocab.clone(),
        derived: fb,
        symbols: syms,
        asserted_count,
        inferred_count,
        per_stage_millis,
        stage_stats,
        inconsistent_contexts,
        timed_out,
        contexts,
        mod_assoc,
    }
}

/// Closes `repo` under `regime` and checks whether `a` holds in `c`.
pub fn check_entailment(repo: &CkrRepository, a: &AxiomNF, c: &Term, regime: &Regime) -> Result<bool, EngineError> {
    let result = compute_closure(repo, regime, &ClosureOptions::default());
    result.entails(repo, a, c)
}

/// Stage timings keyed by stage name.
pub fn stage_millis_map(result: &ClosureResult) -> BTreeMap<String, f64> {
    result
        .per_stage_millis
        .iter()
        .map(|(s, ms)| ((*s).to_owned(), *ms))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::instantiate_ruleset;
    use crate::model::assemble_repository;
    use crate::rdf::{load_str, write_string, Format};

    const HEADER: &str = "@prefix : <http://dkm.fbk.eu/ckr/gen#> .\n\
                          @prefix ckr: <http://dkm.fbk.eu/ckr/meta#> .\n\
                          @prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
                          @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";

    fn repo(doc: &str) -> (Dataset, CkrRepository) {
        let d = load_str(&format!("{HEADER}{doc}"), Format::TriG).unwrap();
        let r = assemble_repository(&d, &CkrVocabulary::default()).unwrap();
        (d, r)
    }

    fn close(r: &CkrRepository, id: RegimeId) -> ClosureResult {
        compute_closure(r, &instantiate_ruleset(id), &ClosureOptions::default())
    }

    fn inst(class: &str, ind: &str) -> AxiomNF {
        AxiomNF::ConceptAssert {
            class: Term::gen(class),
            individual: Term::gen(ind),
        }
    }

    const MICRO: &str = "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . :c1 a ckr:Ctx ; ckr:mod :m1 .\n\
                         :c2 a ckr:Ctx ; ckr:mod :m2 . :c1 a :Src }\n\
                         :m0 { [ ckr:evalOf :D0 ; ckr:evalIn :Src ] rdfs:subClassOf :D1 }\n\
                         :m1 { :x a :D0 . :y a :D0 }\n\
                         :m2 { :z a :D0 }";

    #[test]
    fn empty_repository_infers_nothing() {
        let r = CkrRepository::default();
        for id in RegimeId::ALL {
            let res = close(&r, id);
            assert_eq!(res.inferred_count, 0);
            assert_eq!(res.asserted_count, 0);
            assert!(!res.timed_out);
        }
    }

    #[test]
    fn micro_eval_chain() {
        let (_, r) = repo(MICRO);
        let res = close(&r, RegimeId::OwlLocal);
        let c0 = Term::gen("c0");
        assert_eq!(res.contexts.len(), 3);
        assert!(res.entails(&r, &inst("D1", "x"), &c0).unwrap());
        assert!(res.entails(&r, &inst("D1", "y"), &c0).unwrap());
        // c2 is not a member of the eval context class
        assert!(!res.entails(&r, &inst("D1", "z"), &c0).unwrap());
        assert_eq!(res.inferred_count, 2);
        assert!(!res.entails(&r, &inst("D0", "x"), &Term::gen("c2")).unwrap());
        assert!(matches!(
            res.entails(&r, &inst("D0", "x"), &Term::gen("nowhere")),
            Err(EngineError::UnknownContext(_))
        ));
    }

    #[test]
    fn global_regimes_skip_local_reasoning() {
        let (_, r) = repo(MICRO);
        let res = close(&r, RegimeId::OwlGlobal);
        assert_eq!(res.inferred_count, 0);
        assert_eq!(res.contexts.len(), 3);
        let c1 = Term::gen("c1");
        assert!(res.entails(&r, &inst("D0", "x"), &c1).unwrap());
        assert!(!res.entails(&r, &inst("D1", "x"), &Term::gen("c0")).unwrap());
    }

    #[test]
    fn global_knowledge_propagates() {
        let (_, r) = repo(
            "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 . :A rdfs:subClassOf :B }\n\
             :m0 { :a a :A }",
        );
        let res = close(&r, RegimeId::RdfsLocal);
        assert!(res.entails(&r, &inst("B", "a"), &Term::gen("c0")).unwrap());
    }

    #[test]
    fn inconsistency_is_recorded() {
        let (_, r) = repo(
            "ckr:global { :c0 a ckr:Ctx ; ckr:mod :m0 }\n\
             :m0 { :A rdfs:subClassOf [ owl:complementOf :B ] . :a a :A , :B .\n\
                   :B rdfs:subClassOf :C }",
        );
        let res = close(&r, RegimeId::OwlLocal);
        let c0 = Term::gen("c0");
        assert!(res.inconsistent_contexts.contains(&c0));
        assert!(res.unsat(&c0));
        assert!(res.entails(&r, &inst("C", "a"), &c0).unwrap());
    }

    #[test]
    fn closing_a_closed_dataset_infers_nothing() {
        let (d, r) = repo(MICRO);
        let res = close(&r, RegimeId::OwlLocal);
        let closed = res.closed_dataset(&d);
        let text = write_string(&closed, Format::TriG).unwrap();
        let reloaded = load_str(&text, Format::TriG).unwrap();
        let r2 = assemble_repository(&reloaded, &CkrVocabulary::default()).unwrap();
        let res2 = close(&r2, RegimeId::OwlLocal);
        assert_eq!(res2.inferred_count, 0);
        assert_eq!(res2.closed_dataset(&reloaded), reloaded);
    }

    #[test]
    fn zero_budget_times_out() {
        let (_, r) = repo(MICRO);
        let res = compute_closure(
            &r,
            &instantiate_ruleset(RegimeId::OwlLocal),
            &ClosureOptions {
                budget_ms: 0,
                parallel: false,
            },
        );
        assert!(res.timed_out);
    }
}
