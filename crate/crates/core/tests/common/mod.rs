//! Test helpers shared by the integration suites: a brute-force reference
//! evaluator written independently of the engine's rule compiler, and
//! small-CKR builders.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use ckr::calculus::Relation;
use ckr::engine::{ClosureResult, RegimeId};
use ckr::generator::GenParams;
use ckr::model::{AxiomNF, CkrRepository, ContextClass};
use ckr::rdf::Term;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A fact over terms rather than interned ids.
pub type OFact = (Relation, Vec<Term>);

fn f(rel: Relation, args: &[&Term]) -> OFact {
    (rel, args.iter().map(|t| (*t).clone()).collect())
}

/// Input translation of one axiom holding in `c`.
pub fn oracle_translate(a: &AxiomNF, c: &Term, repo: &CkrRepository) -> Vec<OFact> {
    use AxiomNF::*;
    use Relation as R;
    let g = &repo.vocab.global_graph;
    let fact = match a {
        SubClass { sub, sup } => f(R::SubClass, &[sub, sup, c]),
        SubClassNeg { sub, neg } => f(R::SubClassNeg, &[sub, neg, c]),
        SubHasValue { sub, role, value } => f(R::SubHasValue, &[sub, role, value, c]),
        SubConj { left, right, sup } => f(R::SubConj, &[left, right, sup, c]),
        SubEx { role, filler, sup } => f(R::SubEx, &[role, filler, sup, c]),
        SupAll { sub, role, filler } => f(R::SupAll, &[sub, role, filler, c]),
        SupMax1 { sub, role, filler } => f(R::SupMax1, &[sub, role, filler, c]),
        ConceptAssert { class, individual } => f(R::Inst, &[individual, class, c]),
        RoleAssert { role, subject, object } => f(R::Triple, &[subject, role, object, c]),
        NegRoleAssert { role, subject, object } => f(R::NTriple, &[subject, role, object, c]),
        Same { left, right } => f(R::Eq, &[left, right, c]),
        Different { left, right } => f(R::Neq, &[left, right, c]),
        SubRole { sub, sup } => f(R::SubRole, &[sub, sup, c]),
        InvRole { role, inverse } => f(R::InvRole, &[role, inverse, c]),
        RoleChain { first, second, sup } => f(R::SubRChain, &[first, second, sup, c]),
        DisRole { left, right } => f(R::DisRole, &[left, right, c]),
        IrrRole { role } => f(R::IrrRole, &[role, c]),
        EvalSubClass { class, context, sup }
        | EvalSubRole {
            role: class,
            context,
            sup,
        } => {
            let rel = if matches!(a, EvalSubClass { .. }) {
                R::SubEval
            } else {
                R::SubEvalR
            };
            return match context {
                ContextClass::Named(cc) => vec![f(rel, &[class, cc, sup, c])],
                ContextClass::Nominal(member) => {
                    let nu = repo.vocab.nominal_class(member);
                    vec![f(rel, &[class, &nu, sup, c]), f(R::Inst, &[member, &nu, g])]
                }
            };
        }
    };
    vec![fact]
}

fn materialized(a: &AxiomNF, c: &Term, repo: &CkrRepository) -> Option<OFact> {
    match a {
        AxiomNF::ConceptAssert { class, individual } if class == &repo.vocab.inconsistent => {
            Some(f(Relation::Unsat, &[individual]))
        }
        AxiomNF::ConceptAssert { .. } | AxiomNF::RoleAssert { .. } | AxiomNF::Same { .. } => {
            oracle_translate(a, c, repo).pop()
        }
        _ => None,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rules {
    Subsumption,
    Full,
    FullWithEval,
}

/// All facts of `rel`, as argument vectors.
fn rows(set: &BTreeSet<OFact>, rel: Relation) -> Vec<&[Term]> {
    set.iter()
        .filter(|(r, _)| *r == rel)
        .map(|(_, a)| a.as_slice())
        .collect()
}

/// One naive round: every rule instance whose body holds in `set`.
fn apply(set: &BTreeSet<OFact>, rules: Rules, g: &Term) -> HashSet<OFact> {
    use Relation::*;
    let has = |rel: Relation, args: &[&Term]| set.contains(&f(rel, args));
    let inst = rows(set, Inst);
    let triple = rows(set, Triple);
    let mut out = HashSet::new();
    for sc in rows(set, SubClass) {
        for i in &inst {
            if i[1] == sc[0] && i[2] == sc[2] {
                out.insert(f(Inst, &[&i[0], &sc[1], &sc[2]]));
            }
        }
    }
    for sr in rows(set, SubRole) {
        for t in &triple {
            if t[1] == sr[0] && t[3] == sr[2] {
                out.insert(f(Triple, &[&t[0], &sr[1], &t[2], &t[3]]));
            }
        }
    }
    if rules == Rules::Subsumption {
        return out;
    }
    for a in rows(set, SubConj) {
        for i in &inst {
            if i[1] == a[0] && i[2] == a[3] && has(Inst, &[&i[0], &a[1], &a[3]]) {
                out.insert(f(Inst, &[&i[0], &a[2], &a[3]]));
            }
        }
    }
    for a in rows(set, SubEx) {
        for t in &triple {
            if t[1] == a[0] && t[3] == a[3] && has(Inst, &[&t[2], &a[1], &a[3]]) {
                out.insert(f(Inst, &[&t[0], &a[2], &a[3]]));
            }
        }
    }
    for a in rows(set, SubHasValue) {
        for i in &inst {
            if i[1] == a[0] && i[2] == a[3] {
                out.insert(f(Triple, &[&i[0], &a[1], &a[2], &a[3]]));
            }
        }
    }
    for a in rows(set, SupAll) {
        for t in &triple {
            if t[1] == a[1] && t[3] == a[3] && has(Inst, &[&t[0], &a[0], &a[3]]) {
                out.insert(f(Inst, &[&t[2], &a[2], &a[3]]));
            }
        }
    }
    for a in rows(set, SupMax1) {
        for t1 in &triple {
            if t1[1] != a[1] || t1[3] != a[3] || !has(Inst, &[&t1[0], &a[0], &a[3]]) {
                continue;
            }
            if !has(Inst, &[&t1[2], &a[2], &a[3]]) {
                continue;
            }
            for t2 in &triple {
                if t2[0] == t1[0] && t2[1] == a[1] && t2[3] == a[3] && has(Inst, &[&t2[2], &a[2], &a[3]]) {
                    out.insert(f(Eq, &[&t1[2], &t2[2], &a[3]]));
                }
            }
        }
    }
    for a in rows(set, InvRole) {
        for t in &triple {
            if t[3] != a[2] {
                continue;
            }
            if t[1] == a[0] {
                out.insert(f(Triple, &[&t[2], &a[1], &t[0], &t[3]]));
            }
            if t[1] == a[1] {
                out.insert(f(Triple, &[&t[2], &a[0], &t[0], &t[3]]));
            }
        }
    }
    for a in rows(set, SubRChain) {
        for t1 in &triple {
            if t1[1] != a[0] || t1[3] != a[3] {
                continue;
            }
            for t2 in &triple {
                if t2[0] == t1[2] && t2[1] == a[1] && t2[3] == a[3] {
                    out.insert(f(Triple, &[&t1[0], &a[2], &t2[2], &a[3]]));
                }
            }
        }
    }
    let eq = rows(set, Eq);
    for e in &eq {
        out.insert(f(Eq, &[&e[1], &e[0], &e[2]]));
        for e2 in &eq {
            if e2[0] == e[1] && e2[2] == e[2] {
                out.insert(f(Eq, &[&e[0], &e2[1], &e[2]]));
            }
        }
        for i in &inst {
            if i[0] == e[0] && i[2] == e[2] {
                out.insert(f(Inst, &[&e[1], &i[1], &e[2]]));
            }
        }
        for t in &triple {
            if t[3] != e[2] {
                continue;
            }
            if t[0] == e[0] {
                out.insert(f(Triple, &[&e[1], &t[1], &t[2], &t[3]]));
            }
            if t[2] == e[0] {
                out.insert(f(Triple, &[&t[0], &t[1], &e[1], &t[3]]));
            }
        }
    }
    for a in rows(set, SubClassNeg) {
        for i in &inst {
            if i[1] == a[0] && i[2] == a[2] && has(Inst, &[&i[0], &a[1], &a[2]]) {
                out.insert(f(Unsat, &[&a[2]]));
            }
        }
    }
    for a in rows(set, DisRole) {
        for t in &triple {
            if t[1] == a[0] && t[3] == a[2] && has(Triple, &[&t[0], &a[1], &t[2], &a[2]]) {
                out.insert(f(Unsat, &[&a[2]]));
            }
        }
    }
    for a in rows(set, IrrRole) {
        if triple.iter().any(|t| t[1] == a[0] && t[0] == t[2] && t[3] == a[1]) {
            out.insert(f(Unsat, &[&a[1]]));
        }
    }
    for a in rows(set, NTriple) {
        if has(Triple, &[&a[0], &a[1], &a[2], &a[3]]) {
            out.insert(f(Unsat, &[&a[3]]));
        }
    }
    for a in rows(set, Neq) {
        if has(Eq, &[&a[0], &a[1], &a[2]]) {
            out.insert(f(Unsat, &[&a[2]]));
        }
    }
    if rules != Rules::FullWithEval {
        return out;
    }
    // eval(A, C) ⊑ B in c: members of A in any context c' of class C.
    for a in rows(set, SubEval) {
        for cp in &inst {
            if cp[1] != a[1] || &cp[2] != g {
                continue;
            }
            for i in &inst {
                if i[1] == a[0] && i[2] == cp[0] {
                    out.insert(f(Inst, &[&i[0], &a[2], &a[3]]));
                }
            }
        }
    }
    for a in rows(set, SubEvalR) {
        for cp in &inst {
            if cp[1] != a[1] || &cp[2] != g {
                continue;
            }
            for t in &triple {
                if t[1] == a[0] && t[3] == cp[0] {
                    out.insert(f(Triple, &[&t[0], &a[2], &t[2], &a[3]]));
                }
            }
        }
    }
    out
}

fn saturate(set: &mut BTreeSet<OFact>, rules: Rules, g: &Term) {
    loop {
        let fresh: Vec<OFact> = apply(set, rules, g).into_iter().filter(|x| !set.contains(x)).collect();
        if fresh.is_empty() {
            return;
        }
        set.extend(fresh);
    }
}

/// Every fact (asserted and derived) of the closure of `repo` under `regime`.
pub fn oracle_closure(repo: &CkrRepository, regime: RegimeId) -> BTreeSet<OFact> {
    let vocab = &repo.vocab;
    let g = &vocab.global_graph;
    let mut set = BTreeSet::new();
    for a in repo.meta.iter().chain(&repo.global) {
        set.extend(oracle_translate(a, g, repo));
    }
    let load_inf = |set: &mut BTreeSet<OFact>, owner: &Term| {
        for a in repo.materialized.get(owner).into_iter().flatten() {
            set.extend(materialized(a, owner, repo));
        }
    };
    load_inf(&mut set, g);
    let (global_rules, local_rules) = match regime {
        RegimeId::RdfsGlobal => (Rules::Subsumption, None),
        RegimeId::OwlGlobal => (Rules::Full, None),
        RegimeId::RdfsLocal => (Rules::Subsumption, Some(Rules::Subsumption)),
        RegimeId::OwlLocal => (Rules::Full, Some(Rules::FullWithEval)),
    };
    saturate(&mut set, global_rules, g);
    let Some(local_rules) = local_rules else {
        return set;
    };
    let contexts: Vec<Term> = rows(&set, Relation::Inst)
        .into_iter()
        .filter(|i| i[1] == vocab.ctx_class && &i[2] == g)
        .map(|i| i[0].clone())
        .collect();
    let links: Vec<(Term, Term)> = rows(&set, Relation::Triple)
        .into_iter()
        .filter(|t| t[1] == vocab.mod_property && &t[3] == g)
        .map(|t| (t[0].clone(), t[2].clone()))
        .collect();
    for c in &contexts {
        for (_, m) in links.iter().filter(|(x, _)| x == c) {
            for a in repo.modules.get(m).into_iter().flat_map(|m| &m.axioms) {
                set.extend(oracle_translate(a, c, repo));
            }
        }
        for a in &repo.global {
            set.extend(oracle_translate(a, c, repo));
        }
        load_inf(&mut set, c);
    }
    saturate(&mut set, local_rules, g);
    set
}

/// The engine's fact base in the oracle's representation.
pub fn engine_facts(result: &ClosureResult) -> BTreeSet<OFact> {
    result
        .derived
        .facts()
        .map(|fact| {
            let args = fact
                .args()
                .iter()
                .map(|&id| result.symbols.resolve(id).clone())
                .collect();
            (fact.relation, args)
        })
        .collect()
}

/// Parameters of a small random CKR: at most `max_contexts` contexts and at
/// most 50 axioms in every graph.
pub fn small_params(seed: u64, max_contexts: usize) -> GenParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = GenParams::scaled(rng.random_range(1..=max_contexts), 1);
    p.n_classes = rng.random_range(3..=8);
    p.n_roles = rng.random_range(2..=5);
    p.n_individuals = rng.random_range(3..=8);
    p.global_tbox = rng.random_range(0..=10);
    p.global_rbox = rng.random_range(0..=5);
    p.global_abox = rng.random_range(0..=10);
    p.local_tbox = rng.random_range(1..=15);
    p.local_rbox = rng.random_range(0..=5);
    p.local_abox = rng.random_range(0..=15);
    p.n_eval_axioms = rng.random_range(0..=3);
    p.n_propagated_individuals = rng.random_range(0..=3);
    p.seed = seed;
    p
}

pub fn g(s: &str) -> Term {
    Term::gen(s)
}

/// A repository with contexts `c0..` over the given global and module axioms.
pub fn repo_of(global: Vec<AxiomNF>, modules: Vec<Vec<AxiomNF>>) -> (ckr::rdf::Dataset, CkrRepository) {
    let ckr = ckr::generator::GeneratedCkr {
        n_contexts: modules.len(),
        signature: (0, 0, 0),
        global,
        modules,
        extra_classes: Vec::new(),
    };
    let vocab = ckr::model::CkrVocabulary::default();
    let d = ckr.to_dataset(&vocab);
    let repo = ckr::model::assemble_repository(&d, &vocab).expect("fixture assembles");
    (d, repo)
}

/// Two contexts whose knowledge makes every rule of the catalog fire.
pub fn every_rule_fixture() -> (ckr::rdf::Dataset, CkrRepository) {
    use AxiomNF::*;
    let global = vec![
        SubClass {
            sub: g("A0"),
            sup: g("A1"),
        },
        SubRole {
            sub: g("R0"),
            sup: g("R1"),
        },
        ConceptAssert {
            class: g("A0"),
            individual: g("a0"),
        },
    ];
    let m0 = vec![
        SubConj {
            left: g("A1"),
            right: g("A2"),
            sup: g("A3"),
        },
        ConceptAssert {
            class: g("A2"),
            individual: g("a0"),
        },
        RoleAssert {
            role: g("R0"),
            subject: g("a1"),
            object: g("a0"),
        },
        SubEx {
            role: g("R1"),
            filler: g("A3"),
            sup: g("A4"),
        },
        SubHasValue {
            sub: g("A4"),
            role: g("R2"),
            value: g("a2"),
        },
        SupAll {
            sub: g("A4"),
            role: g("R2"),
            filler: g("A5"),
        },
        SupMax1 {
            sub: g("A6"),
            role: g("R3"),
            filler: g("A5"),
        },
        ConceptAssert {
            class: g("A6"),
            individual: g("a3"),
        },
        RoleAssert {
            role: g("R3"),
            subject: g("a3"),
            object: g("a2"),
        },
        RoleAssert {
            role: g("R3"),
            subject: g("a3"),
            object: g("a4"),
        },
        ConceptAssert {
            class: g("A5"),
            individual: g("a4"),
        },
        InvRole {
            role: g("R2"),
            inverse: g("R4"),
        },
        RoleChain {
            first: g("R4"),
            second: g("R0"),
            sup: g("R5"),
        },
        SubClassNeg {
            sub: g("A5"),
            neg: g("A7"),
        },
        ConceptAssert {
            class: g("A7"),
            individual: g("a4"),
        },
        Same {
            left: g("a5"),
            right: g("a6"),
        },
        RoleAssert {
            role: g("R4"),
            subject: g("a7"),
            object: g("a8"),
        },
    ];
    let m1 = vec![
        EvalSubClass {
            class: g("A0"),
            context: ContextClass::Nominal(g("c0")),
            sup: g("B0"),
        },
        EvalSubRole {
            role: g("R1"),
            context: ContextClass::Named(Term::ckr("Ctx")),
            sup: g("S0"),
        },
    ];
    // One clash per context, so every inconsistency rule derives its own fact.
    let clashes = vec![
        vec![
            DisRole {
                left: g("R5"),
                right: g("R6"),
            },
            RoleAssert {
                role: g("R5"),
                subject: g("a0"),
                object: g("a1"),
            },
            RoleAssert {
                role: g("R6"),
                subject: g("a0"),
                object: g("a1"),
            },
        ],
        vec![
            IrrRole { role: g("R7") },
            RoleAssert {
                role: g("R7"),
                subject: g("a5"),
                object: g("a5"),
            },
        ],
        vec![
            NegRoleAssert {
                role: g("R0"),
                subject: g("a1"),
                object: g("a0"),
            },
            RoleAssert {
                role: g("R0"),
                subject: g("a1"),
                object: g("a0"),
            },
        ],
        vec![
            Different {
                left: g("a2"),
                right: g("a4"),
            },
            Same {
                left: g("a2"),
                right: g("a4"),
            },
        ],
    ];
    repo_of(global, [vec![m0, m1], clashes].concat())
}

/// Derived `(individual, context)` memberships in the propagation target class.
pub fn target_memberships(result: &ClosureResult) -> BTreeSet<(Term, Term)> {
    let target = ckr::generator::propagation_target();
    result
        .derived
        .iter()
        .filter(|(fact, asserted)| !asserted && fact.relation == Relation::Inst)
        .filter_map(|(fact, _)| {
            let [x, class, c] = [0, 1, 2].map(|i| result.symbols.resolve(fact.args()[i]));
            (class == &target && c != &result.vocab.global_graph).then(|| (x.clone(), c.clone()))
        })
        .collect()
}

/// Total axioms per (contexts, classes-scale) row.
pub const SCALABILITY_TOTALS: [(usize, usize, usize); 25] = [
    (1, 10, 70),
    (1, 50, 350),
    (1, 100, 700),
    (1, 500, 3_500),
    (1, 1000, 7_000),
    (5, 10, 210),
    (5, 50, 1_050),
    (5, 100, 2_100),
    (5, 500, 10_500),
    (5, 1000, 21_000),
    (10, 10, 385),
    (10, 50, 1_925),
    (10, 100, 3_850),
    (10, 500, 19_250),
    (10, 1000, 38_500),
    (50, 10, 1_785),
    (50, 50, 8_925),
    (50, 100, 17_850),
    (50, 500, 89_250),
    (50, 1000, 178_500),
    (100, 10, 3_535),
    (100, 50, 17_675),
    (100, 100, 35_350),
    (100, 500, 176_750),
    (100, 1000, 353_500),
];

/// Reference shape frequencies, in percent.
pub const SHAPE_FREQUENCIES: [(ckr::model::Shape, f64); 17] = {
    use ckr::model::Shape::*;
    [
        (SubClass, 50.0),
        (SubClassNeg, 20.0),
        (SubHasValue, 10.0),
        (SubConj, 5.0),
        (SubEx, 5.0),
        (SupAll, 5.0),
        (SupMax1, 5.0),
        (ConceptAssert, 40.0),
        (RoleAssert, 40.0),
        (NegRoleAssert, 10.0),
        (Same, 5.0),
        (Different, 5.0),
        (SubRole, 50.0),
        (InvRole, 25.0),
        (RoleChain, 10.0),
        (DisRole, 10.0),
        (IrrRole, 5.0),
    ]
};

/// Largest deviation, in percentage points, between the shape frequencies of
/// `axioms` and the reference frequencies, per family.
pub fn shape_deviation(axioms: &[AxiomNF]) -> f64 {
    let mut worst: f64 = 0.0;
    for family in [
        ckr::model::Family::TBox,
        ckr::model::Family::ABox,
        ckr::model::Family::RBox,
    ] {
        let of_family: Vec<&AxiomNF> = axioms.iter().filter(|a| a.family() == family).collect();
        assert!(!of_family.is_empty(), "no {family:?} axioms");
        for (shape, pct) in SHAPE_FREQUENCIES.iter().filter(|(s, _)| s.family() == family) {
            let n = of_family.iter().filter(|a| a.shape() == *shape).count();
            let observed = 100.0 * n as f64 / of_family.len() as f64;
            worst = worst.max((observed - pct).abs());
        }
    }
    worst
}

/// Parameters drawing `per_family` axioms of every family into the global graph.
pub fn distribution_params(per_family: usize, seed: u64) -> GenParams {
    let mut p = GenParams::scaled(1, 1000);
    p.global_tbox = per_family;
    p.global_rbox = per_family;
    p.global_abox = per_family;
    p.local_tbox = 1;
    p.local_rbox = 0;
    p.local_abox = 0;
    p.seed = seed;
    p
}
