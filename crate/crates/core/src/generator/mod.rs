//! Synthetic repositories: random ones with the normal-form shape mix, and the
//! deterministic scalability and propagation suites.

mod distribution;
mod params;

pub use distribution::{sample_index, AxiomDistribution, SymbolKind, EXACT_ALLOCATION_LIMIT};
pub use params::GenParams;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{encode_axiom, AxiomNF, BlankNodes, CkrVocabulary, ContextClass, Family, Shape};
use crate::rdf::{Dataset, Quad, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("{k} connections need more than {n} contexts")]
    TooManyConnections { n: usize, k: usize },
}

/// Attempts at drawing an axiom that is neither degenerate nor already present
/// in its graph.
const RESAMPLE_LIMIT: usize = 64;

pub fn context_name(i: usize) -> Term {
    Term::gen(&format!("c{i}"))
}

pub fn module_name(i: usize) -> Term {
    Term::gen(&format!("m{i}"))
}

pub fn class_name(i: usize) -> Term {
    Term::gen(&format!("A{i}"))
}

pub fn role_name(i: usize) -> Term {
    Term::gen(&format!("R{i}"))
}

pub fn individual_name(i: usize) -> Term {
    Term::gen(&format!("a{i}"))
}

/// Random symbol of `kind` from the signature of `p`, following the
/// sampling law of [`sample_index`].
pub fn sample_symbol<R: Rng + ?Sized>(kind: SymbolKind, p: &GenParams, rng: &mut R) -> Term {
    match kind {
        SymbolKind::Class => class_name(sample_index(kind, p.n_classes, rng)),
        SymbolKind::Role => role_name(sample_index(kind, p.n_roles, rng)),
        SymbolKind::Individual => individual_name(sample_index(kind, p.n_individuals, rng)),
    }
}

fn draw_axiom<R: Rng + ?Sized>(shape: Shape, p: &GenParams, rng: &mut R) -> AxiomNF {
    let class = |rng: &mut R| sample_symbol(SymbolKind::Class, p, rng);
    let c1 = class(rng);
    let c2 = class(rng);
    let c3 = class(rng);
    let role = |rng: &mut R| sample_symbol(SymbolKind::Role, p, rng);
    let ind = |rng: &mut R| sample_symbol(SymbolKind::Individual, p, rng);
    use AxiomNF::*;
    match shape {
        Shape::SubClass => SubClass { sub: c1, sup: c2 },
        Shape::SubClassNeg => SubClassNeg { sub: c1, neg: c2 },
        Shape::SubHasValue => SubHasValue {
            sub: c1,
            role: role(rng),
            value: ind(rng),
        },
        Shape::SubConj => SubConj {
            left: c1,
            right: c2,
            sup: c3,
        },
        Shape::SubEx => SubEx {
            role: role(rng),
            filler: c1,
            sup: c2,
        },
        Shape::SupAll => SupAll {
            sub: c1,
            role: role(rng),
            filler: c2,
        },
        Shape::SupMax1 => SupMax1 {
            sub: c1,
            role: role(rng),
            filler: c2,
        },
        Shape::ConceptAssert => ConceptAssert {
            class: c1,
            individual: ind(rng),
        },
        Shape::RoleAssert => RoleAssert {
            role: role(rng),
            subject: ind(rng),
            object: ind(rng),
        },
        Shape::NegRoleAssert => NegRoleAssert {
            role: role(rng),
            subject: ind(rng),
            object: ind(rng),
        },
        Shape::Same => Same {
            left: ind(rng),
            right: ind(rng),
        },
        Shape::Different => Different {
            left: ind(rng),
            right: ind(rng),
        },
        Shape::SubRole => SubRole {
            sub: role(rng),
            sup: role(rng),
        },
        Shape::InvRole => InvRole {
            role: role(rng),
            inverse: role(rng),
        },
        Shape::RoleChain => RoleChain {
            first: role(rng),
            second: role(rng),
            sup: role(rng),
        },
        Shape::DisRole => DisRole {
            left: role(rng),
            right: role(rng),
        },
        Shape::IrrRole => IrrRole { role: role(rng) },
        Shape::EvalSubClass | Shape::EvalSubRole => unreachable!("eval axioms are drawn separately"),
    }
}

fn degenerate(a: &AxiomNF) -> bool {
    use AxiomNF::*;
    match a {
        SubClass { sub, sup } => sub == sup,
        SubClassNeg { sub, neg } => sub == neg,
        SubConj { left, right, .. } => left == right,
        Same { left, right } | Different { left, right } => left == right,
        SubRole { sub, sup } => sub == sup,
        DisRole { left, right } => left == right,
        _ => false,
    }
}

/// Draws `count` axioms of `family` not yet in `graph`. Only a signature too
/// small to hold `count` distinct axioms makes a duplicate possible.
fn fill_family<R: Rng + ?Sized>(
    family: Family,
    count: usize,
    p: &GenParams,
    graph: &mut Vec<AxiomNF>,
    seen: &mut std::collections::BTreeSet<AxiomNF>,
    rng: &mut R,
) {
    for shape in AxiomDistribution::allocate(family, count, rng) {
        let mut a = draw_axiom(shape, p, rng);
        for _ in 1..RESAMPLE_LIMIT {
            if !degenerate(&a) && !seen.contains(&a) {
                break;
            }
            a = draw_axiom(shape, p, rng);
        }
        seen.insert(a.clone());
        graph.push(a);
    }
}

/// Axioms of a generated repository, before RDF encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedCkr {
    pub n_contexts: usize,
    pub signature: (usize, usize, usize),
    pub global: Vec<AxiomNF>,
    /// Axioms of module `m{i}`, linked to context `c{i}`.
    pub modules: Vec<Vec<AxiomNF>>,
    /// Extra class names to declare next to the base signature.
    pub extra_classes: Vec<Term>,
}

impl GeneratedCkr {
    fn empty(n_contexts: usize, signature: (usize, usize, usize)) -> Self {
        GeneratedCkr {
            n_contexts,
            signature,
            global: Vec::new(),
            modules: vec![Vec::new(); n_contexts],
            extra_classes: Vec::new(),
        }
    }

    pub fn axiom_count(&self) -> usize {
        self.global.len() + self.modules.iter().map(Vec::len).sum::<usize>()
    }

    pub fn eval_axiom_count(&self) -> usize {
        self.modules.iter().flatten().filter(|a| a.is_eval()).count()
    }

    /// Encodes the repository as a dataset: context declarations, module
    /// links and signature declarations in the global graph, one graph per
    /// module.
    pub fn to_dataset(&self, vocab: &CkrVocabulary) -> Dataset {
        let mut d = Dataset::new();
        let g = &vocab.global_graph;
        let rdf_type = Term::rdf("type");
        let push = |d: &mut Dataset, s: Term, p: Term, o: Term, graph: &Term| {
            d.insert(&Quad::new(s, p, o, graph.clone()));
        };
        for i in 0..self.n_contexts {
            push(&mut d, context_name(i), rdf_type.clone(), vocab.ctx_class.clone(), g);
            push(&mut d, context_name(i), vocab.mod_property.clone(), module_name(i), g);
        }
        let (classes, roles, individuals) = self.signature;
        let declarations = (0..classes)
            .map(|i| (class_name(i), "Class"))
            .chain(self.extra_classes.iter().map(|c| (c.clone(), "Class")))
            .chain((0..roles).map(|i| (role_name(i), "ObjectProperty")))
            .chain((0..individuals).map(|i| (individual_name(i), "NamedIndividual")));
        for (t, kind) in declarations {
            push(&mut d, t, rdf_type.clone(), Term::owl(kind), g);
        }
        let mut blanks = BlankNodes::new("g");
        for a in &self.global {
            for (s, p, o) in encode_axiom(a, vocab, &mut blanks) {
                push(&mut d, s, p, o, g);
            }
        }
        for (i, axioms) in self.modules.iter().enumerate() {
            let m = module_name(i);
            let mut blanks = BlankNodes::new(format!("m{i}_"));
            for a in axioms {
                for (s, p, o) in encode_axiom(a, vocab, &mut blanks) {
                    push(&mut d, s, p, o, &m);
                }
            }
        }
        d
    }
}

/// Draws the axioms of a random repository. Deterministic in `p.seed`.
pub fn generate_axioms(p: &GenParams) -> Result<GeneratedCkr, GenError> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut out = GeneratedCkr::empty(p.n_contexts, (p.n_classes, p.n_roles, p.n_individuals));

    let mut seen = Default::default();
    fill_family(Family::TBox, p.global_tbox, p, &mut out.global, &mut seen, &mut rng);
    fill_family(Family::RBox, p.global_rbox, p, &mut out.global, &mut seen, &mut rng);
    fill_family(Family::ABox, p.global_abox, p, &mut out.global, &mut seen, &mut rng);

    let mut module_seen: Vec<std::collections::BTreeSet<AxiomNF>> = vec![Default::default(); p.n_contexts];
    for i in 0..p.n_contexts {
        let (module, seen) = (&mut out.modules[i], &mut module_seen[i]);
        fill_family(Family::TBox, p.local_tbox, p, module, seen, &mut rng);
        fill_family(Family::RBox, p.local_rbox, p, module, seen, &mut rng);
        fill_family(Family::ABox, p.local_abox, p, module, seen, &mut rng);
    }

    // Eval axioms point at another context; their source class gets members
    // there so the eval has something to propagate.
    for i in 0..p.n_contexts {
        for _ in 0..p.n_eval_axioms {
            let class = sample_symbol(SymbolKind::Class, p, &mut rng);
            let sup = sample_symbol(SymbolKind::Class, p, &mut rng);
            let (context, source) = if p.n_contexts > 1 {
                let mut j = rng.random_range(0..p.n_contexts - 1);
                if j >= i {
                    j += 1;
                }
                (ContextClass::Nominal(context_name(j)), j)
            } else {
                (ContextClass::Named(CkrVocabulary::default().ctx_class), i)
            };
            let eval = AxiomNF::EvalSubClass {
                class: class.clone(),
                context,
                sup,
            };
            if module_seen[i].insert(eval.clone()) {
                out.modules[i].push(eval);
            }
            for _ in 0..p.n_propagated_individuals {
                let a = AxiomNF::ConceptAssert {
                    class: class.clone(),
                    individual: sample_symbol(SymbolKind::Individual, p, &mut rng),
                };
                if module_seen[source].insert(a.clone()) {
                    out.modules[source].push(a);
                }
            }
        }
    }
    if let Some(i) = out.modules.iter().position(Vec::is_empty) {
        return Err(GenError::InvalidParams(format!(
            "module {} would be empty",
            module_name(i)
        )));
    }
    Ok(out)
}

pub fn generate_ckr(p: &GenParams) -> Result<Dataset, GenError> {
    Ok(generate_axioms(p)?.to_dataset(&CkrVocabulary::default()))
}

/// Context sizes of the scalability suite.
pub const TS1_CONTEXTS: [usize; 5] = [1, 5, 10, 50, 100];
/// Signature scales of the scalability suite.
pub const TS1_SCALES: [usize; 5] = [10, 50, 100, 500, 1000];

/// The 25 scalability configurations, ordered by context count then scale.
pub fn build_ts1() -> Vec<GenParams> {
    TS1_CONTEXTS
        .iter()
        .flat_map(|&n| TS1_SCALES.iter().map(move |&s| GenParams::scaled(n, s)))
        .collect()
}

pub fn ts1_label(p: &GenParams) -> String {
    format!("c{}-s{}", p.n_contexts, p.n_classes)
}

pub fn propagation_source() -> Term {
    Term::gen("D0")
}

pub fn propagation_target() -> Term {
    Term::gen("D1")
}

/// Per-context copy of the source class used by the replication suite.
pub fn replicated_source(j: usize) -> Term {
    Term::gen(&format!("D0-{j}"))
}

pub fn propagated_individual(i: usize, j: usize) -> Term {
    Term::gen(&format!("x_{i}_{j}"))
}

fn check_sweep(n: usize, k: usize, m: usize) -> Result<(), GenError> {
    if n == 0 {
        return Err(GenError::InvalidParams("n_contexts must be positive".into()));
    }
    if k >= n {
        return Err(GenError::TooManyConnections { n, k });
    }
    if m == 0 {
        return Err(GenError::InvalidParams("instances per context must be positive".into()));
    }
    Ok(())
}

fn targets(i: usize, n: usize, k: usize) -> impl Iterator<Item = usize> {
    (1..=k).map(move |j| (i + j) % n)
}

/// Propagation suite: context `c_i` holds `eval(D0, {c_t}) ⊑ D1` for the `k`
/// contexts following it (mod `n`) and `m` instances `D0(x_i_j)`.
pub fn ts2_axioms(n: usize, k: usize, m: usize) -> Result<GeneratedCkr, GenError> {
    check_sweep(n, k, m)?;
    let mut out = GeneratedCkr::empty(n, (0, 0, 0));
    out.extra_classes = vec![propagation_source(), propagation_target()];
    for (i, module) in out.modules.iter_mut().enumerate() {
        for t in targets(i, n, k) {
            module.push(AxiomNF::EvalSubClass {
                class: propagation_source(),
                context: ContextClass::Nominal(context_name(t)),
                sup: propagation_target(),
            });
        }
        for j in 0..m {
            module.push(AxiomNF::ConceptAssert {
                class: propagation_source(),
                individual: propagated_individual(i, j),
            });
        }
    }
    Ok(out)
}

/// Replication suite: the same inferences as [`ts2_axioms`] without eval.
/// Context `c_i` holds `D0-t ⊑ D1` for each target `t`, its own instances of
/// `D0-i`, and copies of the instances of every `D0-t`.
pub fn ts3_axioms(n: usize, k: usize, m: usize) -> Result<GeneratedCkr, GenError> {
    check_sweep(n, k, m)?;
    let mut out = GeneratedCkr::empty(n, (0, 0, 0));
    out.extra_classes = (0..n).map(replicated_source).collect();
    out.extra_classes.push(propagation_target());
    for (i, module) in out.modules.iter_mut().enumerate() {
        for t in targets(i, n, k) {
            module.push(AxiomNF::SubClass {
                sub: replicated_source(t),
                sup: propagation_target(),
            });
        }
        for src in std::iter::once(i).chain(targets(i, n, k)) {
            for j in 0..m {
                module.push(AxiomNF::ConceptAssert {
                    class: replicated_source(src),
                    individual: propagated_individual(src, j),
                });
            }
        }
    }
    Ok(out)
}

pub fn build_ts2(n: usize, k: usize, m: usize) -> Result<Dataset, GenError> {
    Ok(ts2_axioms(n, k, m)?.to_dataset(&CkrVocabulary::default()))
}

pub fn build_ts3(n: usize, k: usize, m: usize) -> Result<Dataset, GenError> {
    Ok(ts3_axioms(n, k, m)?.to_dataset(&CkrVocabulary::default()))
}
