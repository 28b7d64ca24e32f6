//! Semi-naive bottom-up evaluation over a [`FactBase`].

use std::time::Instant;

use rayon::prelude::*;

use super::rule::{Arg, Atom, Rule, Var, MAX_VARS};
use crate::calculus::{project, Fact, FactBase, Mask, Relation, Tuple};
use crate::rdf::TermId;

/// Rows of the delta relation handled by one task.
const CHUNK: usize = 2048;
/// Join iterations between deadline checks.
const DEADLINE_STRIDE: u32 = 1024;

#[derive(Debug, Clone, Copy)]
enum Src {
    Var(Var),
    Const(TermId),
}

#[derive(Debug, Clone)]
struct Step {
    relation: Relation,
    mask: Mask,
    /// Key sources for the positions in `mask`.
    key: Vec<(usize, Src)>,
    /// Unbound positions whose variable is bound by this step.
    binds: Vec<(usize, Var)>,
    /// Positions that must equal an earlier position of the same atom.
    same: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
struct Plan {
    rule: usize,
    delta: Step,
    rest: Vec<Step>,
    head: (Relation, Vec<Src>),
}

fn resolve(arg: Arg, global: TermId) -> Result<Var, TermId> {
    match arg {
        Arg::Var(v) => Ok(v),
        Arg::Const(c) => Err(c),
        Arg::Global => Err(global),
    }
}

fn compile_step(atom: &Atom, bound: &mut [bool; MAX_VARS], global: TermId, indexed: bool) -> Step {
    let mut step = Step {
        relation: atom.relation,
        mask: 0,
        key: Vec::new(),
        binds: Vec::new(),
        same: Vec::new(),
    };
    let mut first_pos: [Option<usize>; MAX_VARS] = [None; MAX_VARS];
    for (i, &arg) in atom.args.iter().enumerate() {
        match resolve(arg, global) {
            Err(c) => {
                step.mask |= 1 << i;
                step.key.push((i, Src::Const(c)));
            }
            Ok(v) if bound[v as usize] => {
                step.mask |= 1 << i;
                step.key.push((i, Src::Var(v)));
            }
            Ok(v) => match first_pos[v as usize] {
                Some(p) => step.same.push((i, p)),
                None => {
                    first_pos[v as usize] = Some(i);
                    step.binds.push((i, v));
                }
            },
        }
    }
    for &(_, v) in &step.binds {
        bound[v as usize] = true;
    }
    if !indexed {
        // The delta step scans rows directly, so bound positions become checks.
        step.mask = 0;
    }
    step
}

fn bound_positions(atom: &Atom, bound: &[bool; MAX_VARS]) -> usize {
    atom.args
        .iter()
        .filter(|a| match a {
            Arg::Var(v) => bound[*v as usize],
            _ => true,
        })
        .count()
}

fn is_data(rel: Relation) -> bool {
    matches!(rel, Relation::Inst | Relation::Triple | Relation::Eq)
}

fn compile(rule_idx: usize, rule: &Rule, delta_pos: usize, global: TermId) -> Plan {
    let mut bound = [false; MAX_VARS];
    let delta = compile_step(&rule.body[delta_pos], &mut bound, global, false);
    let mut remaining: Vec<usize> = (0..rule.body.len()).filter(|&i| i != delta_pos).collect();
    let mut rest = Vec::new();
    while !remaining.is_empty() {
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(order, &i)| {
                let a = &rule.body[i];
                (
                    bound_positions(a, &bound),
                    !is_data(a.relation),
                    std::cmp::Reverse(*order),
                )
            })
            .expect("non-empty");
        let i = remaining.remove(pick);
        rest.push(compile_step(&rule.body[i], &mut bound, global, true));
    }
    let head = rule
        .head
        .args
        .iter()
        .map(|&a| match resolve(a, global) {
            Ok(v) => Src::Var(v),
            Err(c) => Src::Const(c),
        })
        .collect();
    Plan {
        rule: rule_idx,
        delta,
        rest,
        head: (rule.head.relation, head),
    }
}

#[derive(Debug, Clone, Default)]
pub struct FixpointOptions {
    pub deadline: Option<Instant>,
    pub parallel: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixpointStats {
    pub rounds: usize,
    /// New facts added by the rules.
    pub derived: usize,
    /// New facts per rule, in rule order.
    pub per_rule: Vec<usize>,
    pub timed_out: bool,
}

struct Ctx<'a> {
    fb: &'a FactBase,
    deadline: Option<Instant>,
}

struct TaskOut {
    facts: Vec<(usize, Fact)>,
    timed_out: bool,
}

fn src_val(src: Src, env: &[TermId; MAX_VARS]) -> TermId {
    match src {
        Src::Var(v) => env[v as usize],
        Src::Const(c) => c,
    }
}

fn matches_row(step: &Step, row: &Tuple, env: &[TermId; MAX_VARS]) -> bool {
    step.key.iter().all(|&(i, s)| row[i] == src_val(s, env)) && step.same.iter().all(|&(i, p)| row[i] == row[p])
}

struct Runner<'a> {
    ctx: &'a Ctx<'a>,
    plan: &'a Plan,
    out: Vec<(usize, Fact)>,
    ticks: u32,
    timed_out: bool,
}

impl Runner<'_> {
    fn tick(&mut self) -> bool {
        self.ticks += 1;
        if self.ticks >= DEADLINE_STRIDE {
            self.ticks = 0;
            if let Some(d) = self.ctx.deadline {
                if Instant::now() > d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }

    fn emit(&mut self, env: &[TermId; MAX_VARS]) {
        let (rel, srcs) = &self.plan.head;
        let mut args: Tuple = [0; 4];
        for (a, &s) in args.iter_mut().zip(srcs) {
            *a = src_val(s, env);
        }
        let fact = Fact::new(*rel, &args[..srcs.len()]);
        if !self.ctx.fb.contains(&fact) {
            self.out.push((self.plan.rule, fact));
        }
    }

    fn join(&mut self, depth: usize, env: &mut [TermId; MAX_VARS]) {
        if depth == self.plan.rest.len() {
            self.emit(env);
            return;
        }
        let step = &self.plan.rest[depth];
        let fb = self.ctx.fb;
        let mut probe: Tuple = [0; 4];
        for &(i, s) in &step.key {
            probe[i] = src_val(s, env);
        }
        if step.mask == 0 {
            for row in fb.rows(step.relation) {
                if !self.visit(depth, step, row, env) {
                    return;
                }
            }
        } else {
            let key = project(&probe, step.mask);
            for &r in fb.lookup(step.relation, step.mask, &key) {
                if !self.visit(depth, step, fb.row(step.relation, r), env) {
                    return;
                }
            }
        }
    }

    /// Extends `env` with `row` and recurses; false once the deadline passed.
    fn visit(&mut self, depth: usize, step: &Step, row: &Tuple, env: &mut [TermId; MAX_VARS]) -> bool {
        if self.tick() {
            return false;
        }
        if step.same.iter().all(|&(i, p)| row[i] == row[p]) {
            for &(i, v) in &step.binds {
                env[v as usize] = row[i];
            }
            self.join(depth + 1, env);
        }
        true
    }
}

fn run_task(ctx: &Ctx<'_>, plan: &Plan, lo: usize, hi: usize) -> TaskOut {
    let mut runner = Runner {
        ctx,
        plan,
        out: Vec::new(),
        ticks: 0,
        timed_out: false,
    };
    let rows = &ctx.fb.rows(plan.delta.relation)[lo..hi];
    let mut env = [0; MAX_VARS];
    for row in rows {
        if runner.tick() {
            break;
        }
        if !matches_row(&plan.delta, row, &env) {
            continue;
        }
        for &(i, v) in &plan.delta.binds {
            env[v as usize] = row[i];
        }
        runner.join(0, &mut env);
        if runner.timed_out {
            break;
        }
    }
    TaskOut {
        facts: runner.out,
        timed_out: runner.timed_out,
    }
}

/// Computes the least fixpoint of `rules` over `fb` in place.
///
/// Every fact already in `fb` is treated as new in the first round. Rules see
/// a frozen snapshot during a round; derived facts are merged in a fixed order
/// at the end of the round, so the resulting rows do not depend on the worker
/// schedule.
pub fn saturate(fb: &mut FactBase, rules: &[Rule], global: TermId, opts: &FixpointOptions) -> FixpointStats {
    let plans: Vec<Plan> = rules
        .iter()
        .enumerate()
        .flat_map(|(ri, r)| (0..r.body.len()).map(move |d| (ri, r, d)))
        .map(|(ri, r, d)| compile(ri, r, d, global))
        .collect();
    for plan in &plans {
        for step in &plan.rest {
            fb.ensure_index(step.relation, step.mask);
        }
    }

    let mut stats = FixpointStats {
        per_rule: vec![0; rules.len()],
        ..Default::default()
    };
    let mut since = [0usize; Relation::COUNT];
    loop {
        if let Some(d) = opts.deadline {
            if Instant::now() > d {
                stats.timed_out = true;
                break;
            }
        }
        let until = fb.row_counts();
        if until == since {
            break;
        }
        stats.rounds += 1;
        let tasks: Vec<(&Plan, usize, usize)> = plans
            .iter()
            .flat_map(|p| {
                let r = p.delta.relation.index();
                let (lo, hi) = (since[r], until[r]);
                (lo..hi).step_by(CHUNK).map(move |s| (p, s, (s + CHUNK).min(hi)))
            })
            .collect();
        let ctx = Ctx {
            fb,
            deadline: opts.deadline,
        };
        let outs: Vec<TaskOut> = if opts.parallel {
            tasks.par_iter().map(|&(p, lo, hi)| run_task(&ctx, p, lo, hi)).collect()
        } else {
            tasks.iter().map(|&(p, lo, hi)| run_task(&ctx, p, lo, hi)).collect()
        };
        since = until;
        for out in outs {
            stats.timed_out |= out.timed_out;
            for (rule, fact) in out.facts {
                if fb.insert(fact, false) {
                    stats.derived += 1;
                    stats.per_rule[rule] += 1;
                }
            }
        }
        if stats.timed_out {
            break;
        }
    }
    stats
}
