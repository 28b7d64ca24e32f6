use std::collections::BTreeSet;
use std::ops::Bound;

use rustc_hash::FxHashMap;

use super::term::{Quad, Term};

/// Dense integer id of an interned [`Term`].
pub type TermId = u32;

/// Bidirectional map between terms and dense ids.
#[derive(Debug, Clone, Default)]
pub struct Interner {
    terms: Vec<Term>,
    ids: FxHashMap<Term, TermId>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, term: &Term) -> TermId {
        if let Some(&id) = self.ids.get(term) {
            return id;
        }
        let id = TermId::try_from(self.terms.len()).expect("term id space exhausted");
        self.terms.push(term.clone());
        self.ids.insert(term.clone(), id);
        id
    }

    pub fn intern_owned(&mut self, term: Term) -> TermId {
        if let Some(&id) = self.ids.get(&term) {
            return id;
        }
        let id = TermId::try_from(self.terms.len()).expect("term id space exhausted");
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }

    pub fn get(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub fn resolve(&self, id: TermId) -> &Term {
        &self.terms[id as usize]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Optional constraint per quad position; `None` is a wildcard.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuadPattern {
    pub s: Option<Term>,
    pub p: Option<Term>,
    pub o: Option<Term>,
    pub g: Option<Term>,
}

impl QuadPattern {
    pub fn any() -> Self {
        Self::default()
    }

    pub fn with_s(mut self, s: Term) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_p(mut self, p: Term) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_o(mut self, o: Term) -> Self {
        self.o = Some(o);
        self
    }

    pub fn with_g(mut self, g: Term) -> Self {
        self.g = Some(g);
        self
    }
}

type Key = [TermId; 4];

/// In-memory quad store with set semantics.
///
/// Quads are held as interned ids under four sort orders (SPOG, POSG, OSGP,
/// GSPO), so any pattern with a bound position is answered by a range scan.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    terms: Interner,
    spog: BTreeSet<Key>,
    posg: BTreeSet<Key>,
    osgp: BTreeSet<Key>,
    gspo: BTreeSet<Key>,
}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.spog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spog.is_empty()
    }

    pub fn interner(&self) -> &Interner {
        &self.terms
    }

    /// Inserts one quad, returning whether it was new.
    ///
    /// The predicate and graph name must be IRIs and the subject must not be a
    /// literal; readers validate this before inserting.
    pub fn insert(&mut self, quad: &Quad) -> bool {
        assert!(quad.p.is_iri(), "predicate must be an IRI: {}", quad.p);
        assert!(quad.g.is_iri(), "graph name must be an IRI: {}", quad.g);
        assert!(!quad.s.is_literal(), "subject must not be a literal: {}", quad.s);
        let s = self.terms.intern(&quad.s);
        let p = self.terms.intern(&quad.p);
        let o = self.terms.intern(&quad.o);
        let g = self.terms.intern(&quad.g);
        self.insert_ids([s, p, o, g])
    }

    fn insert_ids(&mut self, [s, p, o, g]: Key) -> bool {
        if !self.spog.insert([s, p, o, g]) {
            return false;
        }
        self.posg.insert([p, o, s, g]);
        self.osgp.insert([o, s, g, p]);
        self.gspo.insert([g, s, p, o]);
        true
    }

    /// Inserts every quad and returns how many were not already present.
    pub fn add_quads<'a>(&mut self, quads: impl IntoIterator<Item = &'a Quad>) -> usize {
        quads.into_iter().filter(|q| self.insert(q)).count()
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        let ids = (
            self.terms.get(&quad.s),
            self.terms.get(&quad.p),
            self.terms.get(&quad.o),
            self.terms.get(&quad.g),
        );
        match ids {
            (Some(s), Some(p), Some(o), Some(g)) => self.spog.contains(&[s, p, o, g]),
            _ => false,
        }
    }

    /// Every quad unifying with `pattern`, ordered by SPOG term id.
    pub fn match_quads(&self, pattern: &QuadPattern) -> Vec<Quad> {
        let mut keys = self.match_ids(pattern);
        keys.sort_unstable();
        keys.into_iter().map(|k| self.quad_of(k)).collect()
    }

    fn lookup(&self, t: &Option<Term>) -> Result<Option<TermId>, ()> {
        match t {
            None => Ok(None),
            Some(t) => self.terms.get(t).map(Some).ok_or(()),
        }
    }

    fn match_ids(&self, pattern: &QuadPattern) -> Vec<Key> {
        let (Ok(s), Ok(p), Ok(o), Ok(g)) = (
            self.lookup(&pattern.s),
            self.lookup(&pattern.p),
            self.lookup(&pattern.o),
            self.lookup(&pattern.g),
        ) else {
            return Vec::new();
        };
        let accept = |k: &Key| {
            s.is_none_or(|v| v == k[0])
                && p.is_none_or(|v| v == k[1])
                && o.is_none_or(|v| v == k[2])
                && g.is_none_or(|v| v == k[3])
        };
        // Pick the permutation whose leading positions are bound.
        let (index, prefix, unpermute): (&BTreeSet<Key>, Vec<TermId>, fn(Key) -> Key) = if let Some(s) = s {
            let prefix = [Some(s), p, o, g];
            (&self.spog, bound_prefix(&prefix), |k| k)
        } else if let Some(p) = p {
            (&self.posg, bound_prefix(&[Some(p), o, None, g]), |k| {
                [k[2], k[0], k[1], k[3]]
            })
        } else if let Some(o) = o {
            (&self.osgp, bound_prefix(&[Some(o), None, g, None]), |k| {
                [k[1], k[3], k[0], k[2]]
            })
        } else if let Some(g) = g {
            (&self.gspo, vec![g], |k| [k[1], k[2], k[3], k[0]])
        } else {
            return self.spog.iter().copied().collect();
        };
        scan_prefix(index, &prefix).map(unpermute).filter(accept).collect()
    }

    fn quad_of(&self, [s, p, o, g]: Key) -> Quad {
        Quad::new(
            self.terms.resolve(s).clone(),
            self.terms.resolve(p).clone(),
            self.terms.resolve(o).clone(),
            self.terms.resolve(g).clone(),
        )
    }

    /// All quads in SPOG id order.
    pub fn quads(&self) -> impl Iterator<Item = Quad> + '_ {
        self.spog.iter().map(|&k| self.quad_of(k))
    }

    /// Distinct graph names, in id order.
    pub fn graph_names(&self) -> Vec<Term> {
        let mut names = Vec::new();
        let mut last = None;
        for k in &self.gspo {
            if last != Some(k[0]) {
                names.push(self.terms.resolve(k[0]).clone());
                last = Some(k[0]);
            }
        }
        names
    }

    /// Triples of graph `g` as `(s, p, o)`, grouped by subject.
    pub fn graph_triples(&self, g: &Term) -> Vec<(Term, Term, Term)> {
        let Some(gid) = self.terms.get(g) else {
            return Vec::new();
        };
        scan_prefix(&self.gspo, &[gid])
            .map(|k| {
                (
                    self.terms.resolve(k[1]).clone(),
                    self.terms.resolve(k[2]).clone(),
                    self.terms.resolve(k[3]).clone(),
                )
            })
            .collect()
    }

    /// Number of quads in graph `g`.
    pub fn graph_len(&self, g: &Term) -> usize {
        match self.terms.get(g) {
            Some(gid) => scan_prefix(&self.gspo, &[gid]).count(),
            None => 0,
        }
    }

    pub fn has_graph(&self, g: &Term) -> bool {
        match self.terms.get(g) {
            Some(gid) => scan_prefix(&self.gspo, &[gid]).next().is_some(),
            None => false,
        }
    }

    /// Quads as an ordered set of owned terms, independent of interning order.
    pub fn to_set(&self) -> BTreeSet<Quad> {
        self.quads().collect()
    }
}

fn bound_prefix(positions: &[Option<TermId>]) -> Vec<TermId> {
    positions.iter().map_while(|p| *p).collect()
}

fn scan_prefix<'a>(index: &'a BTreeSet<Key>, prefix: &[TermId]) -> impl Iterator<Item = Key> + 'a {
    let mut lo = [0; 4];
    let mut hi = [TermId::MAX; 4];
    lo[..prefix.len()].copy_from_slice(prefix);
    hi[..prefix.len()].copy_from_slice(prefix);
    index.range((Bound::Included(lo), Bound::Included(hi))).copied()
}

impl FromIterator<Quad> for Dataset {
    fn from_iter<I: IntoIterator<Item = Quad>>(iter: I) -> Self {
        let mut d = Dataset::new();
        for q in iter {
            d.insert(&q);
        }
        d
    }
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.to_set() == other.to_set()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str, p: &str, o: &str, g: &str) -> Quad {
        Quad::new(Term::gen(s), Term::gen(p), Term::gen(o), Term::gen(g))
    }

    #[test]
    fn empty_dataset_matches_nothing() {
        let d = Dataset::new();
        assert!(d.match_quads(&QuadPattern::any()).is_empty());
    }

    #[test]
    fn add_quads_counts_fresh_insertions() {
        let mut d = Dataset::new();
        let q1 = q("a0", "R0", "a1", "m0");
        let q2 = q("a1", "R0", "a2", "m0");
        assert_eq!(d.add_quads([&q1, &q1, &q2]), 2);
        assert_eq!(d.add_quads([&q1]), 0);
        let fresh: Vec<Quad> = (0..5).map(|i| q(&format!("b{i}"), "R1", "a0", "m1")).collect();
        assert_eq!(d.add_quads(&fresh), 5);
        assert_eq!(d.len(), 7);
    }

    #[test]
    fn subject_and_graph_patterns() {
        let mut d = Dataset::new();
        let all = [
            q("a0", "R0", "a1", "m0"),
            q("a0", "R1", "a2", "m0"),
            q("a0", "R0", "a3", "m7"),
            q("a1", "R0", "a0", "m7"),
        ];
        d.add_quads(&all);
        let by_s = d.match_quads(&QuadPattern::any().with_s(Term::gen("a0")));
        assert_eq!(by_s.len(), 3);
        let by_g = d.match_quads(&QuadPattern::any().with_g(Term::gen("m7")));
        assert_eq!(by_g.len(), 2);
        assert!(by_g.iter().all(|x| x.g == Term::gen("m7")));
        let by_o = d.match_quads(&QuadPattern::any().with_o(Term::gen("a0")));
        assert_eq!(by_o, vec![all[3].clone()]);
        let absent = d.match_quads(&QuadPattern::any().with_p(Term::gen("nope")));
        assert!(absent.is_empty());
        assert_eq!(d.graph_names().len(), 2);
    }
}
