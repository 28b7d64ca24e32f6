use std::fmt;

use rustc_hash::FxHashMap;

use crate::rdf::{Interner, TermId};

/// Symbol table shared by a fact base and the rules evaluated over it.
pub type SymbolTable = Interner;

/// Relations of the calculus. The last argument of every relation is the
/// context in which the fact holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Inst,
    Triple,
    SubClass,
    SubClassNeg,
    SubHasValue,
    SubConj,
    SubEx,
    SupAll,
    SupMax1,
    SubRole,
    InvRole,
    SubRChain,
    DisRole,
    IrrRole,
    NTriple,
    Eq,
    Neq,
    SubEval,
    SubEvalR,
    Unsat,
}

impl Relation {
    pub const COUNT: usize = 20;

    pub const ALL: [Relation; Relation::COUNT] = [
        Relation::Inst,
        Relation::Triple,
        Relation::SubClass,
        Relation::SubClassNeg,
        Relation::SubHasValue,
        Relation::SubConj,
        Relation::SubEx,
        Relation::SupAll,
        Relation::SupMax1,
        Relation::SubRole,
        Relation::InvRole,
        Relation::SubRChain,
        Relation::DisRole,
        Relation::IrrRole,
        Relation::NTriple,
        Relation::Eq,
        Relation::Neq,
        Relation::SubEval,
        Relation::SubEvalR,
        Relation::Unsat,
    ];

    pub fn arity(self) -> usize {
        use Relation::*;
        match self {
            Unsat => 1,
            IrrRole => 2,
            Inst | SubClass | SubClassNeg | SubRole | InvRole | DisRole | Eq | Neq => 3,
            Triple | SubHasValue | SubConj | SubEx | SupAll | SupMax1 | SubRChain | NTriple | SubEval | SubEvalR => 4,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        use Relation::*;
        match self {
            Inst => "inst",
            Triple => "triple",
            SubClass => "subClass",
            SubClassNeg => "subClassNeg",
            SubHasValue => "subHasValue",
            SubConj => "subConj",
            SubEx => "subEx",
            SupAll => "supAll",
            SupMax1 => "supMax1",
            SubRole => "subRole",
            InvRole => "invRole",
            SubRChain => "subRChain",
            DisRole => "disRole",
            IrrRole => "irrRole",
            NTriple => "ntriple",
            Eq => "eq",
            Neq => "neq",
            SubEval => "subEval",
            SubEvalR => "subEvalR",
            Unsat => "unsat",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Argument tuple; positions past the relation's arity are zero.
pub type Tuple = [TermId; 4];

/// A ground atom of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fact {
    pub relation: Relation,
    pub args: Tuple,
}

impl Fact {
    pub fn new(relation: Relation, args: &[TermId]) -> Self {
        assert_eq!(args.len(), relation.arity(), "arity mismatch for {relation}");
        let mut tuple = [0; 4];
        tuple[..args.len()].copy_from_slice(args);
        Fact { relation, args: tuple }
    }

    pub fn args(&self) -> &[TermId] {
        &self.args[..self.relation.arity()]
    }

    /// The context argument.
    pub fn ctx(&self) -> TermId {
        self.args[self.relation.arity() - 1]
    }

    pub fn display<'a>(&'a self, syms: &'a SymbolTable) -> impl fmt::Display + 'a {
        FactDisplay { fact: self, syms }
    }
}

struct FactDisplay<'a> {
    fact: &'a Fact,
    syms: &'a SymbolTable,
}

impl fmt::Display for FactDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.fact.relation)?;
        for (i, a) in self.fact.args().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.syms.resolve(*a))?;
        }
        f.write_str(")")
    }
}

/// Bitmask over argument positions (bit `i` set = position `i` bound).
pub type Mask = u8;

pub fn project(args: &Tuple, mask: Mask) -> Tuple {
    let mut key = [0; 4];
    for (i, k) in key.iter_mut().enumerate() {
        if mask & (1 << i) != 0 {
            *k = args[i];
        }
    }
    key
}

#[derive(Debug, Clone, Default)]
struct RelationStore {
    rows: Vec<Tuple>,
    asserted: Vec<bool>,
    positions: FxHashMap<Tuple, u32>,
    indexes: FxHashMap<Mask, FxHashMap<Tuple, Vec<u32>>>,
}

impl RelationStore {
    fn insert(&mut self, args: Tuple, asserted: bool) -> bool {
        if let Some(&row) = self.positions.get(&args) {
            if asserted {
                self.asserted[row as usize] = true;
            }
            return false;
        }
        let row = u32::try_from(self.rows.len()).expect("fact row space exhausted");
        self.rows.push(args);
        self.asserted.push(asserted);
        self.positions.insert(args, row);
        for (&mask, index) in self.indexes.iter_mut() {
            index.entry(project(&args, mask)).or_default().push(row);
        }
        true
    }

    fn ensure_index(&mut self, mask: Mask) {
        if mask == 0 || self.indexes.contains_key(&mask) {
            return;
        }
        let mut index: FxHashMap<Tuple, Vec<u32>> = FxHashMap::default();
        for (row, args) in self.rows.iter().enumerate() {
            index.entry(project(args, mask)).or_default().push(row as u32);
        }
        self.indexes.insert(mask, index);
    }
}

/// Set of facts with per-relation row storage and hash indexes on argument
/// subsets.
///
/// Rows are append-only, so the rows added since a given snapshot of
/// [`FactBase::row_counts`] form the delta of a semi-naive round.
#[derive(Debug, Clone)]
pub struct FactBase {
    relations: Vec<RelationStore>,
}

impl Default for FactBase {
    fn default() -> Self {
        FactBase {
            relations: vec![RelationStore::default(); Relation::COUNT],
        }
    }
}

impl FactBase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a fact, returning whether it was absent. Inserting an asserted
    /// copy of a derived fact reclassifies it as asserted.
    pub fn insert(&mut self, fact: Fact, asserted: bool) -> bool {
        self.relations[fact.relation.index()].insert(fact.args, asserted)
    }

    pub fn insert_asserted(&mut self, fact: Fact) -> bool {
        self.insert(fact, true)
    }

    pub fn contains(&self, fact: &Fact) -> bool {
        self.relations[fact.relation.index()].positions.contains_key(&fact.args)
    }

    pub fn is_asserted(&self, fact: &Fact) -> Option<bool> {
        let store = &self.relations[fact.relation.index()];
        store.positions.get(&fact.args).map(|&row| store.asserted[row as usize])
    }

    pub fn len(&self) -> usize {
        self.relations.iter().map(|r| r.rows.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn asserted_count(&self) -> usize {
        self.relations
            .iter()
            .map(|r| r.asserted.iter().filter(|a| **a).count())
            .sum()
    }

    pub fn relation_len(&self, rel: Relation) -> usize {
        self.relations[rel.index()].rows.len()
    }

    pub fn rows(&self, rel: Relation) -> &[Tuple] {
        &self.relations[rel.index()].rows
    }

    pub fn row(&self, rel: Relation, row: u32) -> &Tuple {
        &self.relations[rel.index()].rows[row as usize]
    }

    pub fn row_counts(&self) -> [usize; Relation::COUNT] {
        let mut counts = [0; Relation::COUNT];
        for (c, r) in counts.iter_mut().zip(&self.relations) {
            *c = r.rows.len();
        }
        counts
    }

    /// Builds (or keeps) the index of `rel` keyed on the positions in `mask`.
    pub fn ensure_index(&mut self, rel: Relation, mask: Mask) {
        self.relations[rel.index()].ensure_index(mask);
    }

    /// Row ids of `rel` whose positions in `mask` equal those of `key`.
    ///
    /// Panics if the index was not built with [`FactBase::ensure_index`].
    pub fn lookup(&self, rel: Relation, mask: Mask, key: &Tuple) -> &[u32] {
        let index = self.relations[rel.index()]
            .indexes
            .get(&mask)
            .unwrap_or_else(|| panic!("no index for {rel} on mask {mask:#06b}"));
        index.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Fact, bool)> + '_ {
        Relation::ALL.iter().flat_map(move |&rel| {
            let store = &self.relations[rel.index()];
            store.rows.iter().zip(&store.asserted).map(move |(args, asserted)| {
                (
                    Fact {
                        relation: rel,
                        args: *args,
                    },
                    *asserted,
                )
            })
        })
    }

    pub fn facts(&self) -> impl Iterator<Item = Fact> + '_ {
        self.iter().map(|(f, _)| f)
    }

    pub fn inferred(&self) -> impl Iterator<Item = Fact> + '_ {
        self.iter().filter(|(_, a)| !a).map(|(f, _)| f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn set_semantics_and_reclassification() {
        let mut fb = FactBase::new();
        let f = Fact::new(Relation::Inst, &[1, 2, 3]);
        assert!(fb.insert(f, false));
        assert!(!fb.insert(f, false));
        assert_eq!(fb.asserted_count(), 0);
        assert!(!fb.insert_asserted(f));
        assert_eq!(fb.asserted_count(), 1);
        assert_eq!(fb.len(), 1);
        assert_eq!(f.ctx(), 3);
    }

    #[test]
    #[should_panic(expected = "arity mismatch")]
    fn arity_is_checked() {
        Fact::new(Relation::Triple, &[1, 2, 3]);
    }

    proptest! {
        #[test]
        fn index_lookup_agrees_with_scan(
            rows in proptest::collection::vec((0u32..6, 0u32..6, 0u32..6, 0u32..3), 0..200),
            mask in 1u8..16,
            probe in (0u32..6, 0u32..6, 0u32..6, 0u32..3),
        ) {
            let mut fb = FactBase::new();
            // half the rows before the index exists, half after
            let (before, after) = rows.split_at(rows.len() / 2);
            for r in before {
                fb.insert(Fact::new(Relation::Triple, &[r.0, r.1, r.2, r.3]), true);
            }
            fb.ensure_index(Relation::Triple, mask);
            for r in after {
                fb.insert(Fact::new(Relation::Triple, &[r.0, r.1, r.2, r.3]), true);
            }
            let key = project(&[probe.0, probe.1, probe.2, probe.3], mask);
            let mut got: Vec<Tuple> = fb
                .lookup(Relation::Triple, mask, &key)
                .iter()
                .map(|&i| *fb.row(Relation::Triple, i))
                .collect();
            let mut want: Vec<Tuple> = fb
                .rows(Relation::Triple)
                .iter()
                .filter(|t| project(t, mask) == key)
                .copied()
                .collect();
            got.sort();
            want.sort();
            prop_assert_eq!(got, want);
        }
    }
}
