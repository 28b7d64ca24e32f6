use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::model::{Family, Shape};

/// Counts up to this size are allocated exactly; larger ones are drawn.
pub const EXACT_ALLOCATION_LIMIT: usize = 100;

/// Percentage of each normal-form shape within its family.
pub struct AxiomDistribution;

impl AxiomDistribution {
    pub const TBOX: [(Shape, u32); 7] = [
        (Shape::SubClass, 50),
        (Shape::SubClassNeg, 20),
        (Shape::SubHasValue, 10),
        (Shape::SubConj, 5),
        (Shape::SubEx, 5),
        (Shape::SupAll, 5),
        (Shape::SupMax1, 5),
    ];
    pub const ABOX: [(Shape, u32); 5] = [
        (Shape::ConceptAssert, 40),
        (Shape::RoleAssert, 40),
        (Shape::NegRoleAssert, 10),
        (Shape::Same, 5),
        (Shape::Different, 5),
    ];
    pub const RBOX: [(Shape, u32); 5] = [
        (Shape::SubRole, 50),
        (Shape::InvRole, 25),
        (Shape::RoleChain, 10),
        (Shape::DisRole, 10),
        (Shape::IrrRole, 5),
    ];

    pub fn weights(family: Family) -> &'static [(Shape, u32)] {
        match family {
            Family::TBox => &Self::TBOX,
            Family::ABox => &Self::ABOX,
            Family::RBox => &Self::RBOX,
            Family::Eval => &[],
        }
    }

    /// Shapes for `count` axioms of `family`, in random order.
    pub fn allocate<R: Rng + ?Sized>(family: Family, count: usize, rng: &mut R) -> Vec<Shape> {
        let table = Self::weights(family);
        if count == 0 || table.is_empty() {
            return Vec::new();
        }
        let mut shapes = if count <= EXACT_ALLOCATION_LIMIT {
            largest_remainder(table, count)
        } else {
            let index = WeightedIndex::new(table.iter().map(|(_, w)| *w)).expect("positive weights");
            (0..count).map(|_| table[index.sample(rng)].0).collect()
        };
        shapes.shuffle(rng);
        shapes
    }
}

/// Apportions `count` by the largest-remainder method; ties go to the shape
/// listed first.
fn largest_remainder(table: &[(Shape, u32)], count: usize) -> Vec<Shape> {
    let total: u64 = table.iter().map(|(_, w)| u64::from(*w)).sum();
    let mut seats: Vec<(usize, u64)> = table
        .iter()
        .map(|(_, w)| {
            let q = u64::from(*w) * count as u64;
            ((q / total) as usize, q % total)
        })
        .collect();
    let assigned: usize = seats.iter().map(|(s, _)| s).sum();
    let mut order: Vec<usize> = (0..table.len()).collect();
    order.sort_by(|&a, &b| seats[b].1.cmp(&seats[a].1).then(a.cmp(&b)));
    for &i in order.iter().take(count - assigned) {
        seats[i].0 += 1;
    }
    table
        .iter()
        .zip(&seats)
        .flat_map(|((shape, _), (n, _))| std::iter::repeat_n(*shape, *n))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Class,
    Role,
    Individual,
}

/// Index of a signature symbol: half-gaussian with σ = size/4 for classes and
/// roles, uniform for individuals.
pub fn sample_index<R: Rng + ?Sized>(kind: SymbolKind, size: usize, rng: &mut R) -> usize {
    assert!(size > 0, "empty signature");
    match kind {
        SymbolKind::Individual => rng.random_range(0..size),
        SymbolKind::Class | SymbolKind::Role => {
            let z: f64 = rng.sample(StandardNormal);
            let sigma = size as f64 / 4.0;
            ((z.abs() * sigma).floor() as usize).min(size - 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn families_sum_to_one_hundred() {
        for f in [Family::TBox, Family::ABox, Family::RBox] {
            let sum: u32 = AxiomDistribution::weights(f).iter().map(|(_, w)| w).sum();
            assert_eq!(sum, 100);
        }
    }

    #[test]
    fn small_counts_are_apportioned() {
        let shapes = largest_remainder(&AxiomDistribution::TBOX, 10);
        let count = |s| shapes.iter().filter(|x| **x == s).count();
        assert_eq!(shapes.len(), 10);
        assert_eq!(count(Shape::SubClass), 5);
        assert_eq!(count(Shape::SubClassNeg), 2);
        assert_eq!(count(Shape::SubHasValue), 1);
        let shapes = largest_remainder(&AxiomDistribution::RBOX, 5);
        assert_eq!(shapes.len(), 5);
        assert_eq!(shapes.iter().filter(|x| **x == Shape::SubRole).count(), 3);
    }

    #[test]
    fn indices_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            assert!(sample_index(SymbolKind::Role, 10, &mut rng) < 10);
            assert_eq!(sample_index(SymbolKind::Individual, 1, &mut rng), 0);
        }
    }
}
