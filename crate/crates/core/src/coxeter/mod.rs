//! Coxeter systems: matrices, sphericity, the poset of spherical subsets and
//! element enumeration.

mod classify;
mod field;
mod group;
mod matrix;

use thiserror::Error;

pub use classify::{
    classify_component, cosine_gram, cosine_gram_definite, finite_type, irreducible_components, is_spherical,
    leading_minors_until_nonpositive, spherical_order, FiniteType,
};
pub use field::Surd;
pub use group::{enumerate_ball, enumerate_group, BallTable, Element, ElementTable};
pub use matrix::{CoxeterMatrix, GenSet, Order, MAX_RANK};

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Box<CoxeterError> },
    #[error("expected a `gens` line first")]
    MissingGens,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("too many generators ({0}); at most 32 are supported")]
    TooManyGenerators(usize),
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),
    #[error("diagonal entry for `{0}` cannot be set")]
    DiagonalEntry(String),
    #[error("off-diagonal entry must be at least 2, got {0}")]
    OrderTooSmall(u32),
    #[error("conflicting entries for the pair ({0}, {1})")]
    ConflictingEntry(String, String),
    #[error("malformed entry `{0}`")]
    Malformed(String),
    #[error("m = {0} is outside the supported exact set {{2,3,4,5,6,inf}}")]
    UnsupportedOrder(u32),
    #[error("the special subgroup is infinite")]
    NotSpherical,
    #[error("element {0} is not in the table")]
    ElementNotInTable(usize),
}

/// The poset of spherical subsets, ordered by inclusion.
///
/// Members are listed by cardinality, then lexicographically, which is a
/// linear extension of the inclusion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalPoset {
    rank: usize,
    members: Vec<GenSet>,
}

impl SphericalPoset {
    pub fn members(&self) -> &[GenSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, t: GenSet) -> bool {
        self.members.binary_search(&t).is_ok()
    }

    pub fn index_of(&self, t: GenSet) -> Option<usize> {
        self.members.binary_search(&t).ok()
    }

    /// Members `U` with `t ⊆ U`.
    pub fn at_least(&self, t: GenSet) -> impl Iterator<Item = GenSet> + '_ {
        self.members.iter().copied().filter(move |u| t.is_subset(*u))
    }

    /// Members `U` with `t ⊊ U`.
    pub fn above(&self, t: GenSet) -> impl Iterator<Item = GenSet> + '_ {
        self.members.iter().copied().filter(move |u| t.is_proper_subset(*u))
    }

    /// Whether the full generating set is spherical, i.e. `W` is finite.
    pub fn group_is_finite(&self) -> bool {
        self.contains(GenSet::full(self.rank))
    }

    pub fn max_cardinality(&self) -> usize {
        self.members.iter().map(|t| t.len()).max().unwrap_or(0)
    }
}

/// Enumerates the spherical subsets breadth-first from `∅` by single
/// generator extensions.
pub fn spherical_poset(m: &CoxeterMatrix) -> SphericalPoset {
    let mut members = vec![GenSet::EMPTY];
    let mut frontier = vec![GenSet::EMPTY];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for t in frontier {
            for s in 0..m.rank() {
                if t.contains(s) {
                    continue;
                }
                let u = t.with(s);
                if !next.contains(&u) && u.iter().all(|x| members.contains(&u.without(x))) && is_spherical(m, u) {
                    next.push(u);
                }
            }
        }
        next.sort();
        members.extend(next.iter().copied());
        frontier = next;
    }
    members.sort();
    SphericalPoset { rank: m.rank(), members }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_examples() {
        let tri = CoxeterMatrix::parse("gens a b c\na b 3\nb c 3\na c 3").unwrap();
        let p = spherical_poset(&tri);
        assert_eq!(p.len(), 7);
        assert!(!p.group_is_finite());
        let free = CoxeterMatrix::parse("gens a b c\na b inf\nb c inf\na c inf").unwrap();
        assert_eq!(spherical_poset(&free).len(), 4);
        let a2 = CoxeterMatrix::parse("gens a b\na b 3").unwrap();
        let p = spherical_poset(&a2);
        assert_eq!(p.len(), 4);
        assert!(p.group_is_finite());
    }

    #[test]
    fn poset_is_downward_closed_and_agrees_with_brute_force() {
        let m = CoxeterMatrix::parse("gens a b c d\na b 3\nb c 4\nc d inf\na d 5").unwrap();
        let p = spherical_poset(&m);
        let brute: Vec<GenSet> = m.all().subsets().into_iter().filter(|&t| is_spherical(&m, t)).collect();
        assert_eq!(p.members(), brute.as_slice());
        for &t in p.members() {
            for u in t.subsets() {
                assert!(p.contains(u));
            }
        }
    }
}
