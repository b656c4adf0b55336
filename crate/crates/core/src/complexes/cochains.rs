//! Simplicial cochains with constant or mirror-dependent coefficients.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::coxeter::{cosine_gram_definite, spherical_poset, CoxeterError, CoxeterMatrix, GenSet, SphericalPoset};
use crate::linalg::{CochainComplex, GradedAbelianGroup, GroupEntry, SparseIntMatrix};

use super::mirrored::{davis_chamber_of, nerve_of, MirroredComplex};
use super::simplicial::{FaceSet, SimplicialComplex};
use super::ComplexError;

/// A family of free abelian groups `A^T`, with maps `A^U → A^T` for `T ⊆ U`.
pub trait CoefficientSystem {
    fn rank(&self, t: GenSet) -> usize;

    /// Nonzero entries `(row, col, value)` of the map `A^big → A^small`.
    fn inclusion(&self, big: GenSet, small: GenSet) -> Vec<(usize, usize, BigInt)>;
}

/// `ℤ` on every cell, identity maps.
pub struct IntegerCoefficients;

impl CoefficientSystem for IntegerCoefficients {
    fn rank(&self, _t: GenSet) -> usize {
        1
    }

    fn inclusion(&self, _big: GenSet, _small: GenSet) -> Vec<(usize, usize, BigInt)> {
        vec![(0, 0, BigInt::one())]
    }
}

/// Cochains on the faces in `cells` but not in `excluded`, with coefficients
/// `A^{S(c)}` on cell `c`. Degrees start at `−1`, the empty face.
///
/// `excluded` must be closed (a subcomplex), so that what remains is closed
/// under passing to cofaces within `cells`.
pub fn coefficient_cochains(
    x: &MirroredComplex,
    cells: &FaceSet,
    excluded: &FaceSet,
    coeff: &dyn CoefficientSystem,
) -> CochainComplex {
    let complex = x.complex();
    let label = |c: Option<usize>| c.map_or_else(|| x.empty_label(), |i| x.label(i));
    build(complex, cells, excluded, &label, coeff)
}

/// Inclusion entries `(row, col, value)` between two coefficient groups.
type Block = Vec<(usize, usize, BigInt)>;

fn build(
    complex: &SimplicialComplex,
    cells: &FaceSet,
    excluded: &FaceSet,
    label: &dyn Fn(Option<usize>) -> GenSet,
    coeff: &dyn CoefficientSystem,
) -> CochainComplex {
    let top = complex.dim().max(-1);
    let ndeg = (top + 2) as usize; // degrees −1..=top
                                   // offset of each live cell inside its degree
    let mut offset: HashMap<Option<usize>, usize> = HashMap::new();
    let mut dims = vec![0usize; ndeg];
    if cells.has_empty_face() && !excluded.has_empty_face() {
        offset.insert(None, 0);
        dims[0] = coeff.rank(label(None));
    }
    for i in 0..complex.len() {
        if cells.contains(i) && !excluded.contains(i) {
            let k = complex.face_dim(i) + 1;
            offset.insert(Some(i), dims[k]);
            dims[k] += coeff.rank(label(Some(i)));
        }
    }
    let mut diffs: Vec<SparseIntMatrix> = (0..ndeg - 1).map(|k| SparseIntMatrix::zeros(dims[k + 1], dims[k])).collect();
    let mut cache: HashMap<(GenSet, GenSet), Block> = HashMap::new();
    let mut add_block = |diffs: &mut Vec<SparseIntMatrix>,
                         k: usize,
                         row0: usize,
                         col0: usize,
                         big: GenSet,
                         small: GenSet,
                         sign: bool| {
        let entries = cache.entry((big, small)).or_insert_with(|| coeff.inclusion(big, small));
        for (r, c, v) in entries.iter() {
            let v = if sign { -v.clone() } else { v.clone() };
            diffs[k].add(row0 + r, col0 + c, v);
        }
    };
    for i in 0..complex.len() {
        let Some(&row0) = offset.get(&Some(i)) else { continue };
        let k = complex.face_dim(i) + 1; // degree index of the coface
        let small = label(Some(i));
        if k == 1 {
            if let Some(&col0) = offset.get(&None) {
                add_block(&mut diffs, 0, row0, col0, label(None), small, false);
            }
            continue;
        }
        for (pos, &j) in complex.facets(i).iter().enumerate() {
            if let Some(&col0) = offset.get(&Some(j)) {
                add_block(&mut diffs, k - 1, row0, col0, label(Some(j)), small, pos % 2 == 1);
            }
        }
    }
    CochainComplex::new(-1, dims, diffs).expect("simplicial coboundary squares to zero")
}

/// `H*(X, A)` with integer coefficients, for a subcomplex `A` given as a
/// face set of `X`. Unreduced: `H*(X, ∅) = H*(X)`.
pub fn relative_cohomology_in(x: &SimplicialComplex, a: &FaceSet) -> Result<GradedAbelianGroup, ComplexError> {
    if !a.is_closed(x) {
        return Err(ComplexError::NotSubcomplex);
    }
    let cells = FaceSet::all(x).with_empty_face(false);
    let a = a.clone().with_empty_face(false);
    Ok(build(x, &cells, &a, &|_| GenSet::EMPTY, &IntegerCoefficients).cohomology())
}

/// `H*(X, A)` where `A` is a complex whose vertices are named in `X`.
pub fn relative_cohomology(x: &SimplicialComplex, a: &SimplicialComplex) -> Result<GradedAbelianGroup, ComplexError> {
    let mut members = vec![false; x.len()];
    for f in a.faces() {
        let mut g = Vec::with_capacity(f.len());
        for &v in f {
            let name = &a.names()[v];
            g.push(x.vertex_index(name).ok_or_else(|| ComplexError::UnknownVertex(name.clone()))?);
        }
        g.sort_unstable();
        members[x.index_of(&g).ok_or(ComplexError::NotSubcomplex)?] = true;
    }
    let set = FaceSet::from_predicate(x, false, |i| members[i]);
    relative_cohomology_in(x, &set)
}

/// Reduced cohomology, with the empty complex flagged rather than given a
/// group in degree `−1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedCohomology {
    pub empty_complex: bool,
    pub groups: GradedAbelianGroup,
}

impl ReducedCohomology {
    /// The groups with the convention `H̃^{−1}(∅) = ℤ` applied.
    pub fn with_empty_convention(&self) -> GradedAbelianGroup {
        if self.empty_complex {
            GradedAbelianGroup::integers_in(-1)
        } else {
            self.groups.clone()
        }
    }
}

/// Reduced cohomology of the subcomplex `a` of `x`.
pub fn reduced_cohomology_in(x: &SimplicialComplex, a: &FaceSet) -> Result<ReducedCohomology, ComplexError> {
    if !a.is_closed(x) {
        return Err(ComplexError::NotSubcomplex);
    }
    if a.is_empty() {
        return Ok(ReducedCohomology { empty_complex: true, groups: GradedAbelianGroup::new() });
    }
    let cells = a.clone().with_empty_face(true);
    let none = FaceSet::none(x);
    let groups = build(x, &cells, &none, &|_| GenSet::EMPTY, &IntegerCoefficients).cohomology();
    Ok(ReducedCohomology { empty_complex: false, groups })
}

/// For each spherical `T`, the reduced cohomology of `K^{S−T}`.
pub fn punctured_nerve_homology(m: &CoxeterMatrix) -> BTreeMap<GenSet, ReducedCohomology> {
    let poset = spherical_poset(m);
    punctured_nerve_homology_of(m, &poset)
}

pub(crate) fn punctured_nerve_homology_of(
    m: &CoxeterMatrix,
    poset: &SphericalPoset,
) -> BTreeMap<GenSet, ReducedCohomology> {
    let k = davis_chamber_of(m, poset);
    poset
        .members()
        .iter()
        .map(|&t| {
            let sub = k.mirror_union(m.all().difference(t));
            (t, reduced_cohomology_in(k.complex(), &sub).expect("mirror unions are subcomplexes"))
        })
        .collect()
}

/// `H*(K, K^{S−T})` for every spherical `T`.
pub fn davis_relative_groups(m: &CoxeterMatrix, poset: &SphericalPoset) -> BTreeMap<GenSet, GradedAbelianGroup> {
    let k = davis_chamber_of(m, poset);
    relative_groups_over(&k, poset, m.all())
}

/// `H*(X, X^{S−T})` for every `T` in the poset.
pub fn relative_groups_over(
    x: &MirroredComplex,
    poset: &SphericalPoset,
    all: GenSet,
) -> BTreeMap<GenSet, GradedAbelianGroup> {
    poset
        .members()
        .iter()
        .map(|&t| {
            let sub = x.mirror_union(all.difference(t));
            (t, relative_cohomology_in(x.complex(), &sub).expect("mirror unions are subcomplexes"))
        })
        .collect()
}

/// Checks that every clique of the nerve's 1-skeleton spans a face exactly
/// when its cosine Gram matrix is positive definite.
pub fn metric_flag_check(m: &CoxeterMatrix) -> Result<bool, CoxeterError> {
    let poset = spherical_poset(m);
    let l = nerve_of(m, &poset);
    let n = m.rank();
    let mut ok = true;
    for bits in 1u64..(1u64 << n) {
        let t = GenSet::from_bits(bits as u32);
        let idx = t.indices();
        let clique = idx.iter().enumerate().all(|(a, &i)| idx[a + 1..].iter().all(|&j| m.m(i, j).is_finite()));
        if !clique {
            continue;
        }
        let in_l = l.index_of(&idx).is_some();
        ok &= in_l == cosine_gram_definite(m, t)?;
    }
    Ok(ok)
}

/// Integer cohomology of the coefficient-free mirrored pair `(X, X^U)`,
/// with the empty face counted as in [`coefficient_cochains`].
pub fn augmented_pair_cohomology(x: &MirroredComplex, u: GenSet) -> GradedAbelianGroup {
    coefficient_cochains(x, &x.everything(), &x.mirror_union(u), &IntegerCoefficients).cohomology()
}

/// Whether `group` is `ℤ^rank` in degree `k` only.
pub fn is_free_in(group: &GradedAbelianGroup, k: i64, rank: usize) -> bool {
    group.is_concentrated_in(k) && group.get(k) == GroupEntry::free(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{classical_chamber, davis_chamber};

    fn parse(s: &str) -> CoxeterMatrix {
        CoxeterMatrix::parse(s).unwrap()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn relative_examples() {
        let tri = SimplicialComplex::closure(names(3), &[vec![0, 1, 2]]);
        let bd = SimplicialComplex::closure(names(3), &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let h = relative_cohomology(&tri, &bd).unwrap();
        assert!(is_free_in(&h, 2, 1));
        let h = relative_cohomology(&bd, &SimplicialComplex::empty()).unwrap();
        assert_eq!(h, GradedAbelianGroup::from_free_ranks(&[1, 1]));

        let free = parse("gens a b c\na b inf\nb c inf\na c inf");
        let k = davis_chamber(&free);
        let leaves = k.mirror_union(free.all());
        let h = relative_cohomology_in(k.complex(), &leaves).unwrap();
        assert!(is_free_in(&h, 1, 2));
        // cone: same cohomology as a point
        let h = relative_cohomology_in(k.complex(), &FaceSet::none(k.complex())).unwrap();
        assert!(is_free_in(&h, 0, 1));
    }

    #[test]
    fn rejects_non_subcomplex() {
        let tri = SimplicialComplex::closure(names(3), &[vec![0, 1, 2]]);
        let edge_only = FaceSet::from_predicate(&tri, false, |i| tri.face(i) == [0, 1]);
        assert!(matches!(relative_cohomology_in(&tri, &edge_only), Err(ComplexError::NotSubcomplex)));
    }

    #[test]
    fn punctured_examples() {
        let free = parse("gens a b c\na b inf\nb c inf\na c inf");
        let p = punctured_nerve_homology(&free);
        assert!(is_free_in(&p[&GenSet::EMPTY].groups, 0, 2));
        assert!(is_free_in(&p[&GenSet::singleton(0)].groups, 0, 1));
        let tri = parse("gens a b c\na b 3\nb c 3\na c 3");
        let p = punctured_nerve_homology(&tri);
        assert!(is_free_in(&p[&GenSet::EMPTY].groups, 1, 1));
        assert!(p[&GenSet::singleton(0)].groups.is_zero());
        let a2 = parse("gens s t\ns t 3");
        let p = punctured_nerve_homology(&a2);
        let top = &p[&a2.all()];
        assert!(top.empty_complex);
        assert_eq!(top.with_empty_convention(), GradedAbelianGroup::integers_in(-1));
    }

    #[test]
    fn metric_flag_examples() {
        assert!(metric_flag_check(&parse("gens a b c\na b 3\nb c 3\na c 3")).unwrap());
        assert!(metric_flag_check(&parse("gens a b c d\na b inf\nb c 2\nc d inf\na d 2\na c 2")).unwrap());
        assert!(metric_flag_check(&parse("gens a b c\na b 3\nb c 4")).unwrap());
        assert!(metric_flag_check(&parse("gens a b\na b 7")).is_err());
    }

    #[test]
    fn augmented_pairs() {
        let a2 = parse("gens s t\ns t 3");
        let d = classical_chamber(&a2);
        // reduced cohomology of an edge vanishes; relative to its endpoints it is Z in degree 1
        assert!(augmented_pair_cohomology(&d, GenSet::EMPTY).is_zero());
        assert!(is_free_in(&augmented_pair_cohomology(&d, a2.all()), 1, 1));
    }
}
