//! Mirror structures, the nerve and the two standard chambers.

use serde::Serialize;

use crate::coxeter::{spherical_poset, CoxeterMatrix, GenSet, SphericalPoset};

use super::simplicial::{flag_complex, ComplexJson, FaceSet, Poset, SimplicialComplex};
use super::ComplexError;

/// A simplicial complex with a mirror `X_s` for every generator.
///
/// Stored as the label `S(c) = { s : c ⊆ X_s }` of each face; the empty face
/// carries the label `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirroredComplex {
    complex: SimplicialComplex,
    generators: Vec<String>,
    labels: Vec<GenSet>,
}

impl MirroredComplex {
    /// Builds from one subcomplex per generator, each given as a face list in
    /// vertex indices of `complex`.
    pub fn from_mirrors(
        complex: SimplicialComplex,
        generators: Vec<String>,
        mirrors: &[Vec<Vec<usize>>],
    ) -> Result<Self, ComplexError> {
        if mirrors.len() != generators.len() {
            return Err(ComplexError::MirrorCount { expected: generators.len(), got: mirrors.len() });
        }
        let mut labels = vec![GenSet::EMPTY; complex.len()];
        for (s, faces) in mirrors.iter().enumerate() {
            let mut set = vec![false; complex.len()];
            for f in faces {
                let mut f = f.clone();
                f.sort_unstable();
                let i = complex.index_of(&f).ok_or(ComplexError::NotAFace)?;
                set[i] = true;
            }
            for i in 0..complex.len() {
                if set[i] {
                    if complex.facets(i).iter().any(|&j| !set[j]) {
                        return Err(ComplexError::MirrorNotSubcomplex(generators[s].clone()));
                    }
                    labels[i] = labels[i].with(s);
                }
            }
        }
        Ok(MirroredComplex { complex, generators, labels })
    }

    /// Builds from face labels, which must shrink as faces grow.
    pub fn from_labels(
        complex: SimplicialComplex,
        generators: Vec<String>,
        labels: Vec<GenSet>,
    ) -> Result<Self, ComplexError> {
        assert_eq!(labels.len(), complex.len(), "one label per face");
        for i in 0..complex.len() {
            for &j in complex.facets(i) {
                if !labels[i].is_subset(labels[j]) {
                    return Err(ComplexError::LabelsNotMonotone);
                }
            }
        }
        Ok(MirroredComplex { complex, generators, labels })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// `S(c)` for face `i`.
    pub fn label(&self, i: usize) -> GenSet {
        self.labels[i]
    }

    pub fn labels(&self) -> &[GenSet] {
        &self.labels
    }

    /// Label of the empty face.
    pub fn empty_label(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    /// The whole complex, with the empty face.
    pub fn everything(&self) -> FaceSet {
        FaceSet::all(&self.complex)
    }

    pub fn mirror(&self, s: usize) -> FaceSet {
        FaceSet::from_predicate(&self.complex, true, |i| self.labels[i].contains(s))
    }

    /// `X^U`, the union of the mirrors in `U`; `X^∅` is empty and is the only
    /// one without the empty face.
    pub fn mirror_union(&self, u: GenSet) -> FaceSet {
        FaceSet::from_predicate(&self.complex, !u.is_empty(), |i| !self.labels[i].intersection(u).is_empty())
    }

    /// `X_T`, the intersection of the mirrors in `T`; `X_∅ = X`.
    pub fn mirror_intersection(&self, t: GenSet) -> FaceSet {
        FaceSet::from_predicate(&self.complex, true, |i| t.is_subset(self.labels[i]))
    }

    pub fn to_json(&self) -> MirroredJson {
        let mirrors = (0..self.rank())
            .map(|s| {
                let faces = self.mirror(s).to_complex(&self.complex).named_faces();
                (self.generators[s].clone(), faces)
            })
            .collect();
        MirroredJson { complex: self.complex.to_json(), mirrors }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MirroredJson {
    #[serde(flatten)]
    pub complex: ComplexJson,
    pub mirrors: std::collections::BTreeMap<String, Vec<Vec<String>>>,
}

/// The nerve: vertices `S`, faces the nonempty spherical subsets.
pub fn nerve(m: &CoxeterMatrix) -> SimplicialComplex {
    nerve_of(m, &spherical_poset(m))
}

pub(crate) fn nerve_of(m: &CoxeterMatrix, poset: &SphericalPoset) -> SimplicialComplex {
    let faces = poset.members().iter().filter(|t| !t.is_empty()).map(|t| t.indices()).collect();
    SimplicialComplex::from_faces(m.labels().to_vec(), faces).expect("spherical subsets are downward closed")
}

/// The Davis chamber: the flag complex of the spherical poset (with `∅`),
/// where `K_s` is spanned by the members containing `s`.
///
/// Vertices follow the poset's canonical order, so every chain is listed
/// from its smallest member.
pub fn davis_chamber(m: &CoxeterMatrix) -> MirroredComplex {
    davis_chamber_of(m, &spherical_poset(m))
}

pub(crate) fn davis_chamber_of(m: &CoxeterMatrix, poset: &SphericalPoset) -> MirroredComplex {
    let members = poset.members();
    let names = members.iter().map(|&t| m.format_subset(t)).collect();
    let p = Poset::new(names, |i, j| members[i].is_subset(members[j]));
    let complex = flag_complex(&p);
    let labels = complex.faces().iter().map(|f| members[f[0]]).collect();
    MirroredComplex::from_labels(complex, m.labels().to_vec(), labels).expect("chain minima shrink")
}

/// The classical chamber: a simplex with vertices indexed by `S`, whose
/// mirror `Δ_s` is the face opposite vertex `s`. A face `F` gets the label
/// `S − F`.
pub fn classical_chamber(m: &CoxeterMatrix) -> MirroredComplex {
    let n = m.rank();
    let complex = SimplicialComplex::closure(m.labels().to_vec(), &[(0..n).collect()]);
    let full = GenSet::full(n);
    let labels = complex.faces().iter().map(|f| full.difference(GenSet::from_indices(f.iter().copied()))).collect();
    MirroredComplex::from_labels(complex, m.labels().to_vec(), labels).expect("complements shrink")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> CoxeterMatrix {
        CoxeterMatrix::parse(s).unwrap()
    }

    #[test]
    fn nerves() {
        let free = parse("gens a b c\na b inf\nb c inf\na c inf");
        assert_eq!(nerve(&free).f_vector(), vec![3]);
        let tri = parse("gens a b c\na b 3\nb c 3\na c 3");
        assert_eq!(nerve(&tri).f_vector(), vec![3, 3]);
        let a3 = parse("gens a b c\na b 3\nb c 3");
        assert_eq!(nerve(&a3).f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn davis_chambers() {
        let free = parse("gens a b c\na b inf\nb c inf\na c inf");
        let k = davis_chamber(&free);
        assert_eq!(k.complex().f_vector(), vec![4, 3]);
        for s in 0..3 {
            let leaf = k.mirror(s).to_complex(k.complex());
            assert_eq!(leaf.names(), &[free.format_subset(GenSet::singleton(s))]);
        }
        let tri = parse("gens a b c\na b 3\nb c 3\na c 3");
        let k = davis_chamber(&tri);
        assert_eq!(k.complex().f_vector(), vec![7, 12, 6]);
        for s in 0..3 {
            assert_eq!(k.mirror(s).to_complex(k.complex()).f_vector(), vec![3, 2]);
        }
        let a1 = parse("gens a");
        let k = davis_chamber(&a1);
        assert_eq!(k.complex().f_vector(), vec![2, 1]);
        assert_eq!(k.mirror(0).to_complex(k.complex()).names(), &["{a}".to_string()]);
    }

    #[test]
    fn mirror_operations() {
        let free = parse("gens a b c\na b inf\nb c inf\na c inf");
        let k = davis_chamber(&free);
        let leaves = k.mirror_union(free.all());
        assert_eq!(leaves.len(), 3);
        assert!(k.mirror_union(GenSet::EMPTY).is_empty());
        assert!(!k.mirror_union(GenSet::EMPTY).has_empty_face());
        assert_eq!(k.mirror_intersection(GenSet::EMPTY), k.everything());
        let sub = k.mirror_union(GenSet::singleton(0));
        assert!(sub.is_subset(&leaves));
        assert!(k.mirror_intersection(free.all()).is_subset(&k.mirror_intersection(GenSet::singleton(1))));
    }

    #[test]
    fn classical_labels() {
        let a2 = parse("gens s t\ns t 3");
        let d = classical_chamber(&a2);
        assert_eq!(d.complex().f_vector(), vec![2, 1]);
        assert_eq!(d.label(0), GenSet::singleton(1));
        assert_eq!(d.label(2), GenSet::EMPTY);
    }
}
