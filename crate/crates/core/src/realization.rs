//! Finite realizations `(Φ × X)/∼` as simplicial complexes.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::chamber::{thin_building, ChamberError, ChamberSystem};
use crate::complexes::{
    classical_chamber, relative_cohomology_in, ComplexError, ComplexJson, FaceSet, MirroredComplex, SimplicialComplex,
};
use crate::coxeter::{is_spherical, spherical_poset, CoxeterError, CoxeterMatrix, GenSet};
use crate::decomposition::{DecompositionError, ModuleFamily};
use crate::linalg::{GradedAbelianGroup, Rank};

#[derive(Debug, Error)]
pub enum RealizationError {
    #[error("mirror generators {got:?} do not match the building type {expected:?}")]
    GeneratorMismatch { expected: Vec<String>, got: Vec<String> },
    #[error("the realization is not simplicial: two cells share the vertex set {0:?}")]
    NotSimplicial(Vec<String>),
    #[error("the Coxeter group is infinite")]
    InfiniteGroup,
    #[error(transparent)]
    Chamber(#[from] ChamberError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

/// `𝒰(Φ, X)` with the origin of every face.
#[derive(Clone, Debug)]
pub struct RealizedComplex {
    pub complex: SimplicialComplex,
    /// For each face: the face of `X` and the index of the `S(c)`-residue
    /// it was copied along.
    pub origin: Vec<(usize, usize)>,
}

impl RealizedComplex {
    pub fn to_json(&self) -> ComplexJson {
        self.complex.to_json()
    }
}

/// One copy of each face `c` of `X` per `S(c)`-residue. The copy along `R`
/// has as vertices the copies of the vertices of `c` along the residues
/// containing `R`. Vertex names are `vertex@residue`.
pub fn realize(phi: &ChamberSystem, x: &MirroredComplex) -> Result<RealizedComplex, RealizationError> {
    if x.generators() != phi.matrix().labels() {
        return Err(RealizationError::GeneratorMismatch {
            expected: phi.matrix().labels().to_vec(),
            got: x.generators().to_vec(),
        });
    }
    let cx = x.complex();
    let mut ids: HashMap<GenSet, Vec<usize>> = HashMap::new();
    for i in 0..cx.len() {
        ids.entry(x.label(i)).or_insert_with(|| phi.residue_ids(x.label(i)));
    }
    let count = |t: GenSet| ids[&t].iter().max().map_or(0, |&m| m + 1);
    // vertex copies
    let mut vertex_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut names = Vec::new();
    for i in 0..cx.len() {
        if cx.face_dim(i) != 0 {
            continue;
        }
        let v = cx.face(i)[0];
        for r in 0..count(x.label(i)) {
            vertex_index.insert((v, r), names.len());
            names.push(format!("{}@{r}", cx.names()[v]));
        }
    }
    // first chamber of each residue, to locate the coarser residues
    let mut faces = Vec::new();
    let mut origin = Vec::new();
    for i in 0..cx.len() {
        let label = x.label(i);
        let rid = &ids[&label];
        let mut first = vec![usize::MAX; count(label)];
        for (c, &r) in rid.iter().enumerate() {
            if first[r] == usize::MAX {
                first[r] = c;
            }
        }
        for (r, &chamber) in first.iter().enumerate() {
            let mut f: Vec<usize> = cx
                .face(i)
                .iter()
                .map(|&v| {
                    let vi = cx.index_of(&[v]).expect("vertex face");
                    vertex_index[&(v, ids[&x.label(vi)][chamber])]
                })
                .collect();
            f.sort_unstable();
            faces.push(f);
            origin.push((i, r));
        }
    }
    let mut seen: HashMap<&[usize], ()> = HashMap::new();
    for f in &faces {
        if seen.insert(f.as_slice(), ()).is_some() {
            return Err(RealizationError::NotSimplicial(f.iter().map(|&v| names[v].clone()).collect()));
        }
    }
    let complex = SimplicialComplex::from_faces(names, faces.clone())?;
    let mut ordered = vec![(0, 0); complex.len()];
    for (f, o) in faces.iter().zip(origin) {
        ordered[complex.index_of(f).expect("face present")] = o;
    }
    Ok(RealizedComplex { complex, origin: ordered })
}

/// `𝒰(W, Δ)` for finite `W`.
pub fn coxeter_complex(m: &CoxeterMatrix) -> Result<RealizedComplex, RealizationError> {
    if !is_spherical(m, m.all()) {
        return Err(RealizationError::InfiniteGroup);
    }
    let thin = thin_building(m, m.all())?;
    realize(&thin, &classical_chamber(m))
}

/// Integral cohomology of the realized complex.
pub fn realization_cohomology(r: &RealizedComplex) -> GradedAbelianGroup {
    relative_cohomology_in(&r.complex, &FaceSet::none(&r.complex)).expect("the empty set is a subcomplex")
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossTerm {
    #[serde(rename = "T")]
    pub kind: Vec<String>,
    pub relative: GradedAbelianGroup,
    pub multiplicity: Rank,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub realized: GradedAbelianGroup,
    pub formula: GradedAbelianGroup,
    pub terms: Vec<CrossTerm>,
    pub euler_agrees: bool,
    pub pass: bool,
}

/// `⊕_{T∈𝒮} H*(X, X^{S−T}) ⊗ Â^T` with the ranks of the splittings of `Φ`.
pub fn formula_side(
    phi: &ChamberSystem,
    x: &MirroredComplex,
) -> Result<(GradedAbelianGroup, Vec<CrossTerm>), RealizationError> {
    let m = phi.matrix();
    let all = m.all();
    let mut fam = ModuleFamily::new(phi);
    let mut total = GradedAbelianGroup::new();
    let mut terms = Vec::new();
    for t in spherical_poset(m).members().to_vec() {
        let rel = relative_cohomology_in(x.complex(), &x.mirror_union(all.difference(t)).with_empty_face(false))?;
        let mult = Rank::Finite(fam.splitting(t)?.rank());
        total = total.direct_sum(&rel.tensor_free(mult));
        terms.push(CrossTerm { kind: m.names(t), relative: rel, multiplicity: mult });
    }
    Ok((total, terms))
}

/// Compares the cohomology of `𝒰(Φ, X)` with the splitting formula.
pub fn formula_cross_check(phi: &ChamberSystem, x: &MirroredComplex) -> Result<CrossCheck, RealizationError> {
    let realized = realization_cohomology(&realize(phi, x)?);
    let (formula, terms) = formula_side(phi, x)?;
    let euler_agrees = realized.euler_characteristic() == formula.euler_characteristic();
    let pass = realized == formula;
    Ok(CrossCheck { realized, formula, terms, euler_agrees, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chamber::{digon_building, projective_plane_building};
    use crate::complexes::davis_chamber;

    fn parse(s: &str) -> CoxeterMatrix {
        CoxeterMatrix::parse(s).unwrap()
    }

    #[test]
    fn hexagon_and_heawood() {
        let a2 = parse("gens s t\ns t 3");
        let hex = coxeter_complex(&a2).unwrap();
        assert_eq!(hex.complex.f_vector(), vec![6, 6]);
        assert_eq!(realization_cohomology(&hex), GradedAbelianGroup::from_free_ranks(&[1, 1]));
        let fano = projective_plane_building(2).unwrap();
        let heawood = realize(&fano, &classical_chamber(fano.matrix())).unwrap();
        assert_eq!(heawood.complex.f_vector(), vec![14, 21]);
        assert_eq!(realization_cohomology(&heawood), GradedAbelianGroup::from_free_ranks(&[1, 8]));
    }

    #[test]
    fn spheres() {
        let a3 = parse("gens a b c\na b 3\nb c 3");
        let s2 = coxeter_complex(&a3).unwrap();
        assert_eq!(s2.complex.f_vector(), vec![14, 36, 24]);
        assert_eq!(realization_cohomology(&s2), GradedAbelianGroup::from_free_ranks(&[1, 0, 1]));
        let a1 = parse("gens s");
        assert_eq!(realization_cohomology(&coxeter_complex(&a1).unwrap()), GradedAbelianGroup::from_free_ranks(&[2]));
        assert!(matches!(coxeter_complex(&parse("gens s t\ns t inf")), Err(RealizationError::InfiniteGroup)));
    }

    #[test]
    fn point_copies() {
        let fano = projective_plane_building(2).unwrap();
        let point = SimplicialComplex::closure(vec!["p".into()], &[vec![0]]);
        let x = MirroredComplex::from_labels(point, fano.matrix().labels().to_vec(), vec![GenSet::EMPTY]).unwrap();
        assert_eq!(realize(&fano, &x).unwrap().complex.f_vector(), vec![21]);
    }

    #[test]
    fn cross_checks() {
        let a2 = parse("gens s t\ns t 3");
        let thin = thin_building(&a2, a2.all()).unwrap();
        for phi in [thin, digon_building(3, 3).unwrap(), projective_plane_building(2).unwrap()] {
            for x in [classical_chamber(phi.matrix()), davis_chamber(phi.matrix())] {
                let r = formula_cross_check(&phi, &x).unwrap();
                assert!(r.pass, "{r:#?}");
                assert!(r.euler_agrees);
            }
        }
    }

    #[test]
    fn cell_counts() {
        let fano = projective_plane_building(2).unwrap();
        let k = davis_chamber(fano.matrix());
        let r = realize(&fano, &k).unwrap();
        let mut expect = vec![0; 3];
        for i in 0..k.complex().len() {
            expect[k.complex().face_dim(i)] += fano.num_residues(k.label(i));
        }
        assert_eq!(r.complex.f_vector(), expect);
    }
}
