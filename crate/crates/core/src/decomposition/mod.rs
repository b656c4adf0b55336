//! Residue modules `A^T`, the quotients `D^T`, their splittings and the
//! cochain complex with coefficients in the residue system.

mod filtration;
mod sigma;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::chamber::ChamberSystem;
use crate::complexes::{coefficient_cochains, CoefficientSystem, FaceSet, MirroredComplex};
use crate::coxeter::{spherical_poset, GenSet, SphericalPoset};
use crate::linalg::{serialize_bigint, GradedAbelianGroup, GroupEntry, IntMatrix, LinalgError, SubmoduleBasis};

pub use filtration::{filtration_ranks, Filtration, FiltrationReading};
pub use sigma::{sigma_formula_check, SigmaReport, SigmaRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("{0} is not spherical")]
    NotSpherical(String),
    #[error("D^{kind} has torsion {torsion:?}")]
    Torsion { kind: String, torsion: Vec<BigInt> },
    #[error("splittings over {kind} have total rank {got}, expected {expected}")]
    RankMismatch { kind: String, expected: usize, got: usize },
    #[error("mirror generators {got:?} do not match the building type {expected:?}")]
    GeneratorMismatch { expected: Vec<String>, got: Vec<String> },
    #[error("not a subcomplex")]
    NotSubcomplex,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `A^T`: functions on chambers constant on `T`-residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueModule {
    pub kind: GenSet,
    /// The `T`-residues, each sorted, listed by smallest chamber.
    pub residues: Vec<Vec<usize>>,
    pub basis: SubmoduleBasis,
}

impl ResidueModule {
    pub fn rank(&self) -> usize {
        self.residues.len()
    }

    /// The 0/1 indicator of each residue, in residue order.
    pub fn indicators(&self) -> Vec<Vec<BigInt>> {
        let n = self.basis.ambient();
        self.residues.iter().map(|r| indicator(n, r)).collect()
    }
}

fn indicator(n: usize, members: &[usize]) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); n];
    for &c in members {
        v[c] = BigInt::one();
    }
    v
}

/// All the modules attached to one chamber system, computed on demand.
///
/// Every module lives in `ℤ^Φ` with the chamber order of the constructor.
pub struct ModuleFamily<'a> {
    phi: &'a ChamberSystem,
    poset: SphericalPoset,
    residue: BTreeMap<GenSet, ResidueModule>,
    above: BTreeMap<GenSet, SubmoduleBasis>,
    split: BTreeMap<GenSet, SubmoduleBasis>,
}

impl<'a> ModuleFamily<'a> {
    pub fn new(phi: &'a ChamberSystem) -> Self {
        let poset = spherical_poset(phi.matrix());
        ModuleFamily { phi, poset, residue: BTreeMap::new(), above: BTreeMap::new(), split: BTreeMap::new() }
    }

    pub fn building(&self) -> &ChamberSystem {
        self.phi
    }

    pub fn poset(&self) -> &SphericalPoset {
        &self.poset
    }

    /// `A^T`; the zero module when `T` is not spherical.
    pub fn residue_module(&mut self, t: GenSet) -> &ResidueModule {
        if !self.residue.contains_key(&t) {
            let n = self.phi.num_chambers();
            let module = if self.poset.contains(t) {
                let residues: Vec<Vec<usize>> = self.phi.residues(t).into_iter().map(|r| r.members).collect();
                let gens: Vec<Vec<BigInt>> = residues.iter().map(|r| indicator(n, r)).collect();
                ResidueModule { kind: t, basis: SubmoduleBasis::span(n, &gens), residues }
            } else {
                ResidueModule { kind: t, residues: Vec::new(), basis: SubmoduleBasis::zero(n) }
            };
            self.residue.insert(t, module);
        }
        &self.residue[&t]
    }

    /// `A^{>T} = Σ_{U ⊋ T} A^U` over spherical `U`.
    pub fn above_module(&mut self, t: GenSet) -> &SubmoduleBasis {
        if !self.above.contains_key(&t) {
            let n = self.phi.num_chambers();
            let bigger: Vec<GenSet> = self.poset.above(t).collect();
            let mut gens = Vec::new();
            for u in bigger {
                gens.extend(self.residue_module(u).indicators());
            }
            self.above.insert(t, SubmoduleBasis::span(n, &gens));
        }
        &self.above[&t]
    }

    /// Structure of `D^T = A^T / A^{>T}`.
    pub fn d_quotient(&mut self, t: GenSet) -> GroupEntry {
        let above = self.above_module(t).clone();
        self.residue_module(t).basis.quotient_by(&above).expect("A^U ⊆ A^T for T ⊆ U")
    }

    /// `Â^T`: the deterministic complement of `A^{>T}` inside `A^T`.
    pub fn splitting(&mut self, t: GenSet) -> Result<&SubmoduleBasis, DecompositionError> {
        if !self.split.contains_key(&t) {
            let above = self.above_module(t).clone();
            let at = &self.residue_module(t).basis;
            let c = at.complement_of(&above).map_err(|e| match e {
                LinalgError::TorsionQuotient(torsion) => {
                    DecompositionError::Torsion { kind: self.phi.matrix().format_subset(t), torsion }
                }
                other => other.into(),
            })?;
            self.split.insert(t, c);
        }
        Ok(&self.split[&t])
    }

    /// Ranks of `Â^T = D^T` for every spherical `T`.
    pub fn d_ranks(&mut self) -> Result<BTreeMap<GenSet, usize>, DecompositionError> {
        let members = self.poset.members().to_vec();
        let mut out = BTreeMap::new();
        for t in members {
            out.insert(t, self.splitting(t)?.rank());
        }
        Ok(out)
    }
}

/// See [`ModuleFamily::residue_module`].
pub fn residue_module(phi: &ChamberSystem, t: GenSet) -> ResidueModule {
    ModuleFamily::new(phi).residue_module(t).clone()
}

/// See [`ModuleFamily::above_module`].
pub fn above_module(phi: &ChamberSystem, t: GenSet) -> SubmoduleBasis {
    ModuleFamily::new(phi).above_module(t).clone()
}

/// See [`ModuleFamily::d_quotient`].
pub fn d_quotient(phi: &ChamberSystem, t: GenSet) -> GroupEntry {
    ModuleFamily::new(phi).d_quotient(t)
}

/// See [`ModuleFamily::splitting`].
pub fn choose_splitting(phi: &ChamberSystem, t: GenSet) -> Result<SubmoduleBasis, DecompositionError> {
    ModuleFamily::new(phi).splitting(t).cloned()
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitPiece {
    pub kind: String,
    pub rank: usize,
    /// Basis vectors in `ℤ^Φ`.
    #[serde(serialize_with = "crate::linalg::serialize_bigint_rows")]
    pub basis: Vec<Vec<BigInt>>,
}

/// `A^T = ⊕_{V ⊇ T} Â^V`, checked by a unimodular change of basis.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionWitness {
    pub base: String,
    pub base_rank: usize,
    pub pieces: Vec<SplitPiece>,
    /// Columns: the pieces' basis vectors in coordinates of `A^T`.
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: IntMatrix,
    #[serde(serialize_with = "serialize_bigint")]
    pub determinant: BigInt,
    pub pass: bool,
}

fn serialize_matrix<S: serde::Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
    crate::linalg::serialize_bigint_rows(&m.to_rows(), s)
}

impl ModuleFamily<'_> {
    pub fn verify_decomposition(&mut self, t: GenSet) -> Result<DecompositionWitness, DecompositionError> {
        let m = self.phi.matrix().clone();
        if !self.poset.contains(t) {
            return Err(DecompositionError::NotSpherical(m.format_subset(t)));
        }
        let over: Vec<GenSet> = self.poset.at_least(t).collect();
        let mut pieces = Vec::new();
        let mut columns = Vec::new();
        for v in over {
            let piece = self.splitting(v)?.clone();
            let at = &self.residue_module(t).basis;
            for vec in piece.vectors() {
                columns.push(at.coords(vec).ok_or(LinalgError::NotContained)?);
            }
            pieces.push(SplitPiece { kind: m.format_subset(v), rank: piece.rank(), basis: piece.vectors().to_vec() });
        }
        let base_rank = self.residue_module(t).rank();
        if columns.len() != base_rank {
            return Err(DecompositionError::RankMismatch {
                kind: m.format_subset(t),
                expected: base_rank,
                got: columns.len(),
            });
        }
        let matrix = IntMatrix::from_columns(base_rank, &columns);
        let determinant = matrix.determinant();
        let pass = determinant.abs().is_one();
        Ok(DecompositionWitness { base: m.format_subset(t), base_rank, pieces, matrix, determinant, pass })
    }
}

/// See [`ModuleFamily::verify_decomposition`].
pub fn verify_decomposition(phi: &ChamberSystem, t: GenSet) -> Result<DecompositionWitness, DecompositionError> {
    ModuleFamily::new(phi).verify_decomposition(t)
}

/// The coefficient system `T ↦ A^T` in residue-indicator coordinates.
pub struct ResidueCoefficients {
    poset: SphericalPoset,
    ids: BTreeMap<GenSet, Vec<usize>>,
    counts: BTreeMap<GenSet, usize>,
}

impl ResidueCoefficients {
    pub fn new(phi: &ChamberSystem) -> Self {
        let poset = spherical_poset(phi.matrix());
        let mut ids = BTreeMap::new();
        let mut counts = BTreeMap::new();
        for &t in poset.members() {
            let v = phi.residue_ids(t);
            counts.insert(t, v.iter().max().map_or(0, |&x| x + 1));
            ids.insert(t, v);
        }
        ResidueCoefficients { poset, ids, counts }
    }
}

impl CoefficientSystem for ResidueCoefficients {
    fn rank(&self, t: GenSet) -> usize {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    fn inclusion(&self, big: GenSet, small: GenSet) -> Vec<(usize, usize, BigInt)> {
        if !self.poset.contains(big) || !self.poset.contains(small) {
            return Vec::new();
        }
        let (bi, si) = (&self.ids[&big], &self.ids[&small]);
        let mut pairs: Vec<(usize, usize)> = si.iter().zip(bi).map(|(&s, &b)| (s, b)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.into_iter().map(|(r, c)| (r, c, BigInt::one())).collect()
    }
}

fn check_generators(phi: &ChamberSystem, x: &MirroredComplex) -> Result<(), DecompositionError> {
    if x.generators() != phi.matrix().labels() {
        return Err(DecompositionError::GeneratorMismatch {
            expected: phi.matrix().labels().to_vec(),
            got: x.generators().to_vec(),
        });
    }
    Ok(())
}

/// `𝓗*(cells, excluded; 𝓘(A))`, where `cells ⊇ excluded` are face sets of `x`
/// possibly containing the empty face in degree `−1`.
pub fn coefficient_cohomology_of(
    phi: &ChamberSystem,
    x: &MirroredComplex,
    cells: &FaceSet,
    excluded: &FaceSet,
) -> Result<GradedAbelianGroup, DecompositionError> {
    check_generators(phi, x)?;
    let coeff = ResidueCoefficients::new(phi);
    Ok(coefficient_cochains(x, cells, excluded, &coeff).cohomology())
}

/// Whether the empty face enters the cochains as a cell of degree `−1` with
/// coefficient `A^S`.
///
/// Counting it makes `𝓗*(Δ)` concentrated in the top degree for spherical
/// types too, which is what the concentration statements need. Omitting it
/// gives the compactly supported cohomology of the realization. The two
/// differ only when `S` is spherical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EmptyFace {
    Counted,
    Omitted,
}

/// `𝓗*(X, B; 𝓘(A))`. When counted, the empty face belongs to `B` iff `B`
/// is nonempty.
pub fn coefficient_cohomology(
    phi: &ChamberSystem,
    x: &MirroredComplex,
    b: &FaceSet,
    empty: EmptyFace,
) -> Result<GradedAbelianGroup, DecompositionError> {
    if !b.is_closed(x.complex()) {
        return Err(DecompositionError::NotSubcomplex);
    }
    let counted = empty == EmptyFace::Counted;
    let cells = x.everything().with_empty_face(counted);
    let b = b.clone().with_empty_face(counted && !b.is_empty());
    coefficient_cohomology_of(phi, x, &cells, &b)
}
