//! Simplicial complexes, mirror structures and their cohomology.

mod cochains;
mod mirrored;
mod simplicial;

use thiserror::Error;

pub(crate) use cochains::punctured_nerve_homology_of;
pub use cochains::{
    augmented_pair_cohomology, coefficient_cochains, davis_relative_groups, is_free_in, metric_flag_check,
    punctured_nerve_homology, reduced_cohomology_in, relative_cohomology, relative_cohomology_in, relative_groups_over,
    CoefficientSystem, IntegerCoefficients, ReducedCohomology,
};
pub(crate) use mirrored::davis_chamber_of;
pub use mirrored::{classical_chamber, davis_chamber, nerve, MirroredComplex, MirroredJson};
pub use simplicial::{flag_complex, ComplexJson, FaceSet, Poset, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face list is not closed under taking faces")]
    NotClosed,
    #[error("vertex `{0}` is not listed as a face")]
    MissingVertex(String),
    #[error("face refers to a vertex out of range")]
    VertexOutOfRange,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a face of the complex")]
    NotAFace,
    #[error("not a subcomplex")]
    NotSubcomplex,
    #[error("mirror for `{0}` is not a subcomplex")]
    MirrorNotSubcomplex(String),
    #[error("expected {expected} mirrors, got {got}")]
    MirrorCount { expected: usize, got: usize },
    #[error("face labels must shrink as faces grow")]
    LabelsNotMonotone,
}
