//! Exact computations for Coxeter groups, buildings and their realizations.

pub mod chamber;
pub mod complexes;
pub mod coxeter;
pub mod decomposition;
pub mod hc;
pub mod linalg;
pub mod realization;

pub use chamber::ChamberSystem;
pub use complexes::{MirroredComplex, SimplicialComplex};
pub use coxeter::{CoxeterMatrix, GenSet, Order, SphericalPoset};
pub use decomposition::{DecompositionWitness, ModuleFamily};
pub use hc::{HcReport, Thickness};
pub use linalg::{GradedAbelianGroup, GroupEntry, IntMatrix, Rank, SubmoduleBasis};
pub use realization::RealizedComplex;
