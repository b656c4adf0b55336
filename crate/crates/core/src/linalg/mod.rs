//! Exact integer linear algebra.

mod cochain;
mod graded;
mod lattice;
mod matrix;
mod snf;

use num_bigint::BigInt;
use thiserror::Error;

pub use cochain::{cochain_cohomology, CochainComplex};
pub use graded::{normalize_torsion, GradedAbelianGroup, GroupEntry, Rank};
#[allow(unused_imports)]
pub(crate) use graded::{serialize_bigint, serialize_bigint_rows, serialize_bigints, BigIntJson};
pub use lattice::{direct_complement, quotient_structure, SubmoduleBasis};
pub use matrix::{IntMatrix, SparseIntMatrix};
pub use snf::{dense_invariant_factors, invariant_factors, smith_normal_form, SnfResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("quotient has torsion {0:?}; not a direct summand")]
    TorsionQuotient(Vec<BigInt>),
    #[error("vector is not in the submodule")]
    NotContained,
    #[error("coboundary shapes do not compose at degree {degree}")]
    NotComposable { degree: i64 },
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotNilpotent { degree: i64 },
}
