//! Cochain complexes of finitely generated free abelian groups.

use num_bigint::BigInt;
use num_traits::One;

use super::graded::{GradedAbelianGroup, GroupEntry};
use super::matrix::{IntMatrix, SparseIntMatrix};
use super::snf::invariant_factors;
use super::LinalgError;

/// `C^start → C^{start+1} → ...`, with `d^k` stored as a
/// `dim C^{k+1} × dim C^k` matrix.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    start: i64,
    dims: Vec<usize>,
    differentials: Vec<SparseIntMatrix>,
}

impl CochainComplex {
    /// Checks shapes and `d ∘ d = 0`. There must be one differential fewer
    /// than there are groups.
    pub fn new(start: i64, dims: Vec<usize>, differentials: Vec<SparseIntMatrix>) -> Result<Self, LinalgError> {
        if differentials.len() + 1 != dims.len().max(1) {
            return Err(LinalgError::NotComposable { degree: start });
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.cols() != dims[i] || d.rows() != dims[i + 1] {
                return Err(LinalgError::NotComposable { degree: start + i as i64 });
            }
        }
        for (i, pair) in differentials.windows(2).enumerate() {
            if !pair[1].mul(&pair[0]).is_zero() {
                return Err(LinalgError::NotNilpotent { degree: start + i as i64 });
            }
        }
        Ok(CochainComplex { start, dims, differentials })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[SparseIntMatrix] {
        &self.differentials
    }

    /// `Σ (−1)^k dim C^k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &n)| if (self.start + i as i64).rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn cohomology(&self) -> GradedAbelianGroup {
        let factors: Vec<Vec<BigInt>> = self.differentials.iter().map(invariant_factors).collect();
        let mut out = GradedAbelianGroup::new();
        for (i, &n) in self.dims.iter().enumerate() {
            let out_rank = factors.get(i).map_or(0, Vec::len);
            let (in_rank, torsion) = match i.checked_sub(1) {
                Some(j) => (factors[j].len(), factors[j].iter().filter(|x| !x.is_one()).cloned().collect()),
                None => (0, Vec::new()),
            };
            out.set(self.start + i as i64, GroupEntry::finite(n - out_rank - in_rank, torsion));
        }
        out
    }
}

/// Cohomology of `C^0 → C^1 → ...` given by its coboundary matrices.
pub fn cochain_cohomology(coboundaries: &[IntMatrix]) -> Result<GradedAbelianGroup, LinalgError> {
    if coboundaries.is_empty() {
        return Ok(GradedAbelianGroup::new());
    }
    let mut dims = vec![coboundaries[0].cols()];
    dims.extend(coboundaries.iter().map(IntMatrix::rows));
    let sparse = coboundaries.iter().map(SparseIntMatrix::from).collect();
    Ok(CochainComplex::new(0, dims, sparse)?.cohomology())
}
