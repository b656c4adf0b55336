//! Sublattices of `ℤ^n` held in Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::graded::GroupEntry;
use super::matrix::IntMatrix;
use super::snf::{dense_invariant_factors, smith_normal_form};
use super::LinalgError;

/// A submodule of `ℤ^n` with a canonical basis.
///
/// The basis is the nonzero part of the row-style Hermite normal form of any
/// generating set, so two submodules are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubmoduleBasis {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

/// Row Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
fn hermite_rows(n: usize, mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..n {
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()).then(a.cmp(&b)));
            let Some(p) = best else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * y;
                }
                done &= tail[0][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            for i in 0..r {
                let q = rows[i][c].div_floor(&rows[r][c]);
                if q.is_zero() {
                    continue;
                }
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                    *x -= &q * y;
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

impl SubmoduleBasis {
    /// The span of `generators` inside `ℤ^ambient`.
    pub fn span(ambient: usize, generators: &[Vec<BigInt>]) -> Self {
        for g in generators {
            assert_eq!(g.len(), ambient, "generator length");
        }
        let rows = generators.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        SubmoduleBasis { ambient, basis: hermite_rows(ambient, rows) }
    }

    pub fn zero(ambient: usize) -> Self {
        SubmoduleBasis { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        SubmoduleBasis { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis vectors as the columns of an `ambient × rank` matrix.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient, &self.basis)
    }

    fn pivot(row: &[BigInt]) -> usize {
        row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero")
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coords(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let p = Self::pivot(b);
            let (q, r) = rest[p].div_rem(&b[p]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, y) in rest.iter_mut().zip(b) {
                    *x -= &q * y;
                }
            }
            out.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(out)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_module(&self, other: &SubmoduleBasis) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &SubmoduleBasis) -> SubmoduleBasis {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        SubmoduleBasis::span(self.ambient, &gens)
    }

    /// Maps coordinates with respect to this basis back into `ℤ^ambient`.
    pub fn from_coords(&self, c: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(c.len(), self.basis.len(), "coordinate length");
        let mut v = vec![BigInt::zero(); self.ambient];
        for (x, b) in c.iter().zip(&self.basis) {
            if x.is_zero() {
                continue;
            }
            for (y, z) in v.iter_mut().zip(b) {
                *y += x * z;
            }
        }
        v
    }

    /// Structure of `self / sub`.
    pub fn quotient_by(&self, sub: &SubmoduleBasis) -> Result<GroupEntry, LinalgError> {
        let coords = self.coords_of_module(sub)?;
        Ok(quotient_structure(self.rank(), &coords))
    }

    /// Coordinates of each basis vector of `sub`, which must lie in `self`.
    pub fn coords_of_module(&self, sub: &SubmoduleBasis) -> Result<Vec<Vec<BigInt>>, LinalgError> {
        sub.basis.iter().map(|v| self.coords(v).ok_or(LinalgError::NotContained)).collect()
    }

    /// A complement of `sub` inside `self`: `self = sub ⊕ C`.
    pub fn complement_of(&self, sub: &SubmoduleBasis) -> Result<SubmoduleBasis, LinalgError> {
        let coords = self.coords_of_module(sub)?;
        let c = direct_complement(self.rank(), &coords)?;
        let gens: Vec<Vec<BigInt>> = c.basis.iter().map(|x| self.from_coords(x)).collect();
        Ok(SubmoduleBasis::span(self.ambient, &gens))
    }
}

/// Free rank and invariant factors of `ℤ^n / span(generators)`.
pub fn quotient_structure(n: usize, generators: &[Vec<BigInt>]) -> GroupEntry {
    let m = IntMatrix::from_columns(n, generators);
    let f = dense_invariant_factors(&m);
    GroupEntry::finite(n - f.len(), f.into_iter().filter(|x| !x.is_one()).collect())
}

/// A deterministic `C` with `span(generators) ⊕ span(C) = ℤ^n`.
///
/// With `U·B·V = D`, the last `n − r` columns of `U⁻¹` span a complement
/// whenever every nonzero invariant factor is 1; the result is then put in
/// Hermite form.
pub fn direct_complement(n: usize, generators: &[Vec<BigInt>]) -> Result<SubmoduleBasis, LinalgError> {
    let m = IntMatrix::from_columns(n, generators);
    let snf = smith_normal_form(&m);
    let f = snf.invariant_factors();
    let torsion: Vec<BigInt> = f.iter().filter(|x| !x.is_one()).cloned().collect();
    if !torsion.is_empty() {
        return Err(LinalgError::TorsionQuotient(torsion));
    }
    let r = f.len();
    let cols: Vec<Vec<BigInt>> = (r..n).map(|j| snf.u_inv.column(j)).collect();
    Ok(SubmoduleBasis::span(n, &cols))
}
