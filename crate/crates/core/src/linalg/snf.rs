//! Smith normal form.
//!
//! The dense routine tracks the unimodular transforms and is used where
//! witnesses are needed. [`invariant_factors`] first strips unit pivots from
//! a sparse matrix and only then falls back to the dense routine, which keeps
//! coboundary matrices of realized complexes cheap.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, SparseIntMatrix};

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        diagonal(&self.d)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn diagonal(d: &IntMatrix) -> Vec<BigInt> {
    (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
}

struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Transforms {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    /// Mirrors `row[dst] += f · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        self.u.add_row_multiple(dst, src, f);
        self.u_inv.add_col_multiple(src, dst, &-f);
    }

    fn negate_row(&mut self, i: usize) {
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smallest nonzero absolute value in the lower-right block, first in
/// row-major order on ties.
fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn reduce(a: &mut IntMatrix, mut tr: Option<&mut Transforms>) {
    let (m, n) = (a.rows(), a.cols());
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = find_pivot(a, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(tr) = tr.as_deref_mut() {
            tr.swap_rows(t, pi);
            tr.v.swap_cols(t, pj);
        }
        loop {
            let p = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&p);
                a.add_row_multiple(i, t, &q);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.add_row(i, t, &q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&p);
                a.add_col_multiple(j, t, &q);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.v.add_col_multiple(j, t, &q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; restart from it
                let (pi, pj) = find_pivot(a, t).expect("nonzero remainder");
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.swap_rows(t, pi);
                    tr.v.swap_cols(t, pj);
                }
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.add_row(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(tr) = tr.as_deref_mut() {
                tr.negate_row(t);
            }
        }
        t += 1;
    }
}

/// Smith normal form with unimodular witnesses.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut d = a.clone();
    let mut tr = Transforms {
        u: IntMatrix::identity(a.rows()),
        u_inv: IntMatrix::identity(a.rows()),
        v: IntMatrix::identity(a.cols()),
    };
    reduce(&mut d, Some(&mut tr));
    SnfResult { u: tr.u, u_inv: tr.u_inv, d, v: tr.v }
}

/// Nonzero invariant factors of a dense matrix, without transforms.
pub fn dense_invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let mut d = a.clone();
    reduce(&mut d, None);
    diagonal(&d)
}

/// Nonzero invariant factors (`d_1 | d_2 | ...`) of a sparse matrix.
pub fn invariant_factors(a: &SparseIntMatrix) -> Vec<BigInt> {
    let ncols = a.cols();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = a.clone().into_rows();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            cols[j].insert(i);
        }
    }
    let mut units = 0usize;
    loop {
        // unit pivot of least fill-in, ties broken by (row, col)
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            for (&j, v) in row {
                if !v.abs().is_one() {
                    continue;
                }
                let cost = (row.len() - 1) * (cols[j].len() - 1);
                if best.is_none_or(|(c, _, _)| cost < c) {
                    best = Some((cost, i, j));
                }
                if cost == 0 {
                    break;
                }
            }
            if matches!(best, Some((0, _, _))) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pi]);
        let p = pivot_row[&pj].clone();
        for &j in pivot_row.keys() {
            cols[j].remove(&pi);
        }
        let others: Vec<usize> = cols[pj].iter().copied().collect();
        for r in others {
            let f = &rows[r][&pj] * &p; // p = ±1 is its own inverse
            for (&j, v) in &pivot_row {
                let e = rows[r].entry(j).or_insert_with(BigInt::zero);
                *e -= &f * v;
                if e.is_zero() {
                    rows[r].remove(&j);
                    cols[j].remove(&r);
                } else {
                    cols[j].insert(r);
                }
            }
        }
        units += 1;
    }
    // dense fallback on what is left
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..ncols).filter(|&j| !cols[j].is_empty()).collect();
    let mut factors = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut dense = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (k, &i) in live_rows.iter().enumerate() {
            for (j, v) in &rows[i] {
                dense[(k, col_pos[j])] = v.clone();
            }
        }
        factors.extend(dense_invariant_factors(&dense));
    }
    factors
}
