//! Constructors for standard finite buildings.

use crate::coxeter::{enumerate_group, CoxeterMatrix, GenSet, Order};

use super::{ChamberError, ChamberSystem};

/// `W_T` as a building: chambers are the elements, s-panels the cosets
/// `{w, ws}`. The type is `M` restricted to `T`, relabelled in order.
pub fn thin_building(m: &CoxeterMatrix, t: GenSet) -> Result<ChamberSystem, ChamberError> {
    let table = enumerate_group(m, t)?;
    let gens = t.indices();
    let n = table.len();
    let ids = gens.iter().map(|&s| (0..n).map(|w| w.min(table.mul_gen(w, s))).collect()).collect();
    Ok(ChamberSystem::from_panel_ids(m.restrict(t), n, ids))
}

/// The generalized digon with `p` chambers per s-panel and `q` per t-panel.
/// Chamber `(i, j)` has index `i·q + j`; s-panels fix `j`, t-panels fix `i`.
pub fn digon_building(p: usize, q: usize) -> Result<ChamberSystem, ChamberError> {
    if p < 2 || q < 2 {
        return Err(ChamberError::TooFewPanels(p.min(q)));
    }
    let m = CoxeterMatrix::parse("gens s t").expect("static matrix");
    let n = p * q;
    let s_ids = (0..n).map(|c| c % q).collect();
    let t_ids = (0..n).map(|c| c / q).collect();
    Ok(ChamberSystem::from_panel_ids(m, n, vec![s_ids, t_ids]))
}

/// Normalized representatives of the 1-dimensional subspaces of `F_q^3`.
fn projective_points(q: u32) -> Vec<[u32; 3]> {
    let mut pts = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    pts.push(v);
                }
            }
        }
    }
    pts
}

/// Flags (point, line) of the projective plane over the prime field of
/// order `q`. s-panels fix the point, t-panels fix the line.
pub fn projective_plane_building(q: u32) -> Result<ChamberSystem, ChamberError> {
    if q != 2 && q != 3 {
        return Err(ChamberError::UnsupportedPlaneOrder(q));
    }
    let m = CoxeterMatrix::from_entries(&["s", "t"], &[("s", "t", Order::Finite(3))])?;
    let points = projective_points(q);
    // lines are kernels of the same normalized functionals
    let lines = points.clone();
    let mut s_ids = Vec::new();
    let mut t_ids = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, l) in lines.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                s_ids.push(i);
                t_ids.push(j);
            }
        }
    }
    let n = s_ids.len();
    Ok(ChamberSystem::from_panel_ids(m, n, vec![s_ids, t_ids]))
}

/// `Φ₁ × Φ₂`, chamber `(a, b)` at index `a·|Φ₂| + b`, with block-sum type.
pub fn product_building(a: &ChamberSystem, b: &ChamberSystem) -> Result<ChamberSystem, ChamberError> {
    for l in b.matrix().labels() {
        if a.matrix().index_of(l).is_some() {
            return Err(ChamberError::LabelCollision(l.clone()));
        }
    }
    let m = a.matrix().block_sum(b.matrix())?;
    let (na, nb) = (a.num_chambers(), b.num_chambers());
    let n = na * nb;
    let mut ids = Vec::new();
    for s in 0..a.rank() {
        ids.push((0..n).map(|c| a.panel_of(s, c / nb) * nb + c % nb).collect());
    }
    for s in 0..b.rank() {
        ids.push((0..n).map(|c| (c / nb) * n + b.panel_of(s, c % nb)).collect());
    }
    Ok(ChamberSystem::from_panel_ids(m, n, ids))
}
