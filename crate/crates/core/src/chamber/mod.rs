//! Finite chamber systems, residues and buildings.

mod build;
mod format;
mod verify;

use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterMatrix, GenSet};

pub use build::{digon_building, product_building, projective_plane_building, thin_building};
pub use format::{emit_chamber_system, parse_chamber_system};
pub use verify::{verify_building, w_distance, w_distances_from, BuildingReport, PairReport, ResidueCheck};

#[derive(Debug, Error)]
pub enum ChamberError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("the {0}-panels do not partition the chambers")]
    NotPartition(String),
    #[error("panel count must be at least 2, got {0}")]
    TooFewPanels(usize),
    #[error("unsupported projective plane order {0}; use 2 or 3")]
    UnsupportedPlaneOrder(u32),
    #[error("generator label `{0}` occurs in both factors")]
    LabelCollision(String),
    #[error("chamber system type does not match: {0}")]
    TypeMismatch(String),
    #[error("chamber index {0} out of range")]
    ChamberOutOfRange(usize),
    #[error("the chamber system is not connected")]
    NotConnected,
    #[error("galleries between chambers {from} and {to} give different elements")]
    InconsistentDistance { from: usize, to: usize },
}

/// A finite chamber set with one partition into panels per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberSystem {
    matrix: CoxeterMatrix,
    chambers: usize,
    /// `panel_of[s][c]`: the s-panel of chamber `c`, numbered in order of
    /// smallest member.
    panel_of: Vec<Vec<usize>>,
}

/// One `T`-connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    pub kind: GenSet,
    /// Sorted chamber indices.
    pub members: Vec<usize>,
}

fn renumber(ids: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    ids.iter()
        .map(|&x| {
            let next = map.len();
            *map.entry(x).or_insert(next)
        })
        .collect()
}

impl ChamberSystem {
    /// Builds from an explicit panel partition per generator.
    pub fn from_partitions(
        matrix: CoxeterMatrix,
        chambers: usize,
        partitions: &[Vec<Vec<usize>>],
    ) -> Result<Self, ChamberError> {
        assert_eq!(partitions.len(), matrix.rank(), "one partition per generator");
        let mut panel_of = Vec::with_capacity(partitions.len());
        for (s, classes) in partitions.iter().enumerate() {
            let mut ids = vec![usize::MAX; chambers];
            for (k, class) in classes.iter().enumerate() {
                for &c in class {
                    if c >= chambers {
                        return Err(ChamberError::ChamberOutOfRange(c));
                    }
                    if ids[c] != usize::MAX {
                        return Err(ChamberError::NotPartition(matrix.label(s).to_string()));
                    }
                    ids[c] = k;
                }
            }
            if ids.contains(&usize::MAX) || classes.iter().any(Vec::is_empty) {
                return Err(ChamberError::NotPartition(matrix.label(s).to_string()));
            }
            panel_of.push(renumber(&ids));
        }
        Ok(ChamberSystem { matrix, chambers, panel_of })
    }

    /// Builds from panel ids per generator and chamber (any labelling).
    pub fn from_panel_ids(matrix: CoxeterMatrix, chambers: usize, ids: Vec<Vec<usize>>) -> Self {
        assert_eq!(ids.len(), matrix.rank(), "one id list per generator");
        let panel_of = ids
            .iter()
            .map(|v| {
                assert_eq!(v.len(), chambers, "one id per chamber");
                renumber(v)
            })
            .collect();
        ChamberSystem { matrix, chambers, panel_of }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn num_chambers(&self) -> usize {
        self.chambers
    }

    pub fn panel_of(&self, s: usize, c: usize) -> usize {
        self.panel_of[s][c]
    }

    /// The s-panels, each sorted, listed by smallest member.
    pub fn panels(&self, s: usize) -> Vec<Vec<usize>> {
        let count = self.panel_of[s].iter().max().map_or(0, |&m| m + 1);
        let mut out = vec![Vec::new(); count];
        for c in 0..self.chambers {
            out[self.panel_of[s][c]].push(c);
        }
        out
    }

    /// Sizes of the s-panels.
    pub fn panel_sizes(&self, s: usize) -> Vec<usize> {
        self.panels(s).iter().map(Vec::len).collect()
    }

    /// Chambers s-adjacent to `c`, including `c`.
    pub fn panel_members(&self, s: usize, c: usize) -> Vec<usize> {
        let p = self.panel_of[s][c];
        (0..self.chambers).filter(|&d| self.panel_of[s][d] == p).collect()
    }

    /// The `T`-residue of every chamber, numbered by smallest member.
    pub fn residue_ids(&self, t: GenSet) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.chambers).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for s in t.iter() {
            let mut first: Vec<Option<usize>> = vec![None; self.chambers];
            for c in 0..self.chambers {
                let p = self.panel_of[s][c];
                match first[p] {
                    None => first[p] = Some(c),
                    Some(d) => {
                        let (a, b) = (find(&mut parent, c), find(&mut parent, d));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..self.chambers).map(|c| find(&mut parent, c)).collect();
        renumber(&roots)
    }

    /// Residues of type `T`, listed by smallest member.
    pub fn residues(&self, t: GenSet) -> Vec<Residue> {
        let ids = self.residue_ids(t);
        let count = ids.iter().max().map_or(0, |&m| m + 1);
        let mut members = vec![Vec::new(); count];
        for (c, &r) in ids.iter().enumerate() {
            members[r].push(c);
        }
        members.into_iter().map(|m| Residue { kind: t, members: m }).collect()
    }

    pub fn num_residues(&self, t: GenSet) -> usize {
        self.residue_ids(t).iter().max().map_or(0, |&m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.num_residues(self.matrix.all()) <= 1
    }

    /// Whether all s-panels have the same size, for every `s`.
    pub fn is_panel_regular(&self) -> bool {
        (0..self.rank()).all(|s| {
            let sizes = self.panel_sizes(s);
            sizes.windows(2).all(|w| w[0] == w[1])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_refine() {
        let fano = projective_plane_building(2).unwrap();
        let s = GenSet::singleton(0);
        assert_eq!(fano.residues(GenSet::EMPTY).len(), 21);
        let rs = fano.residues(s);
        assert_eq!(rs.len(), 7);
        assert!(rs.iter().all(|r| r.members.len() == 3));
        assert_eq!(fano.residues(fano.matrix().all()).len(), 1);
        let fine = fano.residue_ids(s);
        let coarse = fano.residue_ids(fano.matrix().all());
        for a in 0..21 {
            for b in 0..21 {
                if fine[a] == fine[b] {
                    assert_eq!(coarse[a], coarse[b]);
                }
            }
        }
    }

    #[test]
    fn partition_validation() {
        let m = CoxeterMatrix::parse("gens s").unwrap();
        assert!(ChamberSystem::from_partitions(m.clone(), 3, &[vec![vec![0, 1], vec![2]]]).is_ok());
        assert!(matches!(
            ChamberSystem::from_partitions(m.clone(), 3, &[vec![vec![0, 1], vec![1, 2]]]),
            Err(ChamberError::NotPartition(_))
        ));
        assert!(matches!(
            ChamberSystem::from_partitions(m, 3, &[vec![vec![0, 1]]]),
            Err(ChamberError::NotPartition(_))
        ));
    }
}
