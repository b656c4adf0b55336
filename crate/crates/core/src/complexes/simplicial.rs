//! Finite abstract simplicial complexes and order complexes of posets.

use std::collections::HashMap;

use serde::Serialize;

use super::ComplexError;

/// A finite simplicial complex on named vertices.
///
/// Vertex `i` comes before vertex `j` in every face when `i < j`; this index
/// order orients all simplices. Faces are stored nonempty, sorted by
/// dimension and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    names: Vec<String>,
    faces: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// The downward closure of `generators` (vertex index lists, any order).
    pub fn closure(names: Vec<String>, generators: &[Vec<usize>]) -> Self {
        let n = names.len();
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        for g in generators {
            let mut f = g.clone();
            f.sort_unstable();
            f.dedup();
            assert!(f.iter().all(|&v| v < n), "vertex out of range");
            if !f.is_empty() {
                stack.push(f);
            }
        }
        while let Some(f) = stack.pop() {
            if seen.contains_key(&f) {
                continue;
            }
            if f.len() > 1 {
                for i in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(i);
                    if !seen.contains_key(&g) {
                        stack.push(g);
                    }
                }
            }
            seen.insert(f, ());
        }
        Self::from_closed(names, seen.into_keys().collect())
    }

    /// Builds from a face list, which must already be closed under subsets
    /// and contain every vertex.
    pub fn from_faces(names: Vec<String>, faces: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let mut faces: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        faces.sort();
        faces.dedup();
        let present: std::collections::HashSet<&Vec<usize>> = faces.iter().collect();
        for (v, name) in names.iter().enumerate() {
            if !present.contains(&vec![v]) {
                return Err(ComplexError::MissingVertex(name.clone()));
            }
        }
        for f in &faces {
            if f.iter().any(|&v| v >= names.len()) {
                return Err(ComplexError::VertexOutOfRange);
            }
            for i in 0..f.len() {
                if f.len() > 1 {
                    let mut g = f.clone();
                    g.remove(i);
                    if !present.contains(&g) {
                        return Err(ComplexError::NotClosed);
                    }
                }
            }
        }
        Ok(Self::from_closed(names, faces))
    }

    fn from_closed(names: Vec<String>, mut faces: Vec<Vec<usize>>) -> Self {
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let lookup: HashMap<Vec<usize>, usize> = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let facets = faces
            .iter()
            .map(|f| {
                if f.len() == 1 {
                    return Vec::new();
                }
                (0..f.len())
                    .map(|i| {
                        let mut g = f.clone();
                        g.remove(i);
                        lookup[&g]
                    })
                    .collect()
            })
            .collect();
        SimplicialComplex { names, faces, lookup, facets }
    }

    /// The complex with no vertices.
    pub fn empty() -> Self {
        Self::from_closed(Vec::new(), Vec::new())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Face dimension (`|face| − 1`).
    pub fn face_dim(&self, i: usize) -> usize {
        self.faces[i].len() - 1
    }

    /// `−1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.faces.last().map_or(-1, |f| f.len() as i64 - 1)
    }

    pub fn index_of(&self, face: &[usize]) -> Option<usize> {
        self.lookup.get(face).copied()
    }

    /// Indices of the codimension-one faces, in the order given by removing
    /// vertex `0, 1, ...`; empty for vertices.
    pub fn facets(&self, i: usize) -> &[usize] {
        &self.facets[i]
    }

    /// Number of faces in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut out = vec![0; (self.dim() + 1) as usize];
        for f in &self.faces {
            out[f.len() - 1] += 1;
        }
        out
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Faces as sorted lists of vertex names.
    pub fn named_faces(&self) -> Vec<Vec<String>> {
        self.faces.iter().map(|f| f.iter().map(|&v| self.names[v].clone()).collect()).collect()
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.names.clone(),
            dimension: self.dim(),
            f_vector: self.f_vector(),
            faces: self.named_faces(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub dimension: i64,
    pub f_vector: Vec<usize>,
    pub faces: Vec<Vec<String>>,
}

/// A set of faces of a fixed parent complex, optionally with the empty face.
///
/// The empty face is the `(−1)`-cell of the augmented cochain complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceSet {
    members: Vec<bool>,
    empty_face: bool,
}

impl FaceSet {
    pub fn none(parent: &SimplicialComplex) -> Self {
        FaceSet { members: vec![false; parent.len()], empty_face: false }
    }

    /// Every face of the parent, plus the empty face.
    pub fn all(parent: &SimplicialComplex) -> Self {
        FaceSet { members: vec![true; parent.len()], empty_face: true }
    }

    pub fn from_predicate(parent: &SimplicialComplex, empty_face: bool, pred: impl Fn(usize) -> bool) -> Self {
        FaceSet { members: (0..parent.len()).map(pred).collect(), empty_face }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn has_empty_face(&self) -> bool {
        self.empty_face
    }

    pub fn with_empty_face(mut self, on: bool) -> Self {
        self.empty_face = on;
        self
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    /// No nonempty faces (the empty face may still be present).
    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn union(&self, other: &FaceSet) -> FaceSet {
        FaceSet {
            members: self.members.iter().zip(&other.members).map(|(a, b)| *a || *b).collect(),
            empty_face: self.empty_face || other.empty_face,
        }
    }

    pub fn intersection(&self, other: &FaceSet) -> FaceSet {
        FaceSet {
            members: self.members.iter().zip(&other.members).map(|(a, b)| *a && *b).collect(),
            empty_face: self.empty_face && other.empty_face,
        }
    }

    pub fn is_subset(&self, other: &FaceSet) -> bool {
        self.members.iter().zip(&other.members).all(|(a, b)| !*a || *b) && (!self.empty_face || other.empty_face)
    }

    /// Whether every facet of a member is a member.
    pub fn is_closed(&self, parent: &SimplicialComplex) -> bool {
        self.indices().all(|i| parent.facets(i).iter().all(|&j| self.members[j]))
    }

    /// The members as a standalone complex on the vertices they use.
    pub fn to_complex(&self, parent: &SimplicialComplex) -> SimplicialComplex {
        let mut used: Vec<usize> = self.indices().flat_map(|i| parent.face(i).iter().copied()).collect();
        used.sort_unstable();
        used.dedup();
        let pos: HashMap<usize, usize> = used.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let names = used.iter().map(|&v| parent.names()[v].clone()).collect();
        let faces = self.indices().map(|i| parent.face(i).iter().map(|v| pos[v]).collect()).collect();
        SimplicialComplex::from_closed(names, faces)
    }
}

/// A finite poset on named elements.
#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    le: Vec<Vec<bool>>,
}

impl Poset {
    /// `le(i, j)` must be a partial order.
    pub fn new(names: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let le = (0..n).map(|i| (0..n).map(|j| le(i, j)).collect()).collect();
        Poset { names, le }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le[i][j] || self.le[j][i]
    }
}

/// The order complex: one simplex per nonempty chain.
pub fn flag_complex(p: &Poset) -> SimplicialComplex {
    let n = p.len();
    let mut faces = Vec::new();
    let mut chain = Vec::new();
    fn extend(p: &Poset, start: usize, chain: &mut Vec<usize>, faces: &mut Vec<Vec<usize>>) {
        for v in start..p.len() {
            if chain.iter().all(|&u| p.comparable(u, v)) {
                chain.push(v);
                faces.push(chain.clone());
                extend(p, v + 1, chain, faces);
                chain.pop();
            }
        }
    }
    extend(p, 0, &mut chain, &mut faces);
    debug_assert!(faces.iter().filter(|f| f.len() == 1).count() == n);
    SimplicialComplex::from_closed(p.names.clone(), faces)
}
