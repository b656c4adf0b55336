//! Element enumeration: finite special subgroups and length-bounded balls.
//!
//! Elements are matrices of the geometric representation over
//! `Q(√2, √3, √5)`; two words name the same element iff the matrices agree.
//! Breadth-first search in generator order records, for each element, its
//! shortlex-least reduced word.

use std::collections::HashMap;

use super::classify::is_spherical;
use super::field::Surd;
use super::matrix::{CoxeterMatrix, GenSet, Order};
use super::CoxeterError;

/// One enumerated group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    /// Shortlex-least reduced word, as generator indices into the matrix.
    pub word: Vec<usize>,
    pub length: usize,
    /// `In(w) = { s : l(ws) < l(w) }`.
    pub descent: GenSet,
}

/// Complete element list of a finite special subgroup `W_T`.
#[derive(Debug, Clone)]
pub struct ElementTable {
    generators: GenSet,
    elements: Vec<Element>,
    /// `right[w][k]` is the index of `w · s_k` for the k-th generator of `T`.
    right: Vec<Vec<usize>>,
}

impl ElementTable {
    pub fn generators(&self) -> GenSet {
        self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, w: usize) -> &Element {
        &self.elements[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `w · s` for a generator `s ∈ T`.
    pub fn mul_gen(&self, w: usize, s: usize) -> usize {
        let k = self.generators.indices().iter().position(|&g| g == s).expect("generator in table");
        self.right[w][k]
    }

    /// Index of `u · v`.
    pub fn mul(&self, u: usize, v: usize) -> usize {
        self.elements[v].word.iter().fold(u, |acc, &s| self.mul_gen(acc, s))
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.elements[w].word.iter().rev().fold(0, |acc, &s| self.mul_gen(acc, s))
    }

    /// Index of the element with the given word.
    pub fn evaluate(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &s| self.mul_gen(acc, s))
    }

    /// The unique element of maximal length.
    pub fn longest(&self) -> usize {
        let max = self.elements.iter().map(|e| e.length).max().unwrap_or(0);
        self.elements.iter().position(|e| e.length == max).unwrap_or(0)
    }

    pub fn descent_set(&self, w: usize) -> Result<GenSet, CoxeterError> {
        self.elements.get(w).map(|e| e.descent).ok_or(CoxeterError::ElementNotInTable(w))
    }

    /// Number of elements with descent set exactly `t`.
    pub fn descent_class_size(&self, t: GenSet) -> usize {
        self.elements.iter().filter(|e| e.descent == t).count()
    }
}

/// All elements of `W` with length at most a radius.
#[derive(Debug, Clone)]
pub struct BallTable {
    radius: usize,
    elements: Vec<Element>,
}

impl BallTable {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Number of elements of each length `0..=radius`.
    pub fn counts_per_length(&self) -> Vec<usize> {
        let mut counts = vec![0; self.radius + 1];
        for e in &self.elements {
            counts[e.length] += 1;
        }
        counts
    }

    pub fn descent_set(&self, w: usize) -> Result<GenSet, CoxeterError> {
        self.elements.get(w).map(|e| e.descent).ok_or(CoxeterError::ElementNotInTable(w))
    }
}

/// Geometric representation of `W_T` on the span of the simple roots of `T`.
struct GeometricRep {
    /// Coefficient `-2 B(α_s, α_j)` for each generator position `s`, column `j`.
    coeff: Vec<Vec<Surd>>,
}

impl GeometricRep {
    fn new(m: &CoxeterMatrix, gens: &[usize]) -> Result<Self, CoxeterError> {
        let coeff = gens
            .iter()
            .map(|&s| {
                gens.iter()
                    .map(|&t| {
                        if s == t {
                            Ok(Surd::int(-2))
                        } else {
                            // -2 B = 2 cos(π/m)
                            let c = Surd::cos_pi_over(m.m(s, t))?;
                            Ok(&c + &c)
                        }
                    })
                    .collect()
            })
            .collect::<Result<_, CoxeterError>>()?;
        Ok(GeometricRep { coeff })
    }

    fn identity(&self) -> Vec<Surd> {
        let n = self.coeff.len();
        (0..n * n).map(|i| if i / n == i % n { Surd::one() } else { Surd::zero() }).collect()
    }

    /// Right multiplication by the reflection in generator position `s`
    /// (column-major storage: `w[col * n + row]`).
    fn right_mul(&self, w: &[Surd], s: usize) -> Vec<Surd> {
        let n = self.coeff.len();
        let mut out = w.to_vec();
        for j in 0..n {
            let c = &self.coeff[s][j];
            if j == s {
                // σ_s(α_s) = -α_s
                for r in 0..n {
                    out[j * n + r] = -&w[s * n + r];
                }
            } else if !c.is_zero() {
                for r in 0..n {
                    let add = c * &w[s * n + r];
                    out[j * n + r] = &w[j * n + r] + &add;
                }
            }
        }
        out
    }

    /// Whether `w(α_s)` is a negative root.
    fn is_descent(&self, w: &[Surd], s: usize) -> bool {
        let n = self.coeff.len();
        w[s * n..(s + 1) * n].iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false)
    }
}

fn check_supported(m: &CoxeterMatrix, gens: &[usize], allow_infinite: bool) -> Result<(), CoxeterError> {
    for (a, &i) in gens.iter().enumerate() {
        for &j in &gens[a + 1..] {
            match m.m(i, j) {
                Order::Finite(x) if (2..=6).contains(&x) => {}
                Order::Infinite if allow_infinite => {}
                Order::Finite(x) => return Err(CoxeterError::UnsupportedOrder(x)),
                Order::Infinite => return Err(CoxeterError::NotSpherical),
            }
        }
    }
    Ok(())
}

/// Enumerates the finite special subgroup `W_T`.
pub fn enumerate_group(m: &CoxeterMatrix, t: GenSet) -> Result<ElementTable, CoxeterError> {
    if !is_spherical(m, t) {
        return Err(CoxeterError::NotSpherical);
    }
    let gens = t.indices();
    if gens.len() == 2 {
        if let Order::Finite(order) = m.m(gens[0], gens[1]) {
            if order > 6 {
                return Ok(dihedral_table(gens[0], gens[1], order));
            }
        }
    }
    check_supported(m, &gens, false)?;
    let rep = GeometricRep::new(m, &gens)?;
    let mut index: HashMap<Vec<Surd>, usize> = HashMap::new();
    let mut mats = vec![rep.identity()];
    let mut elements = vec![Element { word: vec![], length: 0, descent: GenSet::EMPTY }];
    index.insert(mats[0].clone(), 0);
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut w = 0;
    while w < mats.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (k, &s) in gens.iter().enumerate() {
            let next = rep.right_mul(&mats[w], k);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = mats.len();
                    let mut word = elements[w].word.clone();
                    word.push(s);
                    elements.push(Element { word, length: elements[w].length + 1, descent: GenSet::EMPTY });
                    index.insert(next.clone(), id);
                    mats.push(next);
                    id
                }
            };
            row.push(id);
        }
        right.push(row);
        w += 1;
    }
    for w in 0..elements.len() {
        let len = elements[w].length;
        elements[w].descent = GenSet::from_indices(
            gens.iter().enumerate().filter(|(k, _)| elements[right[w][*k]].length < len).map(|(_, &s)| s),
        );
    }
    Ok(ElementTable { generators: t, elements, right })
}

/// Closed-form table of the dihedral group of order `2m` on generators `a < b`.
fn dihedral_table(a: usize, b: usize, m: u32) -> ElementTable {
    let m = m as usize;
    // (first letter, length) in shortlex order; the longest element uses first letter 0
    let mut keys: Vec<(usize, usize)> = vec![(0, 0)];
    for len in 1..m {
        keys.push((0, len));
        keys.push((1, len));
    }
    keys.push((0, m));
    let letter = |x: usize| if x == 0 { a } else { b };
    let pos = |key: (usize, usize)| keys.iter().position(|&k| k == key).expect("dihedral key");
    let last = |(first, len): (usize, usize)| if len % 2 == 1 { first } else { 1 - first };
    let mut elements = Vec::new();
    let mut right = Vec::new();
    for &(first, len) in &keys {
        let word: Vec<usize> = (0..len).map(|i| letter((first + i) % 2)).collect();
        let mut row = Vec::new();
        let mut descent = GenSet::EMPTY;
        for x in 0..2 {
            let target = if len == 0 {
                (x, 1)
            } else if len == m {
                // pick the reduced word of w0 that ends with x, then drop it
                let f = if m % 2 == 1 { x } else { 1 - x };
                (f, m - 1)
            } else if last((first, len)) == x {
                if len == 1 {
                    (0, 0)
                } else {
                    (first, len - 1)
                }
            } else if len + 1 == m {
                (0, m)
            } else {
                (first, len + 1)
            };
            if target.1 < len {
                descent = descent.with(letter(x));
            }
            row.push(pos(target));
        }
        elements.push(Element { word, length: len, descent });
        right.push(row);
    }
    ElementTable { generators: GenSet::from_indices([a, b]), elements, right }
}

/// Enumerates all elements of `W` with `l(w) ≤ radius`.
pub fn enumerate_ball(m: &CoxeterMatrix, radius: usize) -> Result<BallTable, CoxeterError> {
    let gens: Vec<usize> = (0..m.rank()).collect();
    check_supported(m, &gens, true)?;
    let rep = GeometricRep::new(m, &gens)?;
    let mut index: HashMap<Vec<Surd>, usize> = HashMap::new();
    let mut mats = vec![rep.identity()];
    let mut elements = vec![Element { word: vec![], length: 0, descent: GenSet::EMPTY }];
    index.insert(mats[0].clone(), 0);
    let mut w = 0;
    while w < mats.len() {
        if elements[w].length < radius {
            for &s in &gens {
                if rep.is_descent(&mats[w], s) {
                    continue;
                }
                let next = rep.right_mul(&mats[w], s);
                if !index.contains_key(&next) {
                    let mut word = elements[w].word.clone();
                    word.push(s);
                    elements.push(Element { word, length: elements[w].length + 1, descent: GenSet::EMPTY });
                    index.insert(next.clone(), mats.len());
                    mats.push(next);
                }
            }
        }
        w += 1;
    }
    for (e, mat) in elements.iter_mut().zip(&mats) {
        e.descent = GenSet::from_indices(gens.iter().copied().filter(|&s| rep.is_descent(mat, s)));
    }
    Ok(BallTable { radius, elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::classify::spherical_order;
    use num_bigint::BigUint;

    fn mat(text: &str) -> CoxeterMatrix {
        CoxeterMatrix::parse(text).unwrap()
    }

    #[test]
    fn a2_descent_sets() {
        let m = mat("gens s t\ns t 3");
        let table = enumerate_group(&m, m.all()).unwrap();
        assert_eq!(table.len(), 6);
        let s = GenSet::singleton(0);
        let t = GenSet::singleton(1);
        let expect = [
            (vec![], GenSet::EMPTY),
            (vec![0], s),
            (vec![1], t),
            (vec![0, 1], t),
            (vec![1, 0], s),
            (vec![0, 1, 0], s.union(t)),
        ];
        for (word, descent) in expect {
            let e = table.elements().iter().find(|e| e.word == word).unwrap();
            assert_eq!(e.descent, descent, "{word:?}");
        }
    }

    #[test]
    fn orders_match_classification() {
        for text in [
            "gens a\n",
            "gens a b\n",
            "gens a b\na b 4",
            "gens a b\na b 5",
            "gens a b\na b 6",
            "gens a b c\na b 3\nb c 3",
            "gens a b c\na b 4\nb c 3",
            "gens a b c\na b 5\nb c 3",
            "gens a b c\nb c 3",
        ] {
            let m = mat(text);
            let table = enumerate_group(&m, m.all()).unwrap();
            assert_eq!(BigUint::from(table.len()), spherical_order(&m, m.all()).unwrap(), "{text}");
            let w0 = table.longest();
            assert_eq!(table.element(w0).descent, m.all());
            assert_eq!(table.elements().iter().filter(|e| e.length == 0).count(), 1);
        }
    }

    #[test]
    fn dihedral_closed_form() {
        let m = mat("gens s t\ns t 7");
        let table = enumerate_group(&m, m.all()).unwrap();
        assert_eq!(table.len(), 14);
        assert_eq!(table.elements().iter().filter(|e| e.descent == m.all()).count(), 1);
        // the closed form must agree with the matrix route where both apply
        let m6 = mat("gens s t\ns t 6");
        let by_matrix = enumerate_group(&m6, m6.all()).unwrap();
        let closed = dihedral_table(0, 1, 6);
        assert_eq!(by_matrix.elements(), closed.elements());
        for w in 0..12 {
            for s in 0..2 {
                assert_eq!(by_matrix.mul_gen(w, s), closed.mul_gen(w, s));
            }
        }
    }

    #[test]
    fn ball_counts() {
        let free = mat("gens a b c\na b inf\nb c inf\na c inf");
        assert_eq!(enumerate_ball(&free, 3).unwrap().counts_per_length(), vec![1, 3, 6, 12]);
        let tri = mat("gens a b c\na b 3\nb c 3\na c 3");
        assert_eq!(enumerate_ball(&tri, 2).unwrap().counts_per_length(), vec![1, 3, 6]);
        assert_eq!(enumerate_ball(&tri, 0).unwrap().len(), 1);
    }

    #[test]
    fn unsupported_orders() {
        let m = mat("gens a b c\na b 7\nb c 2");
        assert!(matches!(enumerate_group(&m, m.all()), Err(CoxeterError::UnsupportedOrder(7))));
        assert!(enumerate_ball(&m, 2).is_err());
        let tri = mat("gens a b c\na b 3\nb c 3\na c 3");
        assert!(matches!(enumerate_group(&tri, tri.all()), Err(CoxeterError::NotSpherical)));
    }
}
