//! Sphericity via the classification of finite irreducible Coxeter groups,
//! plus the independent positive-definiteness oracle.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::field::Surd;
use super::matrix::{CoxeterMatrix, GenSet, Order};
use super::CoxeterError;

/// Finite irreducible Coxeter types. Rank-two types are all `I2(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    I2(u32),
}

impl FiniteType {
    pub fn order(self) -> BigUint {
        let fact = |n: usize| (1..=n).fold(BigUint::one(), |acc, k| acc * k);
        match self {
            FiniteType::A(n) => fact(n + 1),
            FiniteType::B(n) => fact(n) << n,
            FiniteType::D(n) => fact(n) << (n - 1),
            FiniteType::E6 => BigUint::from(51_840u32),
            FiniteType::E7 => BigUint::from(2_903_040u32),
            FiniteType::E8 => BigUint::from(696_729_600u32),
            FiniteType::F4 => BigUint::from(1_152u32),
            FiniteType::H3 => BigUint::from(120u32),
            FiniteType::H4 => BigUint::from(14_400u32),
            FiniteType::I2(m) => BigUint::from(2 * m),
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => f.write_str("E6"),
            FiniteType::E7 => f.write_str("E7"),
            FiniteType::E8 => f.write_str("E8"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::H3 => f.write_str("H3"),
            FiniteType::H4 => f.write_str("H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Connected components of the Coxeter diagram restricted to `t`
/// (generators are joined when `m ≠ 2`).
pub fn irreducible_components(m: &CoxeterMatrix, t: GenSet) -> Vec<GenSet> {
    let mut remaining = t;
    let mut out = Vec::new();
    while let Some(start) = remaining.iter().next() {
        let mut comp = GenSet::singleton(start);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in t.iter() {
                if !comp.contains(j) && m.m(i, j) != Order::Finite(2) {
                    comp = comp.with(j);
                    stack.push(j);
                }
            }
        }
        remaining = remaining.difference(comp);
        out.push(comp);
    }
    out
}

/// Identifies a connected diagram as a finite type, or `None` when the
/// generated group is infinite.
pub fn classify_component(m: &CoxeterMatrix, comp: GenSet) -> Option<FiniteType> {
    let v = comp.indices();
    let k = v.len();
    match k {
        0 => return None,
        1 => return Some(FiniteType::A(1)),
        2 => return m.m(v[0], v[1]).finite().map(FiniteType::I2),
        _ => {}
    }
    // edges of the diagram
    let mut edges = Vec::new();
    for (a, &i) in v.iter().enumerate() {
        for &j in &v[a + 1..] {
            match m.m(i, j) {
                Order::Infinite => return None,
                Order::Finite(2) => {}
                Order::Finite(x) => edges.push((i, j, x)),
            }
        }
    }
    if edges.len() != k - 1 {
        return None; // contains a cycle
    }
    let degree = |x: usize| edges.iter().filter(|e| e.0 == x || e.1 == x).count();
    let branch: Vec<usize> = v.iter().copied().filter(|&x| degree(x) >= 3).collect();
    if branch.iter().any(|&x| degree(x) > 3) || branch.len() > 1 {
        return None;
    }
    if let Some(&center) = branch.first() {
        if edges.iter().any(|e| e.2 != 3) {
            return None;
        }
        let mut arms: Vec<usize> = edges
            .iter()
            .filter(|e| e.0 == center || e.1 == center)
            .map(|e| {
                let first = if e.0 == center { e.1 } else { e.0 };
                arm_length(&edges, center, first)
            })
            .collect();
        arms.sort_unstable();
        return match (arms[0], arms[1], arms[2]) {
            (1, 1, r) => Some(FiniteType::D(r + 3)),
            (1, 2, 2) => Some(FiniteType::E6),
            (1, 2, 3) => Some(FiniteType::E7),
            (1, 2, 4) => Some(FiniteType::E8),
            _ => None,
        };
    }
    // a path: read the labels in order from one end
    let end = *v.iter().find(|&&x| degree(x) == 1).expect("a path has an end");
    let labels = path_labels(&edges, end);
    let heavy: Vec<(usize, u32)> = labels.iter().copied().enumerate().filter(|&(_, x)| x >= 4).collect();
    match heavy.as_slice() {
        [] => Some(FiniteType::A(k)),
        [(pos, 4)] if *pos == 0 || *pos == k - 2 => Some(FiniteType::B(k)),
        [(1, 4)] if k == 4 => Some(FiniteType::F4),
        [(pos, 5)] if (*pos == 0 || *pos == k - 2) && k == 3 => Some(FiniteType::H3),
        [(pos, 5)] if (*pos == 0 || *pos == k - 2) && k == 4 => Some(FiniteType::H4),
        _ => None,
    }
}

fn arm_length(edges: &[(usize, usize, u32)], from: usize, first: usize) -> usize {
    let mut prev = from;
    let mut cur = first;
    let mut len = 1;
    loop {
        let next = edges.iter().find_map(|e| {
            if e.0 == cur && e.1 != prev {
                Some(e.1)
            } else if e.1 == cur && e.0 != prev {
                Some(e.0)
            } else {
                None
            }
        });
        match next {
            Some(n) => {
                prev = cur;
                cur = n;
                len += 1;
            }
            None => return len,
        }
    }
}

fn path_labels(edges: &[(usize, usize, u32)], end: usize) -> Vec<u32> {
    let mut labels = Vec::new();
    let mut prev = usize::MAX;
    let mut cur = end;
    while let Some(&(a, b, x)) = edges.iter().find(|e| (e.0 == cur && e.1 != prev) || (e.1 == cur && e.0 != prev)) {
        labels.push(x);
        prev = cur;
        cur = if a == cur { b } else { a };
    }
    labels
}

/// Finite types of the irreducible components of `W_T`, or `None` if `W_T`
/// is infinite.
pub fn finite_type(m: &CoxeterMatrix, t: GenSet) -> Option<Vec<FiniteType>> {
    irreducible_components(m, t).into_iter().map(|c| classify_component(m, c)).collect()
}

/// Whether the special subgroup `W_T` is finite.
pub fn is_spherical(m: &CoxeterMatrix, t: GenSet) -> bool {
    finite_type(m, t).is_some()
}

/// `|W_T|` for spherical `t`.
pub fn spherical_order(m: &CoxeterMatrix, t: GenSet) -> Option<BigUint> {
    finite_type(m, t).map(|types| types.into_iter().fold(BigUint::one(), |acc, ty| acc * ty.order()))
}

/// The cosine Gram matrix `(-cos(π/m_st))` restricted to `t`.
pub fn cosine_gram(m: &CoxeterMatrix, t: GenSet) -> Result<Vec<Vec<Surd>>, CoxeterError> {
    let idx = t.indices();
    idx.iter()
        .map(|&i| {
            idx.iter()
                .map(|&j| if i == j { Ok(Surd::one()) } else { Surd::cos_pi_over(m.m(i, j)).map(|c| -c) })
                .collect()
        })
        .collect()
}

/// Leading principal minors of a square matrix over the field, computed by
/// exact elimination without pivoting. Stops early at the first non-positive
/// minor (remaining minors are not reported).
pub fn leading_minors_until_nonpositive(a: &[Vec<Surd>]) -> Vec<Surd> {
    let n = a.len();
    let mut w: Vec<Vec<Surd>> = a.to_vec();
    let mut minors = Vec::with_capacity(n);
    let mut det = Surd::one();
    for k in 0..n {
        let pivot = w[k][k].clone();
        det = &det * &pivot;
        minors.push(det.clone());
        if !det.is_positive() {
            break;
        }
        let inv = pivot.inverse().expect("positive pivot");
        for i in k + 1..n {
            if w[i][k].is_zero() {
                continue;
            }
            let f = &w[i][k] * &inv;
            let (top, rest) = w.split_at_mut(i);
            for (x, y) in rest[0][k..].iter_mut().zip(&top[k][k..]) {
                *x = &*x - &(&f * y);
            }
        }
    }
    minors
}

/// Whether the cosine Gram matrix of `t` is positive definite.
pub fn cosine_gram_definite(m: &CoxeterMatrix, t: GenSet) -> Result<bool, CoxeterError> {
    let g = cosine_gram(m, t)?;
    let minors = leading_minors_until_nonpositive(&g);
    Ok(minors.len() == g.len() && minors.iter().all(Surd::is_positive))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(n: usize, labels: &[u32]) -> CoxeterMatrix {
        let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let mut m = CoxeterMatrix::commuting(names).unwrap();
        for (i, &x) in labels.iter().enumerate() {
            m.set(i, i + 1, Order::Finite(x)).unwrap();
        }
        m
    }

    #[test]
    fn classifies_standard_diagrams() {
        let full = |m: &CoxeterMatrix| finite_type(m, m.all());
        assert_eq!(full(&linear(4, &[3, 3, 3])), Some(vec![FiniteType::A(4)]));
        assert_eq!(full(&linear(3, &[4, 3])), Some(vec![FiniteType::B(3)]));
        assert_eq!(full(&linear(3, &[3, 4])), Some(vec![FiniteType::B(3)]));
        assert_eq!(full(&linear(4, &[3, 4, 3])), Some(vec![FiniteType::F4]));
        assert_eq!(full(&linear(3, &[5, 3])), Some(vec![FiniteType::H3]));
        assert_eq!(full(&linear(4, &[3, 3, 5])), Some(vec![FiniteType::H4]));
        assert_eq!(full(&linear(2, &[7])), Some(vec![FiniteType::I2(7)]));
        assert_eq!(full(&linear(5, &[3, 4, 3, 3])), None); // affine F4
        assert_eq!(full(&linear(3, &[4, 4])), None); // affine C2
        assert_eq!(full(&linear(3, &[6, 3])), None); // affine G2
        assert_eq!(full(&linear(5, &[3, 3, 3, 5])), None);
    }

    #[test]
    fn branched_diagrams() {
        // D4: center 1 joined to 0, 2, 3
        let d4 = CoxeterMatrix::parse("gens a b c d\na b 3\nb c 3\nb d 3").unwrap();
        assert_eq!(finite_type(&d4, d4.all()), Some(vec![FiniteType::D(4)]));
        // E6: arms 1,2,2
        let e6 = CoxeterMatrix::parse("gens a b c d e f\na b 3\nb c 3\nc d 3\nd e 3\nc f 3").unwrap();
        assert_eq!(finite_type(&e6, e6.all()), Some(vec![FiniteType::E6]));
        // affine E6: arms 2,2,2
        let ae6 = CoxeterMatrix::parse("gens a b c d e f g\na b 3\nb c 3\nc d 3\nd e 3\nc f 3\nf g 3").unwrap();
        assert_eq!(finite_type(&ae6, ae6.all()), None);
        assert_eq!(FiniteType::E6.order(), BigUint::from(51_840u32));
        assert_eq!(FiniteType::D(4).order(), BigUint::from(192u32));
    }

    #[test]
    fn spherical_examples() {
        let tri = CoxeterMatrix::parse("gens a b c\n a b 3\n b c 3\n a c 3").unwrap();
        assert!(is_spherical(&tri, GenSet::EMPTY));
        assert!(!is_spherical(&tri, tri.all()));
        let d = CoxeterMatrix::parse("gens s t\ns t inf").unwrap();
        assert!(!is_spherical(&d, d.all()));
        assert_eq!(spherical_order(&linear(4, &[3, 3, 3]), GenSet::full(4)), Some(BigUint::from(120u32)));
    }

    #[test]
    fn gram_oracle_examples() {
        let a2 = linear(2, &[3]);
        let g = cosine_gram(&a2, a2.all()).unwrap();
        let minors = leading_minors_until_nonpositive(&g);
        assert_eq!(minors, vec![Surd::one(), Surd::term(3, 4, 1)]);
        let tri = CoxeterMatrix::parse("gens a b c\n a b 3\n b c 3\n a c 3").unwrap();
        let g = cosine_gram(&tri, tri.all()).unwrap();
        let minors = leading_minors_until_nonpositive(&g);
        assert!(minors[2].is_zero());
        assert!(!cosine_gram_definite(&tri, tri.all()).unwrap());
        assert!(cosine_gram_definite(&tri, GenSet::EMPTY).unwrap());
        assert!(cosine_gram_definite(&linear(3, &[5, 3]), GenSet::full(3)).unwrap());
        assert!(cosine_gram_definite(&linear(2, &[7]), GenSet::full(2)).is_err());
    }
}
