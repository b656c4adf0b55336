//! Coxeter matrices, generator subsets and the line-oriented matrix format.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::CoxeterError;

/// Largest supported number of generators (subsets are stored as `u32` bitmasks).
pub const MAX_RANK: usize = 32;

/// The order `m_st` of the product of two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// A subset of the generating set, indexed by generator position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GenSet(u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn from_bits(bits: u32) -> Self {
        GenSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// All generators `0..rank`.
    pub fn full(rank: usize) -> Self {
        if rank >= 32 {
            GenSet(u32::MAX)
        } else {
            GenSet((1u32 << rank) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        GenSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(GenSet::EMPTY, |acc, i| acc.with(i))
    }

    pub fn with(self, i: usize) -> Self {
        GenSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        GenSet(self.0 & !(1 << i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: GenSet) -> Self {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> Self {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: GenSet) -> Self {
        GenSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: GenSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in canonical order.
    pub fn subsets(self) -> Vec<GenSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = self.0;
        loop {
            out.push(GenSet(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.0;
        }
        out.sort();
        out
    }
}

/// Canonical order: by cardinality, then lexicographically on sorted indices.
impl Ord for GenSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for GenSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A Coxeter matrix over a finite ordered set of named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<Order>>,
}

impl CoxeterMatrix {
    /// Builds a matrix where every pair commutes (`m = 2`).
    pub fn commuting(labels: Vec<String>) -> Result<Self, CoxeterError> {
        if labels.is_empty() {
            return Err(CoxeterError::EmptyGenerators);
        }
        if labels.len() > MAX_RANK {
            return Err(CoxeterError::TooManyGenerators(labels.len()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(CoxeterError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Order::Finite(1) } else { Order::Finite(2) }).collect())
            .collect();
        Ok(CoxeterMatrix { labels, entries })
    }

    /// Builds a matrix from labels and a list of `(s, t, m)` entries.
    pub fn from_entries<S: AsRef<str>>(labels: &[S], pairs: &[(&str, &str, Order)]) -> Result<Self, CoxeterError> {
        let mut m = Self::commuting(labels.iter().map(|s| s.as_ref().to_string()).collect())?;
        for &(a, b, order) in pairs {
            let i = m.index_of(a).ok_or_else(|| CoxeterError::UnknownLabel(a.to_string()))?;
            let j = m.index_of(b).ok_or_else(|| CoxeterError::UnknownLabel(b.to_string()))?;
            m.set(i, j, order)?;
        }
        Ok(m)
    }

    /// Sets `m_ij = m_ji`.
    pub fn set(&mut self, i: usize, j: usize, order: Order) -> Result<(), CoxeterError> {
        if i == j {
            return Err(CoxeterError::DiagonalEntry(self.labels[i].clone()));
        }
        if let Order::Finite(m) = order {
            if m < 2 {
                return Err(CoxeterError::OrderTooSmall(m));
            }
        }
        self.entries[i][j] = order;
        self.entries[j][i] = order;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn m(&self, i: usize, j: usize) -> Order {
        self.entries[i][j]
    }

    pub fn all(&self) -> GenSet {
        GenSet::full(self.rank())
    }

    /// Parses a whitespace- or comma-separated list of labels into a subset.
    pub fn parse_subset(&self, text: &str) -> Result<GenSet, CoxeterError> {
        let mut set = GenSet::EMPTY;
        for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let tok = tok.trim_matches(|c| c == '{' || c == '}');
            if tok.is_empty() {
                continue;
            }
            let i = self.index_of(tok).ok_or_else(|| CoxeterError::UnknownLabel(tok.to_string()))?;
            set = set.with(i);
        }
        Ok(set)
    }

    /// Names of the generators in `t`, in generator order.
    pub fn names(&self, t: GenSet) -> Vec<String> {
        t.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `{a,b}` style rendering of a subset.
    pub fn format_subset(&self, t: GenSet) -> String {
        format!("{{{}}}", self.names(t).join(","))
    }

    /// Block sum of two matrices with commuting cross entries.
    pub fn block_sum(&self, other: &CoxeterMatrix) -> Result<CoxeterMatrix, CoxeterError> {
        let mut labels = self.labels.clone();
        for l in &other.labels {
            if labels.contains(l) {
                return Err(CoxeterError::DuplicateLabel(l.clone()));
            }
            labels.push(l.clone());
        }
        let mut out = CoxeterMatrix::commuting(labels)?;
        let k = self.rank();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                out.entries[i][j] = self.entries[i][j];
            }
        }
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                out.entries[k + i][k + j] = other.entries[i][j];
            }
        }
        Ok(out)
    }

    /// The matrix of the special subgroup generated by `t`, relabelled.
    pub fn restrict(&self, t: GenSet) -> CoxeterMatrix {
        let idx = t.indices();
        let labels = idx.iter().map(|&i| self.labels[i].clone()).collect();
        let entries = idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect()).collect();
        CoxeterMatrix { labels, entries }
    }

    /// Parses the line-oriented text format.
    ///
    /// ```text
    /// # triangle group
    /// gens a b c
    /// a b 3
    /// b c 3
    /// a c inf
    /// ```
    pub fn parse(text: &str) -> Result<Self, CoxeterError> {
        let mut matrix: Option<CoxeterMatrix> = None;
        let mut seen: HashMap<(usize, usize), Order> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            let at = |e: CoxeterError| CoxeterError::Parse { line, source: Box::new(e) };
            match matrix.as_mut() {
                None => {
                    if toks[0] != "gens" {
                        return Err(at(CoxeterError::MissingGens));
                    }
                    let labels = toks[1..].iter().map(|s| s.to_string()).collect();
                    matrix = Some(CoxeterMatrix::commuting(labels).map_err(at)?);
                }
                Some(m) => {
                    if toks.len() != 3 {
                        return Err(at(CoxeterError::Malformed(content.to_string())));
                    }
                    let i = m.index_of(toks[0]).ok_or_else(|| at(CoxeterError::UnknownLabel(toks[0].into())))?;
                    let j = m.index_of(toks[1]).ok_or_else(|| at(CoxeterError::UnknownLabel(toks[1].into())))?;
                    let order = parse_order(toks[2]).map_err(at)?;
                    let key = (i.min(j), i.max(j));
                    if let Some(prev) = seen.get(&key) {
                        if *prev != order {
                            return Err(at(CoxeterError::ConflictingEntry(toks[0].to_string(), toks[1].to_string())));
                        }
                    }
                    m.set(i, j, order).map_err(at)?;
                    seen.insert(key, order);
                }
            }
        }
        matrix.ok_or(CoxeterError::EmptyGenerators)
    }
}

fn parse_order(tok: &str) -> Result<Order, CoxeterError> {
    if tok == "inf" || tok == "∞" {
        return Ok(Order::Infinite);
    }
    let m: u32 = tok.parse().map_err(|_| CoxeterError::Malformed(tok.to_string()))?;
    if m < 2 {
        return Err(CoxeterError::OrderTooSmall(m));
    }
    Ok(Order::Finite(m))
}

/// Emits the text format; commuting pairs are omitted.
impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.labels.join(" "))?;
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if self.entries[i][j] != Order::Finite(2) {
                    writeln!(f, "{} {} {}", self.labels[i], self.labels[j], self.entries[i][j])?;
                }
            }
        }
        Ok(())
    }
}
