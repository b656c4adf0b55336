//! Finitely many degrees of abelian groups, each a free part plus torsion.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use super::matrix::IntMatrix;
use super::snf::dense_invariant_factors;

/// A free rank that is either finite or countably infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(usize),
    Omega,
}

impl Rank {
    pub fn is_zero(self) -> bool {
        self == Rank::Finite(0)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Rank::Finite(n) => Some(n),
            Rank::Omega => None,
        }
    }
}

impl std::ops::Add for Rank {
    type Output = Rank;

    fn add(self, other: Rank) -> Rank {
        match (self, other) {
            (Rank::Finite(a), Rank::Finite(b)) => Rank::Finite(a + b),
            _ => Rank::Omega,
        }
    }
}

impl std::ops::Mul for Rank {
    type Output = Rank;

    fn mul(self, other: Rank) -> Rank {
        match (self, other) {
            (Rank::Finite(0), _) | (_, Rank::Finite(0)) => Rank::Finite(0),
            (Rank::Finite(a), Rank::Finite(b)) => Rank::Finite(a * b),
            _ => Rank::Omega,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Omega => write!(f, "ω"),
        }
    }
}

impl Serialize for Rank {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Rank::Finite(n) => s.serialize_u64(*n as u64),
            Rank::Omega => s.serialize_str("omega"),
        }
    }
}

/// Serializes a big integer as a JSON number when it fits, else as a string.
pub(crate) fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub(crate) struct BigIntJson<'a>(pub &'a BigInt);

impl Serialize for BigIntJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

pub(crate) fn serialize_bigints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&BigIntJson(x))?;
    }
    seq.end()
}

struct BigIntRow<'a>(&'a [BigInt]);

impl Serialize for BigIntRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigints(self.0, s)
    }
}

pub(crate) fn serialize_bigint_rows<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for r in rows {
        seq.serialize_element(&BigIntRow(r))?;
    }
    seq.end()
}

/// Rewrites a multiset of cyclic orders as invariant factors `d₁ | d₂ | ...`,
/// dropping trivial factors.
pub fn normalize_torsion(orders: &[BigInt]) -> Vec<BigInt> {
    let orders: Vec<&BigInt> = orders.iter().filter(|x| !x.is_one() && !x.is_zero()).collect();
    if orders.len() <= 1 {
        return orders.into_iter().cloned().collect();
    }
    let n = orders.len();
    let mut d = IntMatrix::zeros(n, n);
    for (i, x) in orders.iter().enumerate() {
        d[(i, i)] = (*x).clone();
    }
    dense_invariant_factors(&d).into_iter().filter(|x| !x.is_one()).collect()
}

/// One abelian group `ℤ^r ⊕ ⊕ ℤ/d_i`, possibly with countably many copies of
/// some torsion summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupEntry {
    pub free_rank: Rank,
    /// Invariant factors greater than 1, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// Orders of cyclic summands occurring with countably infinite multiplicity.
    pub torsion_omega: Vec<BigInt>,
}

impl GroupEntry {
    pub fn zero() -> Self {
        GroupEntry::finite(0, Vec::new())
    }

    pub fn free(rank: usize) -> Self {
        GroupEntry::finite(rank, Vec::new())
    }

    pub fn finite(rank: usize, torsion: Vec<BigInt>) -> Self {
        GroupEntry { free_rank: Rank::Finite(rank), torsion: normalize_torsion(&torsion), torsion_omega: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank.is_zero() && self.torsion.is_empty() && self.torsion_omega.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty() && self.torsion_omega.is_empty()
    }

    /// Finite free rank, or `None` for `ω`.
    pub fn rank(&self) -> Option<usize> {
        self.free_rank.finite()
    }

    pub fn direct_sum(&self, other: &GroupEntry) -> GroupEntry {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        let mut omega: Vec<BigInt> = self.torsion_omega.iter().chain(&other.torsion_omega).cloned().collect();
        omega.sort();
        omega.dedup();
        let torsion = normalize_torsion(&t).into_iter().filter(|x| !omega.contains(x)).collect();
        GroupEntry { free_rank: self.free_rank + other.free_rank, torsion, torsion_omega: omega }
    }

    /// Tensor product with a free abelian group of the given rank.
    pub fn tensor_free(&self, rank: Rank) -> GroupEntry {
        match rank {
            Rank::Finite(0) => GroupEntry::zero(),
            Rank::Finite(k) => {
                let t: Vec<BigInt> = (0..k).flat_map(|_| self.torsion.iter().cloned()).collect();
                GroupEntry {
                    free_rank: self.free_rank * rank,
                    torsion: normalize_torsion(&t),
                    torsion_omega: self.torsion_omega.clone(),
                }
            }
            Rank::Omega => {
                let mut omega: Vec<BigInt> = self.torsion.iter().chain(&self.torsion_omega).cloned().collect();
                omega.sort();
                omega.dedup();
                GroupEntry { free_rank: self.free_rank * rank, torsion: Vec::new(), torsion_omega: omega }
            }
        }
    }
}

impl fmt::Display for GroupEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            Rank::Finite(0) => {}
            Rank::Finite(1) => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        parts.extend(self.torsion_omega.iter().map(|d| format!("(Z/{d})^ω")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for GroupEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Seq<'a>(&'a [BigInt]);
        impl Serialize for Seq<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_bigints(self.0, s)
            }
        }
        let n = if self.torsion_omega.is_empty() { 2 } else { 3 };
        let mut m = s.serialize_map(Some(n))?;
        m.serialize_entry("free_rank", &self.free_rank)?;
        m.serialize_entry("torsion", &Seq(&self.torsion))?;
        if !self.torsion_omega.is_empty() {
            m.serialize_entry("torsion_omega", &Seq(&self.torsion_omega))?;
        }
        m.end()
    }
}

/// A group in each of finitely many integer degrees; zero degrees are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedAbelianGroup {
    degrees: BTreeMap<i64, GroupEntry>,
}

impl GradedAbelianGroup {
    pub fn new() -> Self {
        Self::default()
    }

    /// `ℤ` in degree `k` and nothing else.
    pub fn integers_in(k: i64) -> Self {
        let mut g = Self::new();
        g.set(k, GroupEntry::free(1));
        g
    }

    /// Free groups of the given ranks in degrees `0, 1, ...`.
    pub fn from_free_ranks(ranks: &[usize]) -> Self {
        let mut g = Self::new();
        for (k, &r) in ranks.iter().enumerate() {
            g.set(k as i64, GroupEntry::free(r));
        }
        g
    }

    pub fn set(&mut self, k: i64, entry: GroupEntry) {
        if entry.is_zero() {
            self.degrees.remove(&k);
        } else {
            self.degrees.insert(k, entry);
        }
    }

    pub fn get(&self, k: i64) -> GroupEntry {
        self.degrees.get(&k).cloned().unwrap_or_else(GroupEntry::zero)
    }

    /// Nonzero degrees in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &GroupEntry)> {
        self.degrees.iter().map(|(&k, e)| (k, e))
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.degrees.values().all(GroupEntry::is_free)
    }

    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.degrees.keys().copied().collect()
    }

    pub fn top_degree(&self) -> Option<i64> {
        self.degrees.keys().next_back().copied()
    }

    /// The single nonzero degree, if there is exactly one.
    pub fn concentrated_degree(&self) -> Option<i64> {
        match self.degrees.len() {
            1 => self.degrees.keys().next().copied(),
            _ => None,
        }
    }

    /// Whether every nonzero degree equals `k` (vacuously true for zero).
    pub fn is_concentrated_in(&self, k: i64) -> bool {
        self.degrees.keys().all(|&d| d == k)
    }

    pub fn direct_sum(&self, other: &GradedAbelianGroup) -> GradedAbelianGroup {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            let sum = out.get(k).direct_sum(e);
            out.set(k, sum);
        }
        out
    }

    pub fn tensor_free(&self, rank: Rank) -> GradedAbelianGroup {
        let mut out = Self::new();
        for (k, e) in self.iter() {
            out.set(k, e.tensor_free(rank));
        }
        out
    }

    /// `Σ (−1)^k rank H^k`, when every rank is finite.
    pub fn euler_characteristic(&self) -> Option<i64> {
        let mut chi = 0i64;
        for (k, e) in self.iter() {
            let r = e.rank()? as i64;
            chi += if k.rem_euclid(2) == 0 { r } else { -r };
        }
        Some(chi)
    }

    /// Free ranks in degrees `0..=top`, for compact display.
    pub fn free_ranks(&self) -> Vec<Rank> {
        let top = self.top_degree().unwrap_or(-1).max(-1);
        (0..=top).map(|k| self.get(k).free_rank).collect()
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(k, e)| format!("H^{k} = {e}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Serialize for GradedAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.degrees.len()))?;
        for (k, e) in &self.degrees {
            m.serialize_entry(&k.to_string(), e)?;
        }
        m.end()
    }
}
