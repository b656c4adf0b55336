//! Compactly supported cohomology of standard realizations, assembled from
//! the relative cohomology of the Davis chamber and the multiplicities of
//! the splittings; plus vcd, duality and descent growth series.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::chamber::ChamberSystem;
use crate::complexes::{davis_chamber_of, davis_relative_groups, punctured_nerve_homology_of};
use crate::coxeter::{
    classify_component, enumerate_ball, enumerate_group, irreducible_components, spherical_poset, CoxeterError,
    CoxeterMatrix, GenSet, SphericalPoset,
};
use crate::decomposition::{DecompositionError, ModuleFamily};
use crate::linalg::{GradedAbelianGroup, GroupEntry, Rank};
use crate::realization::{realization_cohomology, realize, RealizationError};

#[derive(Debug, Error)]
pub enum HcError {
    #[error("building type does not match the Coxeter matrix")]
    TypeMismatch,
    #[error("expected {expected} panel sizes, got {got}")]
    ThicknessCount { expected: usize, got: usize },
    #[error("panel size for `{0}` must be at least 2")]
    ThinPanel(String),
    #[error("for a finite group, supply a concrete building instead of panel sizes")]
    RegularFinite,
    #[error("{0} is not spherical")]
    NotSpherical(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
}

/// How thick the building is.
#[derive(Clone, Debug)]
pub enum Thickness {
    /// `Φ = W`.
    Thin,
    /// Panel size per generator, each at least 2.
    Regular(Vec<u64>),
    /// A concrete finite chamber system.
    Building(ChamberSystem),
}

impl Thickness {
    fn name(&self) -> &'static str {
        match self {
            Thickness::Thin => "thin",
            Thickness::Regular(_) => "regular",
            Thickness::Building(_) => "building",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Contribution {
    #[serde(rename = "T")]
    pub kind: Vec<String>,
    pub local: GroupEntry,
    pub multiplicity: Rank,
}

#[derive(Clone, Debug, Serialize)]
pub struct HcDegree {
    pub degree: i64,
    pub total: GroupEntry,
    pub contributions: Vec<Contribution>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HcReport {
    pub group_finite: bool,
    pub thickness: &'static str,
    pub degrees: Vec<HcDegree>,
}

impl HcReport {
    /// The totals as one graded group.
    pub fn totals(&self) -> GradedAbelianGroup {
        let mut g = GradedAbelianGroup::new();
        for d in &self.degrees {
            g.set(d.degree, d.total.clone());
        }
        g
    }
}

/// `#{w ∈ W : In(w) = T}`, which is `ω` as soon as an infinite irreducible
/// factor meets `T`.
pub fn thin_multiplicity(m: &CoxeterMatrix, t: GenSet) -> Result<Rank, CoxeterError> {
    let mut out = Rank::Finite(1);
    for comp in irreducible_components(m, m.all()) {
        let part = t.intersection(comp);
        let factor = if classify_component(m, comp).is_some() {
            Rank::Finite(enumerate_group(m, comp)?.descent_class_size(part))
        } else if part.is_empty() {
            Rank::Finite(1)
        } else {
            Rank::Omega
        };
        out = out * factor;
    }
    Ok(out)
}

fn multiplicities(
    m: &CoxeterMatrix,
    poset: &SphericalPoset,
    thick: &Thickness,
) -> Result<BTreeMap<GenSet, Rank>, HcError> {
    let finite = poset.group_is_finite();
    let mut out = BTreeMap::new();
    match thick {
        Thickness::Building(phi) => {
            if phi.matrix() != m {
                return Err(HcError::TypeMismatch);
            }
            for (t, r) in ModuleFamily::new(phi).d_ranks()? {
                out.insert(t, Rank::Finite(r));
            }
        }
        Thickness::Regular(sizes) => {
            if sizes.len() != m.rank() {
                return Err(HcError::ThicknessCount { expected: m.rank(), got: sizes.len() });
            }
            if let Some(s) = sizes.iter().position(|&q| q < 2) {
                return Err(HcError::ThinPanel(m.label(s).to_string()));
            }
            if sizes.iter().all(|&q| q == 2) {
                return multiplicities(m, poset, &Thickness::Thin);
            }
            if finite {
                return Err(HcError::RegularFinite);
            }
            for &t in poset.members() {
                out.insert(t, Rank::Omega);
            }
        }
        Thickness::Thin => {
            for &t in poset.members() {
                out.insert(t, thin_multiplicity(m, t)?);
            }
        }
    }
    Ok(out)
}

fn assemble(
    m: &CoxeterMatrix,
    locals: &BTreeMap<GenSet, GradedAbelianGroup>,
    mult: &BTreeMap<GenSet, Rank>,
) -> Vec<HcDegree> {
    let mut by_degree: BTreeMap<i64, Vec<Contribution>> = BTreeMap::new();
    for (t, g) in locals {
        for (k, e) in g.iter() {
            by_degree.entry(k).or_default().push(Contribution {
                kind: m.names(*t),
                local: e.clone(),
                multiplicity: mult[t],
            });
        }
    }
    by_degree
        .into_iter()
        .map(|(degree, contributions)| {
            let total = contributions
                .iter()
                .fold(GroupEntry::zero(), |acc, c| acc.direct_sum(&c.local.tensor_free(c.multiplicity)));
            HcDegree { degree, total, contributions }
        })
        .collect()
}

/// `H*_c(𝒰(Φ, K)) = ⊕_{T∈𝒮} H*(K, K^{S−T}) ⊗ Â^T`, degree by degree.
pub fn hc_standard_realization(m: &CoxeterMatrix, thick: &Thickness) -> Result<HcReport, HcError> {
    let poset = spherical_poset(m);
    let mult = multiplicities(m, &poset, thick)?;
    let locals = davis_relative_groups(m, &poset);
    Ok(HcReport {
        group_finite: poset.group_is_finite(),
        thickness: thick.name(),
        degrees: assemble(m, &locals, &mult),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VcdReport {
    pub vcd: i64,
    /// For finite `W` the value is 0 by convention.
    pub group_finite: bool,
    /// A spherical `T` attaining the maximum.
    #[serde(rename = "T")]
    pub witness: Option<Vec<String>>,
}

/// `max { k : H^k(K, K^{S−T}) ≠ 0 for some T ∈ 𝒮 }`, torsion included.
pub fn vcd(m: &CoxeterMatrix) -> VcdReport {
    let poset = spherical_poset(m);
    if poset.group_is_finite() {
        return VcdReport { vcd: 0, group_finite: true, witness: None };
    }
    let mut best: Option<(i64, GenSet)> = None;
    for (t, g) in davis_relative_groups(m, &poset) {
        if let Some(k) = g.top_degree() {
            if best.is_none_or(|(b, _)| k > b) {
                best = Some((k, t));
            }
        }
    }
    VcdReport { vcd: best.map_or(0, |(k, _)| k), group_finite: false, witness: best.map(|(_, t)| m.names(t)) }
}

#[derive(Clone, Debug, Serialize)]
pub struct PuncturedEntry {
    #[serde(rename = "T")]
    pub kind: Vec<String>,
    pub empty_complex: bool,
    pub reduced: GradedAbelianGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub is_duality: bool,
    /// The duality dimension, one more than the common degree.
    pub dimension: Option<i64>,
    pub groups: Vec<PuncturedEntry>,
    /// Spherical `T` whose group has torsion or sits outside the common degree.
    pub offending: Vec<Vec<String>>,
}

/// Whether every `H̃*(K^{S−T})` is free and concentrated in one common
/// degree, with `H̃^{−1}(∅) = ℤ`.
pub fn duality_check(m: &CoxeterMatrix) -> DualityReport {
    let poset = spherical_poset(m);
    let punct = punctured_nerve_homology_of(m, &poset);
    let groups: Vec<PuncturedEntry> = punct
        .iter()
        .map(|(t, r)| PuncturedEntry {
            kind: m.names(*t),
            empty_complex: r.empty_complex,
            reduced: r.with_empty_convention(),
        })
        .collect();
    // the most common single degree decides which groups are out of line
    let mut votes: BTreeMap<i64, usize> = BTreeMap::new();
    for g in &groups {
        for k in g.reduced.nonzero_degrees() {
            *votes.entry(k).or_default() += 1;
        }
    }
    let common = votes.iter().max_by_key(|&(k, v)| (*v, -k)).map(|(&k, _)| k);
    let offending: Vec<Vec<String>> = groups
        .iter()
        .filter(|g| !g.reduced.is_free() || common.is_some_and(|d| !g.reduced.is_concentrated_in(d)))
        .map(|g| g.kind.clone())
        .collect();
    let is_duality = common.is_some() && offending.is_empty();
    DualityReport { is_duality, dimension: if is_duality { common.map(|d| d + 1) } else { None }, groups, offending }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthSeries {
    #[serde(rename = "T")]
    pub kind: Vec<String>,
    /// `a_ℓ = #{w : l(w) = ℓ, In(w) = T}` for `ℓ = 0..=N`.
    pub coefficients: Vec<usize>,
}

/// Descent-class counts by length, from the ball of radius `n`.
pub fn thin_multiplicity_series(m: &CoxeterMatrix, t: GenSet, n: usize) -> Result<GrowthSeries, CoxeterError> {
    let ball = enumerate_ball(m, n)?;
    let mut coefficients = vec![0; n + 1];
    for e in ball.elements() {
        if e.descent == t {
            coefficients[e.length] += 1;
        }
    }
    Ok(GrowthSeries { kind: m.names(t), coefficients })
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedRow {
    pub p: usize,
    pub groups: GradedAbelianGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedModuleReport {
    pub rows: Vec<GradedRow>,
    pub sum: GradedAbelianGroup,
    /// Cohomology of the realized `𝒰(Φ, K)`.
    pub realized: GradedAbelianGroup,
    pub pass: bool,
}

/// Rows `⊕_{|T|=p} H*(K, K^{S−T}) ⊗ D^T` for a finite chamber system, and
/// their sum against the realized complex.
pub fn graded_module_report(phi: &ChamberSystem) -> Result<GradedModuleReport, HcError> {
    let m = phi.matrix();
    let poset = spherical_poset(m);
    let locals = davis_relative_groups(m, &poset);
    let d = ModuleFamily::new(phi).d_ranks()?;
    let top = poset.max_cardinality();
    let mut rows: Vec<GradedRow> = (0..=top).map(|p| GradedRow { p, groups: GradedAbelianGroup::new() }).collect();
    for (t, g) in &locals {
        let row = &mut rows[t.len()];
        row.groups = row.groups.direct_sum(&g.tensor_free(Rank::Finite(d[t])));
    }
    let sum = rows.iter().fold(GradedAbelianGroup::new(), |acc, r| acc.direct_sum(&r.groups));
    let realized = realization_cohomology(&realize(phi, &davis_chamber_of(m, &poset))?);
    let pass = sum == realized;
    Ok(GradedModuleReport { rows, sum, realized, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chamber::{projective_plane_building, thin_building};
    use crate::complexes::davis_chamber;
    use crate::realization::formula_side;

    fn parse(s: &str) -> CoxeterMatrix {
        CoxeterMatrix::parse(s).unwrap()
    }

    fn free3() -> CoxeterMatrix {
        parse("gens s t u\ns t inf\nt u inf\ns u inf")
    }

    fn triangle() -> CoxeterMatrix {
        parse("gens a b c\na b 3\nb c 3\na c 3")
    }

    #[test]
    fn free_product_report() {
        let r = hc_standard_realization(&free3(), &Thickness::Thin).unwrap();
        assert_eq!(r.degrees.len(), 1);
        let d = &r.degrees[0];
        assert_eq!(d.degree, 1);
        assert_eq!(d.total.free_rank, Rank::Omega);
        assert_eq!(d.contributions.len(), 4);
        assert_eq!(d.contributions[0].local, GroupEntry::free(2));
        assert_eq!(d.contributions[0].multiplicity, Rank::Finite(1));
        assert!(d.contributions[1..].iter().all(|c| c.local == GroupEntry::free(1) && c.multiplicity == Rank::Omega));
    }

    #[test]
    fn triangle_report() {
        let r = hc_standard_realization(&triangle(), &Thickness::Thin).unwrap();
        assert_eq!(r.totals(), GradedAbelianGroup::integers_in(2));
        let thick = hc_standard_realization(&triangle(), &Thickness::Regular(vec![3, 3, 3])).unwrap();
        assert_eq!(thick.totals().get(2).free_rank, Rank::Omega);
        assert!(thick.totals().is_concentrated_in(2));
    }

    #[test]
    fn finite_building_report_matches_formula() {
        let fano = projective_plane_building(2).unwrap();
        let r = hc_standard_realization(fano.matrix(), &Thickness::Building(fano.clone())).unwrap();
        let (formula, _) = formula_side(&fano, &davis_chamber(fano.matrix())).unwrap();
        assert_eq!(r.totals(), formula);
        assert!(matches!(
            hc_standard_realization(fano.matrix(), &Thickness::Regular(vec![3, 3])),
            Err(HcError::RegularFinite)
        ));
        assert!(matches!(hc_standard_realization(&free3(), &Thickness::Building(fano)), Err(HcError::TypeMismatch)));
    }

    #[test]
    fn vcd_examples() {
        assert_eq!(vcd(&free3()).vcd, 1);
        assert_eq!(vcd(&triangle()).vcd, 2);
        assert_eq!(vcd(&parse("gens s t\ns t inf")).vcd, 1);
        let square = parse("gens a b c d\na b 2\nb c 2\nc d 2\na d 2\na c inf\nb d inf");
        assert_eq!(vcd(&square).vcd, 2);
        let a2 = vcd(&parse("gens s t\ns t 3"));
        assert!(a2.group_finite);
        assert_eq!(a2.vcd, 0);
    }

    #[test]
    fn duality_examples() {
        let d = duality_check(&free3());
        assert!(d.is_duality);
        assert_eq!(d.dimension, Some(1));
        let d = duality_check(&triangle());
        assert!(d.is_duality);
        assert_eq!(d.dimension, Some(2));
        let mixed = parse("gens a b c d\na b 3\nb c 3\na c 3\na d inf\nb d inf\nc d inf");
        let d = duality_check(&mixed);
        assert!(!d.is_duality);
        assert!(!d.offending.is_empty());
        let finite = duality_check(&parse("gens s t\ns t 3"));
        assert_eq!((finite.is_duality, finite.dimension), (true, Some(0)));
    }

    #[test]
    fn growth() {
        let g = thin_multiplicity_series(&free3(), GenSet::singleton(0), 8).unwrap();
        assert_eq!(g.coefficients, vec![0, 1, 2, 4, 8, 16, 32, 64, 128]);
        let e = thin_multiplicity_series(&free3(), GenSet::EMPTY, 5).unwrap();
        assert_eq!(e.coefficients, vec![1, 0, 0, 0, 0, 0]);
        let a2 = thin_multiplicity_series(&parse("gens s t\ns t 3"), GenSet::singleton(0), 4).unwrap();
        assert_eq!(a2.coefficients, vec![0, 1, 1, 0, 0]);
    }

    #[test]
    fn thin_multiplicities() {
        let a2 = parse("gens s t\ns t 3");
        assert_eq!(thin_multiplicity(&a2, GenSet::EMPTY).unwrap(), Rank::Finite(1));
        assert_eq!(thin_multiplicity(&a2, GenSet::singleton(0)).unwrap(), Rank::Finite(2));
        // A1 × D∞: only s·1 has descent {s}
        let mixed = parse("gens s a b\na b inf");
        assert_eq!(thin_multiplicity(&mixed, GenSet::singleton(0)).unwrap(), Rank::Finite(1));
        assert_eq!(thin_multiplicity(&mixed, GenSet::singleton(1)).unwrap(), Rank::Omega);
        // the ball agrees: descent {s} stays at one element, {a} keeps growing
        let s = thin_multiplicity_series(&mixed, GenSet::singleton(0), 6).unwrap();
        assert_eq!(s.coefficients.iter().sum::<usize>(), 1);
        let a = thin_multiplicity_series(&mixed, GenSet::singleton(1), 6).unwrap();
        assert!(a.coefficients[1..].iter().all(|&c| c > 0));
    }

    #[test]
    fn graded_rows() {
        let fano = projective_plane_building(2).unwrap();
        let r = graded_module_report(&fano).unwrap();
        assert!(r.pass, "{r:#?}");
        let a2 = parse("gens s t\ns t 3");
        let r = graded_module_report(&thin_building(&a2, a2.all()).unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.rows.len(), 3);
    }
}
