//! The face `σ = Δ_T` of the classical chamber and its mirrored pieces,
//! computed directly and from the module formulas.

use serde::Serialize;

use crate::chamber::ChamberSystem;
use crate::complexes::{classical_chamber, FaceSet};
use crate::coxeter::GenSet;
use crate::linalg::{GradedAbelianGroup, GroupEntry, SubmoduleBasis};

use super::{coefficient_cohomology_of, DecompositionError, ModuleFamily};

#[derive(Clone, Debug, Serialize)]
pub struct SigmaRow {
    /// `pair`, `boundary` or `union`.
    pub group: &'static str,
    pub degree: i64,
    pub direct: GradedAbelianGroup,
    /// From quotients and sums of residue modules.
    pub quotient_formula: GradedAbelianGroup,
    /// From sums of ranks of the splittings `Â^V`.
    pub splitting_formula: GradedAbelianGroup,
    pub concentrated: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub t: String,
    pub u: String,
    pub m: i64,
    pub rows: Vec<SigmaRow>,
    pub pass: bool,
}

fn single(k: i64, e: GroupEntry) -> GradedAbelianGroup {
    let mut g = GradedAbelianGroup::new();
    g.set(k, e);
    g
}

fn span_of(f: &mut ModuleFamily<'_>, kinds: impl IntoIterator<Item = GenSet>) -> SubmoduleBasis {
    let n = f.building().num_chambers();
    let mut gens = Vec::new();
    for k in kinds {
        gens.extend(f.residue_module(k).indicators());
    }
    SubmoduleBasis::span(n, &gens)
}

/// Compares, for `σ = Δ_T` and `U ⊆ S − T`, the groups `𝓗*(σ, σ^U)`,
/// `𝓗*(σ^U, ∂σ^U)` and `𝓗*(σ^U)` with their closed forms.
///
/// Here `∂(σ^U) = σ^U ∩ σ^{(S−T)−U}`, the empty face is a cell of degree `−1`
/// and `m = |S| − 1 − |T|`. The splitting formula for `𝓗^{m−1}(σ^U)` runs
/// over `V ⊋ T`.
pub fn sigma_formula_check(phi: &ChamberSystem, t: GenSet, u: GenSet) -> Result<SigmaReport, DecompositionError> {
    let mat = phi.matrix();
    let all = mat.all();
    let mut f = ModuleFamily::new(phi);
    if !f.poset().contains(t) {
        return Err(DecompositionError::NotSpherical(mat.format_subset(t)));
    }
    assert!(u.is_subset(all.difference(t)), "U must avoid T");
    let rest = all.difference(t).difference(u);
    let m = mat.rank() as i64 - 1 - t.len() as i64;

    let delta = classical_chamber(mat);
    let sigma = delta.mirror_intersection(t);
    let sigma_u = sigma.intersection(&delta.mirror_union(u));
    let boundary = sigma_u.intersection(&delta.mirror_union(rest));
    let none = FaceSet::none(delta.complex());
    let direct = [
        coefficient_cohomology_of(phi, &delta, &sigma, &sigma_u)?,
        coefficient_cohomology_of(phi, &delta, &sigma_u, &boundary)?,
        coefficient_cohomology_of(phi, &delta, &sigma_u, &none)?,
    ];

    let plus = |s: usize| t.with(s);
    let at = f.residue_module(t).basis.clone();
    let outside = span_of(&mut f, rest.iter().map(plus));
    let inside = span_of(&mut f, u.iter().map(plus));
    let pairs: Vec<GenSet> = u.iter().flat_map(|s| rest.iter().map(move |r| t.with(s).with(r))).collect();
    let cross = span_of(&mut f, pairs);
    let quotient = [
        single(m, at.quotient_by(&outside)?),
        single(m - 1, GroupEntry::free(inside.rank())),
        single(m - 1, inside.quotient_by(&cross)?),
    ];

    let over: Vec<GenSet> = f.poset().at_least(t).collect();
    let mut sums = [0usize; 3];
    for v in over {
        let extra = v.difference(t);
        let r = f.splitting(v)?.rank();
        if extra.is_subset(u) {
            sums[0] += r;
            if !extra.is_empty() {
                sums[2] += r;
            }
        }
        if !extra.intersection(u).is_empty() {
            sums[1] += r;
        }
    }
    let splitting = [
        single(m, GroupEntry::free(sums[0])),
        single(m - 1, GroupEntry::free(sums[1])),
        single(m - 1, GroupEntry::free(sums[2])),
    ];

    let names = ["pair", "boundary", "union"];
    let degrees = [m, m - 1, m - 1];
    let rows: Vec<SigmaRow> = (0..3)
        .map(|i| {
            let d = &direct[i];
            let concentrated = d.is_free() && (d.is_zero() || d.is_concentrated_in(degrees[i]));
            let agree = *d == quotient[i] && *d == splitting[i];
            SigmaRow {
                group: names[i],
                degree: degrees[i],
                direct: d.clone(),
                quotient_formula: quotient[i].clone(),
                splitting_formula: splitting[i].clone(),
                concentrated,
                agree,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.concentrated && r.agree);
    Ok(SigmaReport { t: mat.format_subset(t), u: mat.format_subset(u), m, rows, pass })
}
