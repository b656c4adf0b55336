//! The filtration of `A` by sums of residue modules, under both readings
//! of its index.

use serde::Serialize;

use crate::chamber::ChamberSystem;
use crate::coxeter::GenSet;
use crate::linalg::{GroupEntry, SubmoduleBasis};

use super::{DecompositionError, ModuleFamily};

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReading {
    /// `"at-most"`: `F_p = Σ_{|T| ≤ p} A^T`; `"at-least"`: `|T| ≥ p`.
    pub reading: &'static str,
    /// `rank F_p` for `p = 0..=max+1`.
    pub ranks: Vec<usize>,
    /// The quotient between `F_p` and `F_{p+1}`, larger over smaller.
    pub graded: Vec<GroupEntry>,
    /// Whether each graded piece is `⊕_{|T|=p} D^T`.
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Filtration {
    /// `Σ_{|T|=p} rank D^T`.
    pub d_ranks: Vec<usize>,
    pub readings: Vec<FiltrationReading>,
    /// The reading whose graded pieces match, if any.
    pub convention: Option<&'static str>,
}

fn reading(
    f: &mut ModuleFamily<'_>,
    name: &'static str,
    keep: impl Fn(usize, usize) -> bool,
    top: usize,
    target: &[GroupEntry],
) -> FiltrationReading {
    let n = f.building().num_chambers();
    let members: Vec<GenSet> = f.poset().members().to_vec();
    let steps: Vec<SubmoduleBasis> = (0..=top + 1)
        .map(|p| {
            let mut gens = Vec::new();
            for &t in members.iter().filter(|t| keep(t.len(), p)) {
                gens.extend(f.residue_module(t).indicators());
            }
            SubmoduleBasis::span(n, &gens)
        })
        .collect();
    let graded: Vec<GroupEntry> = steps
        .windows(2)
        .map(|w| {
            let (big, small) = if w[0].contains_module(&w[1]) { (&w[0], &w[1]) } else { (&w[1], &w[0]) };
            big.quotient_by(small).expect("the steps are nested")
        })
        .collect();
    let matches = graded == target;
    FiltrationReading { reading: name, ranks: steps.iter().map(SubmoduleBasis::rank).collect(), graded, matches }
}

/// Computes the filtration both ways and reports which one has graded
/// pieces `⊕_{|T|=p} D^T`.
pub fn filtration_ranks(phi: &ChamberSystem) -> Result<Filtration, DecompositionError> {
    let mut f = ModuleFamily::new(phi);
    let top = f.poset().max_cardinality();
    let ranks = f.d_ranks()?;
    let mut d_ranks = vec![0usize; top + 1];
    for (t, r) in ranks {
        d_ranks[t.len()] += r;
    }
    let target: Vec<GroupEntry> = d_ranks.iter().map(|&r| GroupEntry::free(r)).collect();
    let readings = vec![
        reading(&mut f, "at-most", |k, p| k <= p, top, &target),
        reading(&mut f, "at-least", |k, p| k >= p, top, &target),
    ];
    let convention = readings.iter().find(|r| r.matches).map(|r| r.reading);
    Ok(Filtration { d_ranks, readings, convention })
}
