use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use coxtop_core::chamber::{parse_chamber_system, thin_building};
use coxtop_core::complexes::{classical_chamber, davis_chamber};
use coxtop_core::coxeter::is_spherical;
use coxtop_core::{ChamberSystem, CoxeterMatrix, GenSet, MirroredComplex};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn matrix(path: &Path) -> Result<CoxeterMatrix> {
    CoxeterMatrix::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn has_chambers(text: &str) -> bool {
    text.lines().any(|l| l.split('#').next().unwrap_or("").trim_start().starts_with("chambers"))
}

/// True when `path` is a chamber file rather than a bare matrix.
pub fn is_chamber_file(path: &Path) -> Result<bool> {
    Ok(has_chambers(&read(path)?))
}

/// Where a building came from.
pub struct Loaded {
    pub building: ChamberSystem,
    /// Set when the input was a Coxeter matrix and `Φ = W`.
    pub thin: bool,
}

/// A chamber file with its own type, a matrix plus `--chamber-file`, or a
/// matrix of finite type standing for its thin building.
pub fn building(path: &Path, chamber_file: Option<&Path>) -> Result<Loaded> {
    if let Some(cf) = chamber_file {
        let m = matrix(path)?;
        let phi = parse_chamber_system(&read(cf)?, Some(&m)).with_context(|| format!("parsing {}", cf.display()))?;
        return Ok(Loaded { building: phi, thin: false });
    }
    let text = read(path)?;
    if has_chambers(&text) {
        let phi = parse_chamber_system(&text, None).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(Loaded { building: phi, thin: false });
    }
    let m = CoxeterMatrix::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    if !is_spherical(&m, m.all()) {
        bail!("{} has infinite type; supply a chamber file", path.display());
    }
    Ok(Loaded { building: thin_building(&m, m.all())?, thin: true })
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Model {
    /// The simplex with codimension-one mirrors.
    Delta,
    /// The Davis chamber.
    #[value(name = "K")]
    K,
}

pub fn model(m: &CoxeterMatrix, which: Model) -> MirroredComplex {
    match which {
        Model::Delta => classical_chamber(m),
        Model::K => davis_chamber(m),
    }
}

pub fn subset(m: &CoxeterMatrix, text: Option<&str>) -> Result<Option<GenSet>> {
    text.map(|t| m.parse_subset(t).with_context(|| format!("bad generator set `{t}`"))).transpose()
}
