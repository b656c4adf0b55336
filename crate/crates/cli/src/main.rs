//! `coxtop`: Coxeter groups, buildings and the cohomology of their
//! realizations from the command line.
//!
//! Exit status: 0 on success, 1 when the input is rejected, 2 when a
//! computed identity fails or a decomposition does not split.

mod commands;
mod input;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use coxtop_core::decomposition::DecompositionError;
use coxtop_core::hc::HcError;
use coxtop_core::realization::RealizationError;

use commands::{BuildingKind, Outcome};
use input::Model;

#[derive(Parser, Debug)]
#[command(name = "coxtop", version, about = "Coxeter groups, buildings and their realizations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
}

#[derive(Parser, Debug)]
struct Source {
    /// A Coxeter matrix file, or a chamber file with its own type.
    input: PathBuf,
    /// Chamber file for the matrix given as input.
    #[arg(long = "chamber-file")]
    chamber_file: Option<PathBuf>,
}

impl Source {
    fn chambers(&self) -> Option<&Path> {
        self.chamber_file.as_deref()
    }
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// List spherical subsets with their types and orders.
    SphericalSubsets { input: PathBuf },
    /// The nerve as a face list.
    Nerve { input: PathBuf },
    /// The Davis chamber with its mirrors.
    DavisChamber { input: PathBuf },
    /// Relative cohomology of the Davis chamber rel each union of mirrors,
    /// or, with a chamber file, cohomology with residue coefficients.
    Cohomology {
        #[command(flatten)]
        source: Source,
        /// Restrict to this spherical subset (or the mirror set `U`).
        #[arg(long = "T")]
        t: Option<String>,
        /// Chamber model; defaults to `K` for a matrix and `delta` for a building.
        #[arg(long, value_enum)]
        model: Option<Model>,
    },
    /// Realize a finite building over a chamber and compare with the
    /// splitting formula.
    Realize {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "delta")]
        model: Model,
    },
    /// The Coxeter complex of a finite type.
    CoxeterComplex { input: PathBuf },
    /// Ranks of the residue modules, quotients and splittings.
    Decompose {
        #[command(flatten)]
        source: Source,
    },
    /// Unimodularity witness for the splitting of a residue module.
    VerifyDecomposition {
        #[command(flatten)]
        source: Source,
        #[arg(long = "T")]
        t: Option<String>,
        /// Check every spherical subset.
        #[arg(long)]
        every: bool,
    },
    /// Face formulas for every spherical T and every U outside it.
    SigmaCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long = "T")]
        t: Option<String>,
    },
    /// Compactly supported cohomology of the standard realization.
    Hc {
        /// Coxeter matrix file.
        input: PathBuf,
        /// A concrete finite building of this type.
        #[arg(long = "chamber-file")]
        chamber_file: Option<PathBuf>,
        /// Panel size per generator, comma separated.
        #[arg(long)]
        thickness: Option<String>,
    },
    /// Virtual cohomological dimension.
    Vcd { input: PathBuf },
    /// Whether the group is a duality group, and its dimension.
    Duality { input: PathBuf },
    /// Counts of elements with descent set T by length.
    Growth {
        input: PathBuf,
        #[arg(long = "T")]
        t: Option<String>,
        #[arg(long = "N", default_value_t = 8)]
        n: usize,
    },
    /// Filtration of the chamber module and its graded pieces.
    Filtration {
        #[command(flatten)]
        source: Source,
    },
    /// Building axioms for a chamber file.
    VerifyBuilding {
        #[command(flatten)]
        source: Source,
    },
    /// Compare the nerve with the cosine Gram test on every clique.
    MetricFlag { input: PathBuf },
    /// Write a standard chamber file.
    #[command(subcommand)]
    Building(BuildingKind),
}

fn dispatch(verb: &Verb) -> Result<Outcome> {
    match verb {
        Verb::SphericalSubsets { input } => commands::spherical_subsets(input),
        Verb::Nerve { input } => commands::nerve_cmd(input),
        Verb::DavisChamber { input } => commands::davis_chamber_cmd(input),
        Verb::Cohomology { source, t, model } => {
            commands::cohomology(&source.input, t.as_deref(), source.chambers(), *model)
        }
        Verb::Realize { source, model } => commands::realize_cmd(&source.input, source.chambers(), *model),
        Verb::CoxeterComplex { input } => commands::coxeter_complex_cmd(input),
        Verb::Decompose { source } => commands::decompose(&source.input, source.chambers()),
        Verb::VerifyDecomposition { source, t, every } => {
            commands::verify_decomposition(&source.input, source.chambers(), t.as_deref(), *every)
        }
        Verb::SigmaCheck { source, t } => commands::sigma_check(&source.input, source.chambers(), t.as_deref()),
        Verb::Hc { input, chamber_file, thickness } => {
            commands::hc(input, chamber_file.as_deref(), thickness.as_deref())
        }
        Verb::Vcd { input } => commands::vcd_cmd(input),
        Verb::Duality { input } => commands::duality(input),
        Verb::Growth { input, t, n } => commands::growth(input, t.as_deref(), *n),
        Verb::Filtration { source } => commands::filtration(&source.input, source.chambers()),
        Verb::VerifyBuilding { source } => commands::verify_building_cmd(&source.input, source.chambers()),
        Verb::MetricFlag { input } => commands::metric_flag(input),
        Verb::Building(kind) => commands::building(kind),
    }
}

/// Failures of the decomposition itself, as opposed to unusable input.
fn is_violation(e: &anyhow::Error) -> bool {
    fn split_fails(d: &DecompositionError) -> bool {
        matches!(d, DecompositionError::Torsion { .. } | DecompositionError::RankMismatch { .. })
    }
    e.chain().any(|c| {
        if let Some(d) = c.downcast_ref::<DecompositionError>() {
            return split_fails(d);
        }
        match c.downcast_ref::<RealizationError>() {
            Some(RealizationError::Decomposition(d)) => return split_fails(d),
            Some(_) => return false,
            None => {}
        }
        match c.downcast_ref::<HcError>() {
            Some(HcError::Decomposition(d)) | Some(HcError::Realization(RealizationError::Decomposition(d))) => {
                split_fails(d)
            }
            _ => false,
        }
    })
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    let body = if cli.json {
        let mut s = serde_json::to_string_pretty(&outcome.json)?;
        s.push('\n');
        s
    } else {
        outcome.text.clone()
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli.verb) {
        Ok(o) => o,
        Err(e) if is_violation(&e) => {
            eprintln!("violation: {e:#}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&cli, &outcome) {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    if let Some(msg) = &outcome.invalid {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    if let Some(msg) = &outcome.violation {
        eprintln!("violation: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
