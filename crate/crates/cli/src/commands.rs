use std::fmt::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use coxtop_core::chamber::{
    digon_building, emit_chamber_system, product_building, projective_plane_building, thin_building, verify_building,
};
use coxtop_core::complexes::{davis_chamber, metric_flag_check, nerve, relative_groups_over};
use coxtop_core::coxeter::{enumerate_group, finite_type, spherical_order, spherical_poset};
use coxtop_core::decomposition::{
    coefficient_cohomology, filtration_ranks, sigma_formula_check, EmptyFace, ModuleFamily,
};
use coxtop_core::hc::{
    duality_check, graded_module_report, hc_standard_realization, thin_multiplicity_series, vcd, Thickness,
};
use coxtop_core::realization::{coxeter_complex, formula_cross_check, realization_cohomology, realize};
use coxtop_core::{CoxeterMatrix, GenSet};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{self, Model};

/// What a command produced.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    /// Set when a computed identity failed.
    pub violation: Option<String>,
    /// Set when the input itself is rejected after inspection.
    pub invalid: Option<String>,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, violation: None, invalid: None }
    }

    fn check(mut self, pass: bool, what: &str) -> Self {
        if !pass {
            self.violation = Some(what.to_string());
        }
        self
    }
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn number_or_string(s: String) -> Value {
    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
}

pub fn spherical_subsets(path: &Path) -> Result<Outcome> {
    let m = input::matrix(path)?;
    let poset = spherical_poset(&m);
    let mut rows = Vec::new();
    let mut text = String::new();
    for &t in poset.members() {
        let kind = finite_type(&m, t)
            .map(|v| {
                if v.is_empty() {
                    "1".to_string()
                } else {
                    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("x")
                }
            })
            .unwrap_or_default();
        let order = spherical_order(&m, t).map(|o| o.to_string()).unwrap_or_default();
        writeln!(text, "{:<16} {:<10} {}", m.format_subset(t), kind, order).unwrap();
        rows.push(json!({"T": m.names(t), "type": kind, "order": number_or_string(order)}));
    }
    writeln!(
        text,
        "{} spherical subsets; W is {}",
        poset.len(),
        if poset.group_is_finite() { "finite" } else { "infinite" }
    )
    .unwrap();
    Ok(Outcome::ok(json!({"group_finite": poset.group_is_finite(), "subsets": rows}), text))
}

pub fn nerve_cmd(path: &Path) -> Result<Outcome> {
    let m = input::matrix(path)?;
    let l = nerve(&m);
    let text = format!(
        "f-vector {:?}\n{}\n",
        l.f_vector(),
        l.named_faces().iter().map(|f| f.join(" ")).collect::<Vec<_>>().join("\n")
    );
    Ok(Outcome::ok(value(&l.to_json()), text))
}

pub fn davis_chamber_cmd(path: &Path) -> Result<Outcome> {
    let m = input::matrix(path)?;
    let k = davis_chamber(&m);
    let j = k.to_json();
    let mut text = format!("f-vector {:?}\n", k.complex().f_vector());
    for (s, faces) in &j.mirrors {
        writeln!(text, "mirror {s}: {} faces", faces.len()).unwrap();
    }
    Ok(Outcome::ok(value(&j), text))
}

/// `H*(K, K^{S−T})` for each spherical `T`, or `𝓗*(X, X^T; 𝓘(A))` with a
/// chamber file.
pub fn cohomology(path: &Path, t: Option<&str>, chamber_file: Option<&Path>, model: Option<Model>) -> Result<Outcome> {
    if chamber_file.is_some() || input::is_chamber_file(path)? {
        let model = model.unwrap_or(Model::Delta);
        let phi = input::building(path, chamber_file)?.building;
        let m = phi.matrix().clone();
        let u = input::subset(&m, t)?.unwrap_or(GenSet::EMPTY);
        let x = input::model(&m, model);
        let h = coefficient_cohomology(&phi, &x, &x.mirror_union(u), EmptyFace::Counted)?;
        let text = format!("H*(X, X^{}; I(A)): {h}\n", m.format_subset(u));
        return Ok(Outcome::ok(json!({"U": m.names(u), "groups": value(&h), "empty_face": EmptyFace::Counted}), text));
    }
    let m = input::matrix(path)?;
    let only = input::subset(&m, t)?;
    let poset = spherical_poset(&m);
    let mut rows = Vec::new();
    let mut text = String::new();
    let x = input::model(&m, model.unwrap_or(Model::K));
    for (t, g) in relative_groups_over(&x, &poset, m.all()) {
        if only.is_some_and(|o| o != t) {
            continue;
        }
        writeln!(text, "{:<16} {g}", m.format_subset(t)).unwrap();
        rows.push(json!({"T": m.names(t), "groups": value(&g)}));
    }
    if rows.is_empty() {
        bail!("{} is not spherical", m.format_subset(only.unwrap_or(GenSet::EMPTY)));
    }
    Ok(Outcome::ok(Value::Array(rows), text))
}

pub fn realize_cmd(path: &Path, chamber_file: Option<&Path>, model: Model) -> Result<Outcome> {
    let phi = input::building(path, chamber_file)?.building;
    let x = input::model(phi.matrix(), model);
    let r = realize(&phi, &x)?;
    let check = formula_cross_check(&phi, &x)?;
    let text = format!(
        "f-vector {:?}\nrealized: {}\nformula:  {}\n{}\n",
        r.complex.f_vector(),
        check.realized,
        check.formula,
        if check.pass { "agree" } else { "DISAGREE" }
    );
    let json =
        json!({"complex": value(&r.to_json()), "cohomology": value(&check.realized), "cross_check": value(&check)});
    Ok(Outcome::ok(json, text).check(check.pass, "realized cohomology differs from the splitting formula"))
}

pub fn coxeter_complex_cmd(path: &Path) -> Result<Outcome> {
    let m = input::matrix(path)?;
    let r = coxeter_complex(&m)?;
    let h = realization_cohomology(&r);
    let text = format!("f-vector {:?}\n{h}\n", r.complex.f_vector());
    Ok(Outcome::ok(json!({"complex": value(&r.to_json()), "cohomology": value(&h)}), text))
}

pub fn decompose(path: &Path, chamber_file: Option<&Path>) -> Result<Outcome> {
    let loaded = input::building(path, chamber_file)?;
    let phi = &loaded.building;
    let m = phi.matrix();
    let table = if loaded.thin { Some(enumerate_group(m, m.all())?) } else { None };
    let mut fam = ModuleFamily::new(phi);
    let mut rows = Vec::new();
    let mut text = format!("{:<16} {:>6} {:>6} {:>10} {:>6}\n", "T", "A^T", "A^>T", "D^T", "split");
    let mut pass = true;
    for t in fam.poset().members().to_vec() {
        let a = fam.residue_module(t).rank();
        let above = fam.above_module(t).rank();
        let d = fam.d_quotient(t);
        let split = fam.splitting(t).map(|s| s.rank()).ok();
        pass &= d.is_free() && split.is_some();
        let descent = table.as_ref().map(|tb| tb.descent_class_size(t));
        if let Some(c) = descent {
            pass &= d.rank() == Some(c);
        }
        writeln!(
            text,
            "{:<16} {a:>6} {above:>6} {:>10} {:>6}",
            m.format_subset(t),
            d.to_string(),
            split.map_or("-".into(), |s| s.to_string())
        )
        .unwrap();
        let mut row =
            json!({"T": m.names(t), "residues": a, "above": above, "quotient": value(&d), "split_rank": split});
        if let Some(c) = descent {
            row["descent_count"] = json!(c);
        }
        rows.push(row);
    }
    Ok(Outcome::ok(json!({"chambers": phi.num_chambers(), "modules": rows}), text)
        .check(pass, "a quotient has torsion or disagrees with the descent count"))
}

/// The witness for `A^T`, `T = ∅` unless given; `every` checks each
/// spherical `T` and reports a list.
pub fn verify_decomposition(path: &Path, chamber_file: Option<&Path>, t: Option<&str>, every: bool) -> Result<Outcome> {
    let phi = input::building(path, chamber_file)?.building;
    let m = phi.matrix();
    let mut fam = ModuleFamily::new(&phi);
    let bases: Vec<GenSet> = match (input::subset(m, t)?, every) {
        (Some(_), true) => bail!("give either --T or --every"),
        (Some(t), false) => vec![t],
        (None, true) => fam.poset().members().to_vec(),
        (None, false) => vec![GenSet::EMPTY],
    };
    let mut out = Vec::new();
    let mut text = String::new();
    let mut pass = true;
    for t in bases {
        let w = fam.verify_decomposition(t)?;
        pass &= w.pass;
        let ranks: Vec<String> = w.pieces.iter().map(|p| format!("{}:{}", p.kind, p.rank)).collect();
        writeln!(text, "A^{} rank {} = {}; determinant {}", w.base, w.base_rank, ranks.join(" + "), w.determinant)
            .unwrap();
        out.push(value(&w));
    }
    let json = if every { Value::Array(out) } else { out.pop().expect("one witness") };
    Ok(Outcome::ok(json, text).check(pass, "decomposition witness is not unimodular"))
}

pub fn sigma_check(path: &Path, chamber_file: Option<&Path>, t: Option<&str>) -> Result<Outcome> {
    let phi = input::building(path, chamber_file)?.building;
    let m = phi.matrix();
    let poset = spherical_poset(m);
    let only = input::subset(m, t)?;
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut pass = true;
    for &t in poset.members() {
        if only.is_some_and(|o| o != t) {
            continue;
        }
        for u in m.all().difference(t).subsets() {
            let r = sigma_formula_check(&phi, t, u)?;
            pass &= r.pass;
            let degs: Vec<String> = r.rows.iter().map(|row| format!("{}: {}", row.group, row.direct)).collect();
            writeln!(
                text,
                "T={} U={} m={} {} [{}]",
                r.t,
                r.u,
                r.m,
                if r.pass { "ok" } else { "FAIL" },
                degs.join("; ")
            )
            .unwrap();
            reports.push(value(&r));
        }
    }
    Ok(Outcome::ok(Value::Array(reports), text).check(pass, "a face formula failed"))
}

pub fn hc(path: &Path, chamber_file: Option<&Path>, thickness: Option<&str>) -> Result<Outcome> {
    let m = input::matrix(path)?;
    let thick = match (chamber_file, thickness) {
        (Some(_), Some(_)) => bail!("give either --chamber-file or --thickness"),
        (Some(_), None) => Thickness::Building(input::building(path, chamber_file)?.building),
        (None, Some(q)) => Thickness::Regular(
            q.split(',')
                .map(|x| x.trim().parse::<u64>().with_context(|| format!("bad panel size `{x}`")))
                .collect::<Result<_>>()?,
        ),
        (None, None) => Thickness::Thin,
    };
    let r = hc_standard_realization(&m, &thick)?;
    let mut text = String::new();
    for d in &r.degrees {
        writeln!(text, "H^{}_c = {}", d.degree, d.total).unwrap();
        for c in &d.contributions {
            writeln!(text, "    T={{{}}}: ({}) x {}", c.kind.join(","), c.local, c.multiplicity).unwrap();
        }
    }
    if r.degrees.is_empty() {
        text.push_str("H*_c = 0\n");
    }
    Ok(Outcome::ok(value(&r), text))
}

pub fn vcd_cmd(path: &Path) -> Result<Outcome> {
    let m = input::matrix(path)?;
    let r = vcd(&m);
    Ok(Outcome::ok(value(&r), format!("{}\n", r.vcd)))
}

pub fn duality(path: &Path) -> Result<Outcome> {
    let m = input::matrix(path)?;
    let r = duality_check(&m);
    let mut text = match r.dimension {
        Some(n) => format!("duality group of dimension {n}\n"),
        None => "not a duality group\n".to_string(),
    };
    for g in &r.groups {
        writeln!(text, "    T={{{}}}: {}", g.kind.join(","), g.reduced).unwrap();
    }
    for o in &r.offending {
        writeln!(text, "offending T={{{}}}", o.join(",")).unwrap();
    }
    Ok(Outcome::ok(value(&r), text))
}

pub fn growth(path: &Path, t: Option<&str>, n: usize) -> Result<Outcome> {
    let m = input::matrix(path)?;
    let t = input::subset(&m, t)?.unwrap_or(GenSet::EMPTY);
    let g = thin_multiplicity_series(&m, t, n)?;
    let text = format!("{}\n", serde_json::to_string(&g.coefficients)?);
    Ok(Outcome::ok(value(&g), text))
}

pub fn filtration(path: &Path, chamber_file: Option<&Path>) -> Result<Outcome> {
    let phi = input::building(path, chamber_file)?.building;
    let f = filtration_ranks(&phi)?;
    let graded = graded_module_report(&phi)?;
    let mut text = format!("D ranks by |T|: {:?}\n", f.d_ranks);
    for r in &f.readings {
        let g: Vec<String> = r.graded.iter().map(ToString::to_string).collect();
        writeln!(
            text,
            "{:<9} ranks {:?} graded [{}] {}",
            r.reading,
            r.ranks,
            g.join(", "),
            if r.matches { "matches" } else { "-" }
        )
        .unwrap();
    }
    for row in &graded.rows {
        writeln!(text, "p={}: {}", row.p, row.groups).unwrap();
    }
    writeln!(text, "sum: {}\nrealized: {}", graded.sum, graded.realized).unwrap();
    let sums_to_all = f.d_ranks.iter().sum::<usize>() == phi.num_chambers();
    let pass = f.convention.is_some() && sums_to_all && graded.pass;
    Ok(Outcome::ok(json!({"filtration": value(&f), "graded": value(&graded)}), text)
        .check(pass, "graded pieces do not add up"))
}

pub fn verify_building_cmd(path: &Path, chamber_file: Option<&Path>) -> Result<Outcome> {
    let phi = input::building(path, chamber_file)?.building;
    let r = verify_building(&phi);
    let mut text = format!("{} chambers, connected: {}\n", r.chambers, r.connected);
    if !r.thin_panels.is_empty() {
        writeln!(text, "panels of size < 2 for {}", r.thin_panels.join(", ")).unwrap();
    }
    for p in &r.rank_two {
        writeln!(
            text,
            "{}{} (m={}): {} residues, {}",
            p.s,
            p.t,
            p.m,
            p.residues.len(),
            if p.pass { "ok" } else { "FAIL" }
        )
        .unwrap();
    }
    writeln!(text, "{}", if r.pass { "building" } else { "not a building" }).unwrap();
    let pass = r.pass;
    let mut out = Outcome::ok(value(&r), text);
    if !pass {
        out.invalid = Some("input is not a building".into());
    }
    Ok(out)
}

pub fn metric_flag(path: &Path) -> Result<Outcome> {
    let m = input::matrix(path)?;
    let ok = metric_flag_check(&m)?;
    Ok(Outcome::ok(json!({"agree": ok}), format!("{}\n", if ok { "agree" } else { "DISAGREE" }))
        .check(ok, "nerve and cosine Gram test disagree"))
}

#[derive(clap::Subcommand, Debug)]
pub enum BuildingKind {
    /// Flags of the projective plane over the field of order Q (2 or 3).
    Plane {
        #[arg(long, default_value_t = 2)]
        q: u32,
    },
    /// Generalized digon with P chambers per s-panel, Q per t-panel.
    Digon { p: usize, q: usize },
    /// The Coxeter group of a finite-type matrix file.
    Thin { matrix: std::path::PathBuf },
    /// Product of two chamber files with disjoint labels.
    Product { first: std::path::PathBuf, second: std::path::PathBuf },
}

pub fn building(kind: &BuildingKind) -> Result<Outcome> {
    let phi = match kind {
        BuildingKind::Plane { q } => projective_plane_building(*q)?,
        BuildingKind::Digon { p, q } => digon_building(*p, *q)?,
        BuildingKind::Thin { matrix } => {
            let m: CoxeterMatrix = input::matrix(matrix)?;
            thin_building(&m, m.all())?
        }
        BuildingKind::Product { first, second } => {
            let a = input::building(first, None)?.building;
            let b = input::building(second, None)?.building;
            product_building(&a, &b)?
        }
    };
    let text = emit_chamber_system(&phi);
    let panels: Vec<Value> = (0..phi.rank()).map(|s| json!(phi.panels(s))).collect();
    let json = json!({"type": phi.matrix().to_string(), "chambers": phi.num_chambers(), "panels": panels});
    Ok(Outcome::ok(json, text))
}
