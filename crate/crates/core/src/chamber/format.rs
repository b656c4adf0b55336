//! Text format for chamber systems.
//!
//! ```text
//! gens s t        # optional type section, same syntax as a matrix file
//! s t 3
//! chambers 6
//! panel s: {0,1} {2,3} {4,5}
//! panel t: {0,2} {1,4} {3,5}
//! ```

use std::fmt::Write;

use crate::coxeter::CoxeterMatrix;

use super::{ChamberError, ChamberSystem};

fn err(line: usize, message: impl Into<String>) -> ChamberError {
    ChamberError::Parse { line, message: message.into() }
}

fn parse_classes(line: usize, text: &str) -> Result<Vec<Vec<usize>>, ChamberError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('{').ok_or_else(|| err(line, "expected `{`"))?;
        let end = body.find('}').ok_or_else(|| err(line, "unclosed `{`"))?;
        let class = body[..end]
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| err(line, format!("bad chamber index `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(class);
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

/// Parses a chamber system. The type comes from the embedded `gens` section
/// when present, otherwise from `matrix`; when both exist they must agree.
pub fn parse_chamber_system(text: &str, matrix: Option<&CoxeterMatrix>) -> Result<ChamberSystem, ChamberError> {
    let mut header = String::new();
    let mut chambers: Option<(usize, usize)> = None;
    let mut panel_lines: Vec<(usize, String, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            header.push('\n');
            continue;
        }
        if let Some(n) = content.strip_prefix("chambers") {
            if chambers.is_some() {
                return Err(err(line, "repeated `chambers` line"));
            }
            let n = n.trim().parse::<usize>().map_err(|_| err(line, "expected `chambers <n>`"))?;
            chambers = Some((n, line));
        } else if let Some(rest) = content.strip_prefix("panel") {
            if chambers.is_none() {
                return Err(err(line, "`panel` before `chambers`"));
            }
            let (label, classes) = rest.split_once(':').ok_or_else(|| err(line, "expected `panel <s>: ...`"))?;
            panel_lines.push((line, label.trim().to_string(), classes.to_string()));
        } else if chambers.is_none() {
            header.push_str(content);
            header.push('\n');
            continue;
        } else {
            return Err(err(line, format!("unexpected line `{content}`")));
        }
        header.push('\n');
    }
    let (n, _) = chambers.ok_or_else(|| err(1, "missing `chambers <n>` line"))?;
    let embedded = if header.trim().is_empty() { None } else { Some(CoxeterMatrix::parse(&header)?) };
    let m = match (embedded, matrix) {
        (Some(e), Some(given)) => {
            if &e != given {
                return Err(ChamberError::TypeMismatch("embedded type differs from the given matrix".into()));
            }
            e
        }
        (Some(e), None) => e,
        (None, Some(given)) => given.clone(),
        (None, None) => return Err(err(1, "no type: add a `gens` section or supply a matrix")),
    };
    let mut partitions: Vec<Option<Vec<Vec<usize>>>> = vec![None; m.rank()];
    for (line, label, classes) in panel_lines {
        let s = m.index_of(&label).ok_or_else(|| err(line, format!("unknown generator `{label}`")))?;
        if partitions[s].is_some() {
            return Err(err(line, format!("repeated panel line for `{label}`")));
        }
        partitions[s] = Some(parse_classes(line, &classes)?);
    }
    let partitions = partitions
        .into_iter()
        .enumerate()
        .map(|(s, p)| p.ok_or_else(|| err(1, format!("missing panel line for `{}`", m.label(s)))))
        .collect::<Result<Vec<_>, _>>()?;
    ChamberSystem::from_partitions(m, n, &partitions)
}

/// Emits the format read by [`parse_chamber_system`], with the type section.
pub fn emit_chamber_system(phi: &ChamberSystem) -> String {
    let mut out = phi.matrix().to_string();
    if !out.ends_with('\n') {
        out.push('\n');
    }
    writeln!(out, "chambers {}", phi.num_chambers()).unwrap();
    for s in 0..phi.rank() {
        let classes: Vec<String> = phi
            .panels(s)
            .iter()
            .map(|p| format!("{{{}}}", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        writeln!(out, "panel {}: {}", phi.matrix().label(s), classes.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chamber::{digon_building, projective_plane_building};

    #[test]
    fn round_trip() {
        for phi in [projective_plane_building(2).unwrap(), digon_building(2, 3).unwrap()] {
            let text = emit_chamber_system(&phi);
            assert_eq!(parse_chamber_system(&text, None).unwrap(), phi);
        }
    }

    #[test]
    fn external_type() {
        let m = CoxeterMatrix::parse("gens s").unwrap();
        let phi = parse_chamber_system("chambers 3\npanel s: {0,1,2}\n", Some(&m)).unwrap();
        assert_eq!(phi.num_chambers(), 3);
        assert!(parse_chamber_system("chambers 3\npanel s: {0,1,2}\n", None).is_err());
    }

    #[test]
    fn errors_carry_lines() {
        let text = "gens s\nchambers 2\npanel s: {0,x}\n";
        match parse_chamber_system(text, None) {
            Err(ChamberError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let text = "gens s\nchambers 2\npanel u: {0,1}\n";
        assert!(matches!(parse_chamber_system(text, None), Err(ChamberError::Parse { line: 3, .. })));
    }
}
