//! Serialization: JSON and CSV for machines, a centered diamond for people,
//! and the custom-ambient file format.
//!
//! All integers are written as plain decimal JSON numbers; entries are sorted
//! lexicographically.

use serde::{Deserialize, Serialize};

use crate::algebra::{BigradedDims, Dim, HodgeDiamond, WeightGradedMHS};
use crate::error::{HodgeError, Result};
use crate::variety::{validate_custom_spec, AmbientSpec, CustomAmbient};

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DiamondJson {
    pub dim: usize,
    pub cohomology: Vec<(usize, i32, i32, Dim)>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PieceJson {
    pub weight: i32,
    pub dims: Vec<(i32, i32, Dim)>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MhsJson {
    pub degree: i32,
    pub pieces: Vec<PieceJson>,
}

/// On-disk custom ambient. Field order is alphabetical so that serde's output
/// is already canonical.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AmbientFile {
    pub degree: Dim,
    pub dim: usize,
    pub id: String,
    pub kind: String,
    pub sections: Vec<Vec<(usize, i32, i32, Dim)>>,
}

fn quads(d: &HodgeDiamond) -> Vec<(usize, i32, i32, Dim)> {
    d.degrees()
        .flat_map(|(k, t)| t.iter().map(move |(p, q, v)| (k, p, q, v)))
        .collect()
}

pub fn diamond_json(d: &HodgeDiamond) -> DiamondJson {
    DiamondJson { dim: d.dim(), cohomology: quads(d) }
}

pub fn diamond_to_json(d: &HodgeDiamond) -> String {
    serde_json::to_string(&diamond_json(d)).expect("diamond serializes")
}

fn table_from_quads(dim: usize, quads: &[(usize, i32, i32, Dim)], what: &str) -> Result<Vec<BigradedDims>> {
    let mut table = vec![BigradedDims::new(); 2 * dim + 1];
    for &(k, p, q, v) in quads {
        let slot = table.get_mut(k).ok_or_else(|| {
            HodgeError::Schema(format!("{what}: degree {k} exceeds {} for dim {dim}", 2 * dim))
        })?;
        slot.add_at(p, q, v)?;
    }
    Ok(table)
}

pub fn diamond_from_json(text: &str) -> Result<HodgeDiamond> {
    let parsed: DiamondJson = serde_json::from_str(text).map_err(|e| HodgeError::Schema(e.to_string()))?;
    HodgeDiamond::new(parsed.dim, table_from_quads(parsed.dim, &parsed.cohomology, "diamond")?)
}

pub fn mhs_json(m: &WeightGradedMHS) -> MhsJson {
    MhsJson {
        degree: m.degree(),
        pieces: m
            .pieces()
            .iter()
            .map(|(w, d)| PieceJson { weight: *w, dims: d.iter().collect() })
            .collect(),
    }
}

pub fn mhs_to_json(m: &WeightGradedMHS) -> String {
    serde_json::to_string(&mhs_json(m)).expect("mhs serializes")
}

pub fn diamond_to_csv(d: &HodgeDiamond) -> String {
    let mut out = String::from("k,p,q,value\n");
    for (k, p, q, v) in quads(d) {
        out.push_str(&format!("{k},{p},{q},{v}\n"));
    }
    out
}

/// Centered Hodge diamond, one row per degree, `h^{k,0}` leftmost.
pub fn render_diamond(d: &HodgeDiamond) -> String {
    let n = d.dim() as i32;
    let rows: Vec<Vec<String>> = (0..=2 * n)
        .map(|k| {
            let lo = (k - n).max(0);
            let hi = k.min(n);
            (lo..=hi).rev().map(|p| d.h(p, k - p).to_string()).collect()
        })
        .collect();
    let cell = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(1) + 2;
    let width = cell * (n as usize + 1);
    let mut out = String::new();
    for row in rows {
        let line: String = row.iter().map(|s| format!("{s:^cell$}")).collect();
        let pad = (width - line.len()) / 2;
        out.push_str(format!("{}{line}", " ".repeat(pad)).trim_end());
        out.push('\n');
    }
    out
}

pub fn render_table(t: &BigradedDims) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let cells: Vec<String> = t.iter().map(|(p, q, v)| format!("h^{{{p},{q}}}={v}")).collect();
    cells.join(" ")
}

pub fn render_mhs(m: &WeightGradedMHS) -> Result<String> {
    let mut out = format!("mixed Hodge structure on H^{}\n", m.degree());
    for (w, d) in m.pieces() {
        out.push_str(&format!("  Gr^W_{w}: {}  (dim {})\n", render_table(d), d.total()?));
    }
    out.push_str(&format!("  total dim {}\n", m.total_dim()?));
    Ok(out)
}

/// `P<N>` shorthand for projective space.
pub fn parse_ambient_shorthand(s: &str) -> Result<AmbientSpec> {
    s.strip_prefix('P')
        .or_else(|| s.strip_prefix('p'))
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .map(AmbientSpec::projective)
        .ok_or_else(|| HodgeError::Schema(format!("unknown ambient {s:?}; expected P<N> with N >= 1")))
}

/// Parses without validating the tower invariants.
pub fn parse_custom_ambient(text: &str) -> Result<CustomAmbient> {
    let file: AmbientFile = serde_json::from_str(text).map_err(|e| HodgeError::Schema(e.to_string()))?;
    if file.kind != "custom" {
        return Err(HodgeError::Schema(format!("field `kind`: expected \"custom\", got {:?}", file.kind)));
    }
    if file.sections.len() != file.dim + 1 {
        return Err(HodgeError::Schema(format!(
            "field `sections`: expected {} sections for dim {}, got {}",
            file.dim + 1,
            file.dim,
            file.sections.len()
        )));
    }
    let sections = file
        .sections
        .iter()
        .enumerate()
        .map(|(r, qs)| {
            let dim = file.dim - r;
            table_from_quads(dim, qs, &format!("sections[{r}]")).map(|t| HodgeDiamond::unchecked(dim, t))
        })
        .collect::<Result<_>>()?;
    Ok(CustomAmbient { id: file.id, dim: file.dim, degree: file.degree, sections })
}

/// Parses and validates; every violation is reported.
pub fn parse_ambient_file(text: &str) -> Result<AmbientSpec> {
    let spec = AmbientSpec::Custom(parse_custom_ambient(text)?);
    let report = validate_custom_spec(&spec);
    if report.is_empty() {
        Ok(spec)
    } else {
        let msgs: Vec<String> = report.iter().map(|v| v.to_string()).collect();
        Err(HodgeError::Schema(msgs.join("; ")))
    }
}

/// Canonical form: keys sorted, entries sorted, no whitespace, trailing newline.
pub fn emit_custom_ambient(c: &CustomAmbient) -> String {
    let file = AmbientFile {
        degree: c.degree,
        dim: c.dim,
        id: c.id.clone(),
        kind: "custom".into(),
        sections: c.sections.iter().map(quads).collect(),
    };
    serde_json::to_string(&file).expect("ambient serializes") + "\n"
}
