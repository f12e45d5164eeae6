//! Gram and mergegram JSON documents.
//!
//! Output is canonical: faces list their taxa in universe order, levels and
//! points are sorted, and infinite deaths are written as the string `"inf"`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FormatError, FORMAT_TAG};
use crate::error::{Error, Result};
use crate::gram::{Gram, GramKind, Level};
use crate::combinatorics::FaceSet;
use crate::mergegram::{Interval, LabeledMergegram, Mergegram};
use crate::taxa::{Face, TaxaSet};

#[derive(Serialize, Deserialize)]
struct GramDoc {
    format: String,
    kind: String,
    taxa: Vec<String>,
    levels: Vec<LevelDoc>,
}

#[derive(Serialize, Deserialize)]
struct LevelDoc {
    t: f64,
    faces: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct MergegramDoc {
    format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    taxa: Option<Vec<String>>,
    points: Vec<PointDoc>,
}

#[derive(Serialize, Deserialize)]
struct PointDoc {
    birth: f64,
    death: Value,
    mult: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<Vec<String>>,
}

fn syntax(e: serde_json::Error) -> Error {
    FormatError::new(e.line(), e.column(), e.to_string()).into()
}

fn schema(msg: impl Into<String>) -> Error {
    FormatError::new(1, 1, msg).into()
}

fn check_tag(tag: &str) -> Result<()> {
    if tag != FORMAT_TAG {
        return Err(schema(format!("unsupported format {tag:?}, expected {FORMAT_TAG:?}")));
    }
    Ok(())
}

fn names(taxa: &TaxaSet, f: Face) -> Vec<String> {
    taxa.face_labels(f).into_iter().map(String::from).collect()
}

fn pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn death_value(d: f64) -> Value {
    if d.is_infinite() {
        Value::String("inf".into())
    } else {
        serde_json::json!(d)
    }
}

fn parse_death(v: &Value) -> Result<f64> {
    match v {
        Value::String(s) if s == "inf" => Ok(f64::INFINITY),
        Value::Number(n) => n.as_f64().ok_or_else(|| schema("death is not a number")),
        other => Err(schema(format!("death must be a number or \"inf\", found {other}"))),
    }
}

pub fn gram_to_json(g: &Gram) -> String {
    let taxa = g.taxa();
    pretty(&GramDoc {
        format: FORMAT_TAG.into(),
        kind: g.kind().as_str().into(),
        taxa: taxa.labels().to_vec(),
        levels: g
            .levels()
            .iter()
            .map(|l| LevelDoc {
                t: l.critical,
                faces: l.faces.faces().iter().map(|f| names(taxa, *f)).collect(),
            })
            .collect(),
    })
}

/// Parses and validates a gram, including the declared kind.
pub fn gram_from_json(text: &str) -> Result<Gram> {
    let doc: GramDoc = serde_json::from_str(text).map_err(syntax)?;
    check_tag(&doc.format)?;
    let kind: GramKind = doc.kind.parse()?;
    let taxa = TaxaSet::new(doc.taxa)?;
    let mut levels = Vec::with_capacity(doc.levels.len());
    for l in doc.levels {
        let faces = l.faces.iter().map(|f| taxa.face(f)).collect::<Result<Vec<_>>>()?;
        levels.push(Level { critical: l.t, faces: FaceSet::new(faces)? });
    }
    Gram::new(taxa, levels, kind)
}

pub fn mergegram_to_json(m: &Mergegram) -> String {
    pretty(&MergegramDoc {
        format: FORMAT_TAG.into(),
        taxa: None,
        points: m
            .points()
            .iter()
            .map(|(i, k)| PointDoc { birth: i.birth, death: death_value(i.death), mult: *k, label: None })
            .collect(),
    })
}

pub fn labeled_mergegram_to_json(m: &LabeledMergegram) -> String {
    let taxa = m.taxa();
    pretty(&MergegramDoc {
        format: FORMAT_TAG.into(),
        taxa: Some(taxa.labels().to_vec()),
        points: m
            .sorted_entries()
            .into_iter()
            .map(|(f, i)| PointDoc {
                birth: i.birth,
                death: death_value(i.death),
                mult: 1,
                label: Some(names(taxa, f)),
            })
            .collect(),
    })
}

fn read_points(doc: &MergegramDoc) -> Result<Vec<(Interval, usize, Option<&Vec<String>>)>> {
    doc.points
        .iter()
        .map(|p| {
            let death = parse_death(&p.death)?;
            if !(p.birth.is_finite() && p.birth < death) {
                return Err(schema(format!("degenerate interval [{}, {})", p.birth, death)));
            }
            if p.mult == 0 {
                return Err(schema("multiplicity must be positive"));
            }
            Ok((Interval::new(p.birth, death), p.mult, p.label.as_ref()))
        })
        .collect()
}

/// Reads either document flavour; labels are dropped.
pub fn mergegram_from_json(text: &str) -> Result<Mergegram> {
    let doc: MergegramDoc = serde_json::from_str(text).map_err(syntax)?;
    check_tag(&doc.format)?;
    let pts = read_points(&doc)?;
    Ok(Mergegram::from_intervals(
        pts.into_iter().flat_map(|(i, k, _)| std::iter::repeat_n(i, k)),
    ))
}

pub fn labeled_mergegram_from_json(text: &str) -> Result<LabeledMergegram> {
    let doc: MergegramDoc = serde_json::from_str(text).map_err(syntax)?;
    check_tag(&doc.format)?;
    let taxa = TaxaSet::new(doc.taxa.clone().ok_or_else(|| schema("missing \"taxa\""))?)?;
    let mut entries = std::collections::BTreeMap::new();
    for (i, k, label) in read_points(&doc)? {
        let label = label.ok_or_else(|| schema("point without \"label\""))?;
        if k != 1 {
            return Err(schema("labelled points must have multiplicity 1"));
        }
        let f = taxa.face(label)?;
        if entries.insert(f, i).is_some() {
            return Err(schema(format!("label {} appears twice", taxa.display(f))));
        }
    }
    LabeledMergegram::new(taxa, entries)
}
