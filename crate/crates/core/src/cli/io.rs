//! Graph and vector files.
//!
//! Graphs are text, one arc `src dst weight` per line with `#` comments, or
//! JSON `{"nodes": [...], "edges": [[src, dst, w], ...]}`. Vectors are text,
//! one `node value` pair per line, or a JSON object `{"node": value}`.
//! `-inf` (text) and `null` (JSON) stand for 𝟘.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use super::json::{json_to_value, value_to_json};
use crate::tropical::{TropicalMatrix, TropicalVector};
use crate::util::natural_cmp;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl InputError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        InputError::Syntax { line, column, message: message.into() }
    }
}

/// A parsed graph together with non-fatal diagnostics.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub matrix: TropicalMatrix,
    pub warnings: Vec<String>,
}

fn parse_weight(token: &str) -> Option<f64> {
    match token {
        "-inf" | "-Infinity" => Some(f64::NEG_INFINITY),
        t => t.parse::<f64>().ok().filter(|w| w.is_finite()),
    }
}

fn sorted_labels(nodes: BTreeSet<String>) -> Vec<String> {
    let mut labels: Vec<String> = nodes.into_iter().collect();
    labels.sort_by(|a, b| natural_cmp(a, b));
    labels
}

/// Node order is natural (numeric-aware) label order. With `nodes`, the
/// node set is exactly that list and arcs naming other nodes are errors.
pub fn parse_graph(text: &str, nodes: Option<&[String]>) -> Result<ParsedGraph, InputError> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text, nodes)
    } else {
        parse_graph_text(text, nodes)
    }
}

struct ArcTable {
    arcs: BTreeMap<(String, String), (f64, String)>,
    warnings: Vec<String>,
}

impl ArcTable {
    fn insert(&mut self, src: &str, dst: &str, w: f64, place: String) {
        if let Some((old, where_)) = self.arcs.insert((src.into(), dst.into()), (w, place.clone())) {
            self.warnings.push(format!(
                "{place}: duplicate arc {src} -> {dst} (weight {old} at {where_}); keeping the later weight {w}"
            ));
        }
    }

    fn build(self, declared: Option<&[String]>) -> Result<ParsedGraph, InputError> {
        let mut set: BTreeSet<String> = BTreeSet::new();
        match declared {
            Some(ns) => {
                set.extend(ns.iter().cloned());
                if set.len() != ns.len() {
                    return Err(InputError::Invalid("duplicate name in --nodes".into()));
                }
                for ((s, d), (_, place)) in &self.arcs {
                    for v in [s, d] {
                        if !set.contains(v) {
                            return Err(InputError::Invalid(format!("{place}: node {v} is not in --nodes")));
                        }
                    }
                }
            }
            None => {
                for (s, d) in self.arcs.keys() {
                    set.insert(s.clone());
                    set.insert(d.clone());
                }
            }
        }
        let labels = sorted_labels(set);
        let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let arcs: Vec<(usize, usize, f64)> =
            self.arcs.iter().map(|((s, d), (w, _))| (index[s.as_str()], index[d.as_str()], *w)).collect();
        let matrix = TropicalMatrix::from_arcs(labels.clone(), arcs).map_err(|e| InputError::Invalid(e.to_string()))?;
        Ok(ParsedGraph { matrix, warnings: self.warnings })
    }
}

fn parse_graph_text(text: &str, nodes: Option<&[String]>) -> Result<ParsedGraph, InputError> {
    let mut table = ArcTable { arcs: BTreeMap::new(), warnings: Vec::new() };
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut col = 0;
        for part in line.split_whitespace() {
            let start = line[col..].find(part).map(|p| p + col).unwrap_or(col);
            col = start + part.len();
            tokens.push((start + 1, part));
        }
        match tokens.len() {
            0 => continue,
            3 => {}
            n => {
                let c = tokens.get(3).map(|t| t.0).unwrap_or(line.trim_end().len() + 1);
                return Err(InputError::at(ln + 1, c, format!("expected `src dst weight`, found {n} fields")));
            }
        }
        let (wc, wt) = tokens[2];
        let w = parse_weight(wt).ok_or_else(|| InputError::at(ln + 1, wc, format!("weight `{wt}` is not a finite number or -inf")))?;
        table.insert(tokens[0].1, tokens[1].1, w, format!("line {}", ln + 1));
    }
    table.build(nodes)
}

fn parse_graph_json(text: &str, nodes: Option<&[String]>) -> Result<ParsedGraph, InputError> {
    let v: Value = serde_json::from_str(text).map_err(|e| InputError::at(e.line(), e.column(), e.to_string()))?;
    let obj = v.as_object().ok_or_else(|| InputError::Invalid("graph JSON must be an object".into()))?;
    let mut table = ArcTable { arcs: BTreeMap::new(), warnings: Vec::new() };
    let edges = obj.get("edges").and_then(Value::as_array).cloned().unwrap_or_default();
    for (k, e) in edges.iter().enumerate() {
        let place = format!("edge {k}");
        let bad = || InputError::Invalid(format!("{place}: expected [src, dst, weight]"));
        let arr = e.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
        let name = |x: &Value| match x {
            Value::String(s) => Some(s.clone()),
            Value::Number(n) => Some(n.to_string()),
            _ => None,
        };
        let (s, d) = (name(&arr[0]).ok_or_else(bad)?, name(&arr[1]).ok_or_else(bad)?);
        let w = json_to_value(&arr[2]).filter(|w| *w != f64::INFINITY).ok_or_else(bad)?;
        table.insert(&s, &d, w, place);
    }
    let listed: Option<Vec<String>> = match obj.get("nodes") {
        Some(Value::Array(ns)) => Some(
            ns.iter()
                .map(|n| match n {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(x) => Ok(x.to_string()),
                    _ => Err(InputError::Invalid("node names must be strings".into())),
                })
                .collect::<Result<_, _>>()?,
        ),
        Some(_) => return Err(InputError::Invalid("`nodes` must be an array".into())),
        None => None,
    };
    table.build(nodes.or(listed.as_deref()))
}

/// Text form: one arc per line in node order. Isolated nodes are lost;
/// use [`emit_graph_json`] to keep them.
pub fn emit_graph_text(m: &TropicalMatrix) -> String {
    let mut out = String::new();
    for (i, j, w) in m.arcs() {
        let _ = writeln!(out, "{} {} {}", m.label(i), m.label(j), w);
    }
    out
}

pub fn emit_graph_json(m: &TropicalMatrix) -> Value {
    let edges: Vec<Value> = m.arcs().into_iter().map(|(i, j, w)| json!([m.label(i), m.label(j), w])).collect();
    json!({ "nodes": m.labels(), "edges": edges })
}

/// Sparse `(node, value)` pairs; values may be `-inf`.
pub fn parse_pairs(text: &str) -> Result<(Vec<(String, f64)>, Vec<String>), InputError> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| InputError::at(e.line(), e.column(), e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| InputError::Invalid("vector JSON must be an object".into()))?;
        let mut out = Vec::new();
        for (k, x) in obj {
            let w = json_to_value(x).ok_or_else(|| InputError::Invalid(format!("value of {k} is not a number, null or \"inf\"")))?;
            out.push((k.clone(), w));
        }
        return Ok((out, Vec::new()));
    }
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut out: Vec<(String, f64)> = Vec::new();
    let mut warnings = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.len() {
            0 => continue,
            2 => {}
            n => return Err(InputError::at(ln + 1, 1, format!("expected `node value`, found {n} fields"))),
        }
        let col = line.find(tokens[1]).map(|c| c + 1).unwrap_or(1);
        let w = match tokens[1] {
            "inf" | "+inf" => f64::INFINITY,
            t => parse_weight(t).ok_or_else(|| InputError::at(ln + 1, col, format!("value `{t}` is not a number")))?,
        };
        match seen.get(tokens[0]) {
            Some(&k) => {
                warnings.push(format!("line {}: duplicate entry for {}; keeping the later value", ln + 1, tokens[0]));
                out[k].1 = w;
            }
            None => {
                seen.insert(tokens[0].to_string(), out.len());
                out.push((tokens[0].to_string(), w));
            }
        }
    }
    Ok((out, warnings))
}

/// A vector aligned with `labels`; unlisted nodes are 𝟘, unknown nodes are errors.
pub fn parse_vector(text: &str, labels: &[String]) -> Result<(TropicalVector, Vec<String>), InputError> {
    let (pairs, warnings) = parse_pairs(text)?;
    let mut values = vec![f64::NEG_INFINITY; labels.len()];
    for (k, w) in pairs {
        let i = labels.iter().position(|l| *l == k).ok_or_else(|| InputError::Invalid(format!("unknown node {k} in vector file")))?;
        values[i] = w;
    }
    Ok((TropicalVector::from_values(values), warnings))
}

pub fn emit_vector_text(labels: &[String], v: &TropicalVector) -> String {
    let mut out = String::new();
    for (l, x) in labels.iter().zip(v.iter()) {
        let _ = match x.0 {
            f64::NEG_INFINITY => writeln!(out, "{l} -inf"),
            f64::INFINITY => writeln!(out, "{l} inf"),
            w => writeln!(out, "{l} {w}"),
        };
    }
    out
}

pub fn emit_vector_json(labels: &[String], v: &TropicalVector) -> Value {
    Value::Object(labels.iter().cloned().zip(v.iter().map(|x| value_to_json(x.0))).collect())
}

pub fn read_file(path: &std::path::Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io { path: path.display().to_string(), message: e.to_string() })
}
