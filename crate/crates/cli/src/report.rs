use std::fmt::Write;

use coverlab::spectra::{IntPolynomial, WeightMatrix};
use coverlab::{GraphHom, Partition};
use num::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::document::card_value;

/// Outcome of a command: a JSON object and the exit code.
#[derive(Debug)]
pub struct Report {
    pub body: Map<String, Value>,
    pub code: u8,
}

impl Report {
    pub fn new(command: &str) -> Report {
        let mut body = Map::new();
        body.insert("command".into(), json!(command));
        Report { body, code: 0 }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.body.insert(key.into(), v.into());
        self
    }

    /// Records a verdict; a negative one makes the exit code 1.
    pub fn verdict(&mut self, key: &str, yes: bool) -> &mut Self {
        if !yes {
            self.code = 1;
        }
        self.set(key, yes)
    }

    pub fn json(&self) -> String {
        let mut s = String::new();
        pretty(&mut s, &Value::Object(self.body.clone()), 0);
        s.push('\n');
        s
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.body {
            render(&mut out, k, v, 0);
        }
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    !v.is_object() && !v.is_array()
}

/// Indented JSON that keeps arrays of scalars, such as matrix rows, and
/// small flat objects, such as edge weights, on one line.
fn pretty(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth + 1);
    let close = "  ".repeat(depth);
    match v {
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(|i| serde_json::to_string(i).unwrap()).collect();
            write!(out, "[{}]", parts.join(", ")).unwrap();
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                pretty(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            write!(out, "{close}]").unwrap();
        }
        Value::Object(m) if m.len() <= 4 && m.values().all(is_scalar) => {
            let parts: Vec<String> = m
                .iter()
                .map(|(k, i)| format!("{}: {}", Value::String(k.clone()), serde_json::to_string(i).unwrap()))
                .collect();
            write!(out, "{{{}}}", parts.join(", ")).unwrap();
        }
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, item)) in m.iter().enumerate() {
                write!(out, "{pad}{}: ", Value::String(k.clone())).unwrap();
                pretty(out, item, depth + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            write!(out, "{close}}}").unwrap();
        }
        scalar => out.push_str(&serde_json::to_string(scalar).unwrap()),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Object(_) | Value::Array(_) | Value::String(_) => None,
        other => Some(other.to_string()),
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        writeln!(out, "{pad}{key}: {s}").unwrap();
        return;
    }
    writeln!(out, "{pad}{key}:").unwrap();
    match v {
        Value::String(s) => {
            for line in s.lines() {
                writeln!(out, "{pad}  {line}").unwrap();
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                render(out, &format!("[{i}]"), item, depth + 1);
            }
        }
        Value::Object(m) => {
            for (k, item) in m {
                render(out, k, item, depth + 1);
            }
        }
        _ => unreachable!(),
    }
}

/// Blocks as sorted lists of ids, ordered by their first id.
pub fn partition_value(p: &Partition) -> Value {
    let mut blocks = p.block_ids();
    for b in blocks.iter_mut() {
        b.sort();
    }
    blocks.sort();
    json!(blocks)
}

pub fn hom_value(h: &GraphHom) -> Value {
    let pairs = |m: &std::collections::BTreeMap<String, String>| -> Value {
        Value::Array(m.iter().map(|(k, v)| json!([k, v])).collect())
    };
    json!({"vertexMap": pairs(&h.vertex_map), "edgeMap": pairs(&h.edge_map)})
}

pub fn matrix_value(m: &WeightMatrix) -> Value {
    Value::Array(m.entries().iter().map(|r| Value::Array(r.iter().map(card_value).collect())).collect())
}

/// Descending-power rendering plus the coefficients, constant term first.
pub fn poly_value(p: &IntPolynomial) -> Value {
    let coeffs: Vec<Value> =
        p.coeffs().iter().map(|c| c.to_i64().map(Value::from).unwrap_or_else(|| json!(c.to_string()))).collect();
    json!({"text": p.to_string(), "coefficients": coeffs})
}
