//! JSON graph documents: parsing with field context and canonical output.

use std::collections::BTreeMap;
use std::path::Path;

use coverlab::graph::{RawArc, RawEdge};
use coverlab::{Card, Graph, GraphHom, RawDigraph, RawGraph, WeightedDigraph};
use num::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Graph,
    Digraph,
    Multigraph,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Graph => "graph",
            Kind::Digraph => "digraph",
            Kind::Multigraph => "multigraph",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDoc {
    kind: Kind,
    #[serde(default)]
    name: Option<String>,
    vertices: Vec<String>,
    #[serde(default)]
    edges: Option<Vec<FileEdge>>,
    #[serde(default)]
    arcs: Option<Vec<FileArc>>,
    #[serde(default)]
    root: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileEdge {
    id: String,
    ends: Vec<String>,
    #[serde(default)]
    weights: Option<BTreeMap<String, Value>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileArc {
    id: String,
    tail: String,
    head: String,
    weight: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct FileHom {
    vertex_map: BTreeMap<String, String>,
    edge_map: BTreeMap<String, String>,
}

/// A validated document.
#[derive(Debug, Clone)]
pub enum Document {
    Graph { kind: Kind, name: Option<String>, graph: Graph },
    Digraph { name: Option<String>, digraph: WeightedDigraph },
}

impl Document {
    pub fn kind(&self) -> Kind {
        match self {
            Document::Graph { kind, .. } => *kind,
            Document::Digraph { .. } => Kind::Digraph,
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Document::Graph { kind, name, graph } => graph_value(graph, *kind, name.as_deref()),
            Document::Digraph { name, digraph } => digraph_value(digraph, name.as_deref()),
        }
    }
}

fn parse_weight(v: &Value, at: &str) -> Result<Card, String> {
    match v {
        Value::String(s) if s == "omega" => Ok(Card::Omega),
        Value::Number(n) => match n.as_u64() {
            Some(k) => Ok(Card::from(k)),
            None => Err(format!("{at}: weight must be ≥ 1 or omega")),
        },
        _ => Err(format!("{at}: weight must be ≥ 1 or omega")),
    }
}

/// Parses and validates a document. Schema problems and graph violations
/// are collected together.
pub fn parse_document(text: &str) -> Result<Document, Vec<String>> {
    let doc: FileDoc = serde_json::from_str(text).map_err(|e| vec![e.to_string()])?;
    let mut errors = Vec::new();
    let doc = match doc.kind {
        Kind::Graph | Kind::Multigraph => {
            if doc.arcs.is_some() {
                errors.push("`arcs` belongs to digraphs; use `edges`".into());
            }
            if doc.root.is_some() {
                errors.push("`root` is only meaningful for digraphs".into());
            }
            let mut raw = if doc.kind == Kind::Multigraph { RawGraph::multigraph() } else { RawGraph::weighted() };
            raw.vertices = doc.vertices;
            for (i, e) in doc.edges.unwrap_or_default().into_iter().enumerate() {
                let mut weights = BTreeMap::new();
                match (doc.kind, e.weights) {
                    (Kind::Multigraph, Some(_)) => {
                        errors.push(format!("edges[{i}] (`{}`): multigraph edges carry no weights", e.id))
                    }
                    (_, Some(ws)) => {
                        for (v, w) in ws {
                            match parse_weight(&w, &format!("edges[{i}].weights.{v}")) {
                                Ok(c) => {
                                    weights.insert(v, c);
                                }
                                Err(m) => errors.push(m),
                            }
                        }
                    }
                    (Kind::Multigraph, None) => {
                        for v in &e.ends {
                            weights.insert(v.clone(), Card::one());
                        }
                    }
                    _ => errors.push(format!("edges[{i}] (`{}`): missing `weights`", e.id)),
                }
                raw.edges.push(RawEdge { id: e.id, ends: e.ends, weights });
            }
            errors.extend(raw.validate().iter().map(|v| v.to_string()));
            if !errors.is_empty() {
                return Err(errors);
            }
            let graph = raw.build().map_err(|e| vec![e.to_string()])?;
            Document::Graph { kind: doc.kind, name: doc.name, graph }
        }
        Kind::Digraph => {
            if doc.edges.is_some() {
                errors.push("`edges` belongs to graphs; use `arcs`".into());
            }
            let mut raw = RawDigraph::new();
            raw.vertices = doc.vertices;
            raw.root = doc.root;
            for (i, a) in doc.arcs.unwrap_or_default().into_iter().enumerate() {
                match parse_weight(&a.weight, &format!("arcs[{i}].weight")) {
                    Ok(weight) => raw.arcs.push(RawArc { id: a.id, tail: a.tail, head: a.head, weight }),
                    Err(m) => errors.push(m),
                }
            }
            errors.extend(raw.validate().iter().map(|v| v.to_string()));
            if !errors.is_empty() {
                return Err(errors);
            }
            let digraph = raw.build().map_err(|e| vec![e.to_string()])?;
            Document::Digraph { name: doc.name, digraph }
        }
    };
    Ok(doc)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))
}

pub fn load_document(path: &Path) -> Result<Document, CliError> {
    parse_document(&read(path)?).map_err(|errs| CliError::Invalid { path: path.display().to_string(), errors: errs })
}

pub fn load_graph(path: &Path) -> Result<(Kind, Graph), CliError> {
    match load_document(path)? {
        Document::Graph { kind, graph, .. } => Ok((kind, graph)),
        Document::Digraph { .. } => {
            Err(CliError::Usage(format!("{}: expected a graph, found a digraph", path.display())))
        }
    }
}

pub fn load_digraph(path: &Path) -> Result<WeightedDigraph, CliError> {
    match load_document(path)? {
        Document::Digraph { digraph, .. } => Ok(digraph),
        doc => Err(CliError::Usage(format!("{}: expected a digraph, found a {}", path.display(), doc.kind().as_str()))),
    }
}

pub fn load_hom(path: &Path) -> Result<GraphHom, CliError> {
    let h: FileHom = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Invalid { path: path.display().to_string(), errors: vec![e.to_string()] })?;
    Ok(GraphHom { vertex_map: h.vertex_map, edge_map: h.edge_map })
}

pub fn card_value(c: &Card) -> Value {
    match c {
        Card::Omega => json!("omega"),
        Card::Fin(n) => match n.to_u64() {
            Some(k) => json!(k),
            None => json!(n.to_string()),
        },
    }
}

/// Kind of a computed graph: multigraph exactly when it is not simple.
pub fn kind_of(g: &Graph) -> Kind {
    if g.is_simple() {
        Kind::Graph
    } else {
        Kind::Multigraph
    }
}

/// Canonical form: sorted vertices, edges sorted by id, sorted keys.
pub fn graph_value(g: &Graph, kind: Kind, name: Option<&str>) -> Value {
    let raw = g.to_raw();
    let mut edges = raw.edges;
    edges.sort_by(|a, b| a.id.cmp(&b.id));
    let edges: Vec<Value> = edges
        .into_iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert("id".into(), json!(e.id));
            m.insert("ends".into(), json!(e.ends));
            if kind != Kind::Multigraph {
                let w: Map<String, Value> = e.weights.iter().map(|(v, c)| (v.clone(), card_value(c))).collect();
                m.insert("weights".into(), Value::Object(w));
            }
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("kind".into(), json!(kind.as_str()));
    m.insert("vertices".into(), json!(g.vertices()));
    m.insert("edges".into(), Value::Array(edges));
    if let Some(n) = name {
        m.insert("name".into(), json!(n));
    }
    Value::Object(m)
}

pub fn digraph_value(d: &WeightedDigraph, name: Option<&str>) -> Value {
    let raw = d.to_raw();
    let mut arcs = raw.arcs;
    arcs.sort_by(|a, b| a.id.cmp(&b.id));
    let arcs: Vec<Value> = arcs
        .into_iter()
        .map(|a| json!({"id": a.id, "tail": a.tail, "head": a.head, "weight": card_value(&a.weight)}))
        .collect();
    let mut m = Map::new();
    m.insert("kind".into(), json!("digraph"));
    m.insert("vertices".into(), json!(d.vertices()));
    m.insert("arcs".into(), Value::Array(arcs));
    if let Some(r) = raw.root {
        m.insert("root".into(), json!(r));
    }
    if let Some(n) = name {
        m.insert("name".into(), json!(n));
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: &str = r#"{"kind":"graph","vertices":["2","1"],"edges":[
        {"id":"l","ends":["1"],"weights":{"1":1}},
        {"id":"e","ends":["1","2"],"weights":{"1":3,"2":2}}],"name":"h"}"#;

    fn canon(text: &str) -> String {
        serde_json::to_string(&parse_document(text).unwrap().to_value()).unwrap()
    }

    #[test]
    fn canonical_form_is_stable() {
        let once = canon(H);
        assert_eq!(canon(&once), once);
        assert!(once.starts_with(r#"{"edges":[{"ends":["1","2"],"id":"e""#));
        assert!(once.contains(r#""vertices":["1","2"]"#));
    }

    #[test]
    fn zero_weight_is_reported() {
        let bad = H.replace(r#""2":2"#, r#""2":0"#);
        let errs = parse_document(&bad).unwrap_err();
        assert!(errs.iter().any(|e| e.contains("weight must be ≥ 1 or omega")), "{errs:?}");
    }

    #[test]
    fn negative_and_bad_words_are_reported_with_field() {
        let bad = H.replace(r#""2":2"#, r#""2":-1"#).replace(r#""1":1}"#, r#""1":"many"}"#);
        let errs = parse_document(&bad).unwrap_err();
        assert!(errs.iter().any(|e| e.starts_with("edges[1].weights.2")), "{errs:?}");
        assert!(errs.iter().any(|e| e.starts_with("edges[0].weights.1")), "{errs:?}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let errs = parse_document("{\"kind\": \"graph\",\n \"vertices\": [1]}").unwrap_err();
        assert!(errs[0].contains("line 2"), "{errs:?}");
    }

    #[test]
    fn multigraphs_round_trip_without_weights() {
        let text = r#"{"kind":"multigraph","vertices":["a","b"],"edges":[
            {"id":"p","ends":["a","b"]},{"id":"q","ends":["b","a"]},{"id":"s","ends":["a"]}]}"#;
        let once = canon(text);
        assert!(!once.contains("weights"));
        assert_eq!(canon(&once), once);
    }

    #[test]
    fn digraph_root_and_omega() {
        let text = r#"{"kind":"digraph","vertices":["x","y"],"root":"x",
            "arcs":[{"id":"a","tail":"x","head":"y","weight":"omega"},{"id":"b","tail":"y","head":"y","weight":2}]}"#;
        let once = canon(text);
        assert!(once.contains(r#""weight":"omega""#));
        assert!(once.contains(r#""root":"x""#));
        assert_eq!(canon(&once), once);
        let bad = text.replace(r#""root":"x""#, r#""root":"z""#);
        assert!(parse_document(&bad).is_err());
    }

    #[test]
    fn parallel_weighted_edges_are_refused() {
        let text = r#"{"kind":"graph","vertices":["a","b"],"edges":[
            {"id":"p","ends":["a","b"],"weights":{"a":1,"b":1}},
            {"id":"q","ends":["a","b"],"weights":{"a":1,"b":1}}]}"#;
        let errs = parse_document(text).unwrap_err();
        assert!(errs.iter().any(|e| e.contains("not simple")), "{errs:?}");
    }
}
