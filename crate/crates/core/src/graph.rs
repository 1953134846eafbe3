//! Graph and digraph data model.
//!
//! Ids are strings. Vertices are kept sorted, so vertex indices follow the
//! lexicographic id order; every algorithm that needs a fixed linear order on
//! vertices uses this one.
//!
//! Construction always goes through [`RawGraph`] / [`RawDigraph`], which can
//! hold invalid data and report every violation at once.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::weight::{Card, Weight};

/// One invariant violation found by validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    DuplicateEdge(String),
    BadEndCount { edge: String, count: usize },
    DanglingEnd { edge: String, vertex: String },
    MissingWeight { edge: String, vertex: String },
    ExtraWeight { edge: String, vertex: String },
    ZeroWeight { edge: String },
    WeightedMultigraph { edge: String },
    NotSimple { first: String, second: String },
    UnknownRoot(String),
    Unreachable(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex `{v}`"),
            Violation::DuplicateEdge(e) => write!(f, "duplicate edge or arc id `{e}`"),
            Violation::BadEndCount { edge, count } => {
                write!(f, "edge `{edge}` has {count} ends (expected 1 for a loop or 2 distinct)")
            }
            Violation::DanglingEnd { edge, vertex } => {
                write!(f, "edge `{edge}` references unknown vertex `{vertex}`")
            }
            Violation::MissingWeight { edge, vertex } => {
                write!(f, "edge `{edge}` has no weight at `{vertex}`")
            }
            Violation::ExtraWeight { edge, vertex } => {
                write!(f, "edge `{edge}` carries a weight at non-end `{vertex}`")
            }
            Violation::ZeroWeight { edge } => {
                write!(f, "edge `{edge}`: weight must be ≥ 1 or omega")
            }
            Violation::WeightedMultigraph { edge } => {
                write!(f, "multigraph edge `{edge}` must be unweighted")
            }
            Violation::NotSimple { first, second } => {
                write!(f, "not simple: edges `{first}` and `{second}` have the same ends")
            }
            Violation::UnknownRoot(r) => write!(f, "root `{r}` is not a vertex"),
            Violation::Unreachable(v) => write!(f, "vertex `{v}` is unreachable from the root"),
        }
    }
}

/// An unvalidated undirected graph description.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    /// Parallel edges allowed, weights must be absent (all 1).
    pub multigraph: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEdge {
    pub id: String,
    pub ends: Vec<String>,
    pub weights: BTreeMap<String, Card>,
}

impl RawGraph {
    pub fn weighted() -> Self {
        RawGraph::default()
    }

    pub fn multigraph() -> Self {
        RawGraph { multigraph: true, ..RawGraph::default() }
    }

    pub fn vertex(mut self, v: impl Into<String>) -> Self {
        self.vertices.push(v.into());
        self
    }

    pub fn vertices<I, S>(mut self, vs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(vs.into_iter().map(Into::into));
        self
    }

    /// Non-loop edge with a weight on each half.
    pub fn link(
        mut self,
        id: impl Into<String>,
        x: impl Into<String>,
        wx: impl Into<Card>,
        y: impl Into<String>,
        wy: impl Into<Card>,
    ) -> Self {
        let (x, y) = (x.into(), y.into());
        let mut weights = BTreeMap::new();
        weights.insert(x.clone(), wx.into());
        weights.insert(y.clone(), wy.into());
        self.edges.push(RawEdge { id: id.into(), ends: vec![x, y], weights });
        self
    }

    pub fn looped(mut self, id: impl Into<String>, x: impl Into<String>, w: impl Into<Card>) -> Self {
        let x = x.into();
        let mut weights = BTreeMap::new();
        weights.insert(x.clone(), w.into());
        self.edges.push(RawEdge { id: id.into(), ends: vec![x], weights });
        self
    }

    /// Edge with unit weights; a loop when `x == y`.
    pub fn edge(mut self, id: impl Into<String>, x: impl Into<String>, y: impl Into<String>) -> Self {
        let (x, y) = (x.into(), y.into());
        let ends = if x == y { vec![x] } else { vec![x, y] };
        let weights =
            if self.multigraph { BTreeMap::new() } else { ends.iter().map(|v| (v.clone(), Card::one())).collect() };
        self.edges.push(RawEdge { id: id.into(), ends, weights });
        self
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                out.push(Violation::DuplicateVertex(v.clone()));
            }
        }
        let mut ids = BTreeSet::new();
        let mut end_sets: BTreeMap<Vec<&str>, &str> = BTreeMap::new();
        for e in &self.edges {
            if !ids.insert(e.id.as_str()) {
                out.push(Violation::DuplicateEdge(e.id.clone()));
            }
            let distinct = e.ends.len() == 1 || (e.ends.len() == 2 && e.ends[0] != e.ends[1]);
            if !distinct {
                out.push(Violation::BadEndCount { edge: e.id.clone(), count: e.ends.len() });
                continue;
            }
            for v in &e.ends {
                if !seen.contains(v.as_str()) {
                    out.push(Violation::DanglingEnd { edge: e.id.clone(), vertex: v.clone() });
                }
            }
            if self.multigraph {
                if e.weights.values().any(|w| *w != Card::one()) {
                    out.push(Violation::WeightedMultigraph { edge: e.id.clone() });
                }
                for v in e.weights.keys() {
                    if !e.ends.contains(v) {
                        out.push(Violation::ExtraWeight { edge: e.id.clone(), vertex: v.clone() });
                    }
                }
            } else {
                for v in &e.ends {
                    match e.weights.get(v) {
                        None => out.push(Violation::MissingWeight { edge: e.id.clone(), vertex: v.clone() }),
                        Some(w) if w.is_zero() => out.push(Violation::ZeroWeight { edge: e.id.clone() }),
                        Some(_) => {}
                    }
                }
                for v in e.weights.keys() {
                    if !e.ends.contains(v) {
                        out.push(Violation::ExtraWeight { edge: e.id.clone(), vertex: v.clone() });
                    }
                }
                let mut key: Vec<&str> = e.ends.iter().map(String::as_str).collect();
                key.sort();
                if let Some(first) = end_sets.insert(key, e.id.as_str()) {
                    out.push(Violation::NotSimple { first: first.to_string(), second: e.id.clone() });
                }
            }
        }
        out
    }

    pub fn build(&self) -> Result<Graph> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let mut vertices = self.vertices.clone();
        vertices.sort();
        let vindex: BTreeMap<String, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut raw_edges: Vec<&RawEdge> = self.edges.iter().collect();
        raw_edges.sort_by(|a, b| a.id.cmp(&b.id));
        let weight_of = |e: &RawEdge, v: &str| -> Weight {
            e.weights.get(v).cloned().and_then(Weight::new).unwrap_or_else(Weight::one)
        };
        let mut edges = Vec::with_capacity(raw_edges.len());
        let mut incident = vec![Vec::new(); vertices.len()];
        for (k, e) in raw_edges.iter().enumerate() {
            let ends = if e.ends.len() == 1 {
                let at = vindex[&e.ends[0]];
                incident[at].push(k);
                Ends::Loop { at, weight: weight_of(e, &e.ends[0]) }
            } else {
                let (p, q) = (vindex[&e.ends[0]], vindex[&e.ends[1]]);
                let (a, b) = (p.min(q), p.max(q));
                incident[a].push(k);
                incident[b].push(k);
                Ends::Link { a, wa: weight_of(e, &vertices[a]), b, wb: weight_of(e, &vertices[b]) }
            };
            edges.push(Edge { id: e.id.clone(), ends });
        }
        let eindex = edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        let simple = !self.multigraph || {
            let mut sets = BTreeSet::new();
            edges.iter().all(|e| sets.insert(e.ends.key()))
        };
        Ok(Graph { vertices, vindex, edges, eindex, incident, simple })
    }
}

/// End structure of an edge, with the half-edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ends {
    Loop {
        at: usize,
        weight: Weight,
    },
    /// `a < b` in vertex index order.
    Link {
        a: usize,
        wa: Weight,
        b: usize,
        wb: Weight,
    },
}

impl Ends {
    fn key(&self) -> (usize, usize) {
        match self {
            Ends::Loop { at, .. } => (*at, *at),
            Ends::Link { a, b, .. } => (*a, *b),
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, Ends::Loop { .. })
    }

    /// The other end seen from `v`, or `None` if `v` is not an end.
    pub fn other(&self, v: usize) -> Option<usize> {
        match self {
            Ends::Loop { at, .. } if *at == v => Some(v),
            Ends::Link { a, b, .. } if *a == v => Some(*b),
            Ends::Link { a, b, .. } if *b == v => Some(*a),
            _ => None,
        }
    }

    /// Weight of the half-edge at `v`.
    pub fn weight_at(&self, v: usize) -> Option<&Weight> {
        match self {
            Ends::Loop { at, weight } if *at == v => Some(weight),
            Ends::Link { a, wa, .. } if *a == v => Some(wa),
            Ends::Link { b, wb, .. } if *b == v => Some(wb),
            _ => None,
        }
    }

    pub fn vertices(&self) -> Vec<usize> {
        match self {
            Ends::Loop { at, .. } => vec![*at],
            Ends::Link { a, b, .. } => vec![*a, *b],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: Ends,
}

/// An undirected graph with weights on half-edges.
///
/// A weighted graph is simple; an unweighted multigraph may have parallel
/// edges and several loops per vertex. Both share this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    vindex: BTreeMap<String, usize>,
    edges: Vec<Edge>,
    eindex: BTreeMap<String, usize>,
    incident: Vec<Vec<usize>>,
    simple: bool,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vindex.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, k: usize) -> &Edge {
        &self.edges[k]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.eindex.get(id).copied()
    }

    /// Edge indices incident with `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    /// Half-edges at `v` as `(edge, other end, weight at v)`.
    pub fn half_edges(&self, v: usize) -> impl Iterator<Item = (usize, usize, &Weight)> + '_ {
        self.incident[v].iter().map(move |&k| {
            let e = &self.edges[k].ends;
            (k, e.other(v).unwrap(), e.weight_at(v).unwrap())
        })
    }

    pub fn half_edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.ends.vertices().len()).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| match &e.ends {
            Ends::Loop { weight, .. } => weight.is_one(),
            Ends::Link { wa, wb, .. } => wa.is_one() && wb.is_one(),
        })
    }

    pub fn has_omega(&self) -> bool {
        self.edges.iter().any(|e| match &e.ends {
            Ends::Loop { weight, .. } => weight.is_omega(),
            Ends::Link { wa, wb, .. } => wa.is_omega() || wb.is_omega(),
        })
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.ends.is_loop())
    }

    /// Connected components as sorted vertex index lists, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for (_, w, _) in self.half_edges(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub fn require_finite(&self) -> Result<()> {
        if self.has_omega() {
            Err(Error::InfiniteWeight)
        } else {
            Ok(())
        }
    }

    /// Induced subgraph on the given vertex indices.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        let mut raw = RawGraph {
            multigraph: !self.simple,
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            edges: Vec::new(),
        };
        for e in &self.edges {
            if e.ends.vertices().iter().all(|v| keep.contains(v)) {
                raw.edges.push(self.raw_edge(e));
            }
        }
        raw.build().expect("induced subgraph of a valid graph is valid")
    }

    fn raw_edge(&self, e: &Edge) -> RawEdge {
        let mut weights = BTreeMap::new();
        let ends = match &e.ends {
            Ends::Loop { at, weight } => {
                if self.simple {
                    weights.insert(self.vertices[*at].clone(), weight.card().clone());
                }
                vec![self.vertices[*at].clone()]
            }
            Ends::Link { a, wa, b, wb } => {
                if self.simple {
                    weights.insert(self.vertices[*a].clone(), wa.card().clone());
                    weights.insert(self.vertices[*b].clone(), wb.card().clone());
                }
                vec![self.vertices[*a].clone(), self.vertices[*b].clone()]
            }
        };
        RawEdge { id: e.id.clone(), ends, weights }
    }

    /// Back to an editable description. Non-simple graphs come back as
    /// multigraphs.
    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| self.raw_edge(e)).collect(),
            multigraph: !self.simple,
        }
    }
}

/// An unvalidated weighted digraph description.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawDigraph {
    pub vertices: Vec<String>,
    pub arcs: Vec<RawArc>,
    pub root: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawArc {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub weight: Card,
}

impl RawDigraph {
    pub fn new() -> Self {
        RawDigraph::default()
    }

    pub fn vertex(mut self, v: impl Into<String>) -> Self {
        self.vertices.push(v.into());
        self
    }

    pub fn vertices<I, S>(mut self, vs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(vs.into_iter().map(Into::into));
        self
    }

    pub fn arc(
        mut self,
        id: impl Into<String>,
        tail: impl Into<String>,
        head: impl Into<String>,
        weight: impl Into<Card>,
    ) -> Self {
        self.arcs.push(RawArc { id: id.into(), tail: tail.into(), head: head.into(), weight: weight.into() });
        self
    }

    pub fn root(mut self, r: impl Into<String>) -> Self {
        self.root = Some(r.into());
        self
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                out.push(Violation::DuplicateVertex(v.clone()));
            }
        }
        let mut ids = BTreeSet::new();
        let mut dangling = false;
        for a in &self.arcs {
            if !ids.insert(a.id.as_str()) {
                out.push(Violation::DuplicateEdge(a.id.clone()));
            }
            for v in [&a.tail, &a.head] {
                if !seen.contains(v.as_str()) {
                    dangling = true;
                    out.push(Violation::DanglingEnd { edge: a.id.clone(), vertex: v.clone() });
                }
            }
            if a.weight.is_zero() {
                out.push(Violation::ZeroWeight { edge: a.id.clone() });
            }
        }
        if let Some(r) = &self.root {
            if !seen.contains(r.as_str()) {
                out.push(Violation::UnknownRoot(r.clone()));
            } else if !dangling {
                let mut reached = BTreeSet::from([r.as_str()]);
                let mut stack = vec![r.as_str()];
                while let Some(v) = stack.pop() {
                    for a in self.arcs.iter().filter(|a| a.tail == v) {
                        if reached.insert(a.head.as_str()) {
                            stack.push(a.head.as_str());
                        }
                    }
                }
                let mut unreachable: Vec<&String> =
                    self.vertices.iter().filter(|v| !reached.contains(v.as_str())).collect();
                unreachable.sort();
                unreachable.dedup();
                out.extend(unreachable.into_iter().map(|v| Violation::Unreachable(v.clone())));
            }
        }
        out
    }

    pub fn build(&self) -> Result<WeightedDigraph> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let mut vertices = self.vertices.clone();
        vertices.sort();
        let vindex: BTreeMap<String, usize> = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let mut raw_arcs: Vec<&RawArc> = self.arcs.iter().collect();
        raw_arcs.sort_by(|a, b| a.id.cmp(&b.id));
        let arcs: Vec<Arc> = raw_arcs
            .iter()
            .map(|a| Arc {
                id: a.id.clone(),
                tail: vindex[&a.tail],
                head: vindex[&a.head],
                weight: Weight::new(a.weight.clone()).expect("validated"),
            })
            .collect();
        let mut out = vec![Vec::new(); vertices.len()];
        for (k, a) in arcs.iter().enumerate() {
            out[a.tail].push(k);
        }
        let aindex = arcs.iter().enumerate().map(|(i, a)| (a.id.clone(), i)).collect();
        let root = self.root.as_ref().map(|r| vindex[r]);
        Ok(WeightedDigraph { vertices, vindex, arcs, aindex, out, root })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub weight: Weight,
}

/// A weighted digraph, optionally rooted. Parallel arcs are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    vertices: Vec<String>,
    vindex: BTreeMap<String, usize>,
    arcs: Vec<Arc>,
    aindex: BTreeMap<String, usize>,
    out: Vec<Vec<usize>>,
    root: Option<usize>,
}

impl WeightedDigraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vindex.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, k: usize) -> &Arc {
        &self.arcs[k]
    }

    pub fn arc_index(&self, id: &str) -> Option<usize> {
        self.aindex.get(id).copied()
    }

    /// Outgoing arc indices of `v`, ascending by arc id.
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn require_root(&self) -> Result<usize> {
        self.root.ok_or(Error::NotRooted)
    }

    /// The weighted out-neighbourhood: heads with weights summed over
    /// parallel arcs, sorted by head.
    pub fn out_neighborhood(&self, v: usize) -> Vec<(usize, Card)> {
        let mut acc: BTreeMap<usize, Card> = BTreeMap::new();
        for &k in &self.out[v] {
            let a = &self.arcs[k];
            let slot = acc.entry(a.head).or_insert_with(Card::zero);
            *slot = &*slot + a.weight.card();
        }
        acc.into_iter().collect()
    }

    /// Vertices reachable from `x` by a directed path, sorted.
    pub fn reachable_from(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count()];
        seen[x] = true;
        let mut stack = vec![x];
        while let Some(v) = stack.pop() {
            for &k in &self.out[v] {
                let h = self.arcs[k].head;
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        (0..self.vertex_count()).filter(|&v| seen[v]).collect()
    }

    /// The rooted digraph of vertices reachable from `x`.
    pub fn rooted_at(&self, x: &str) -> Result<WeightedDigraph> {
        let xi = self.vertex_index(x)?;
        let keep: BTreeSet<usize> = self.reachable_from(xi).into_iter().collect();
        let mut raw = RawDigraph::new().root(x);
        raw.vertices = keep.iter().map(|&v| self.vertices[v].clone()).collect();
        for a in &self.arcs {
            if keep.contains(&a.tail) {
                raw.arcs.push(RawArc {
                    id: a.id.clone(),
                    tail: self.vertices[a.tail].clone(),
                    head: self.vertices[a.head].clone(),
                    weight: a.weight.card().clone(),
                });
            }
        }
        raw.build()
    }

    pub fn has_omega(&self) -> bool {
        self.arcs.iter().any(|a| a.weight.is_omega())
    }

    pub fn to_raw(&self) -> RawDigraph {
        RawDigraph {
            vertices: self.vertices.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| RawArc {
                    id: a.id.clone(),
                    tail: self.vertices[a.tail].clone(),
                    head: self.vertices[a.head].clone(),
                    weight: a.weight.card().clone(),
                })
                .collect(),
            root: self.root.map(|r| self.vertices[r].clone()),
        }
    }
}

/// A homomorphism given by id maps on vertices and on edges or arcs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphHom {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
}

impl GraphHom {
    pub fn identity_graph(g: &Graph) -> GraphHom {
        GraphHom {
            vertex_map: g.vertices.iter().map(|v| (v.clone(), v.clone())).collect(),
            edge_map: g.edges.iter().map(|e| (e.id.clone(), e.id.clone())).collect(),
        }
    }

    pub fn identity_digraph(d: &WeightedDigraph) -> GraphHom {
        GraphHom {
            vertex_map: d.vertices.iter().map(|v| (v.clone(), v.clone())).collect(),
            edge_map: d.arcs.iter().map(|a| (a.id.clone(), a.id.clone())).collect(),
        }
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &GraphHom) -> Result<GraphHom> {
        let look = |m: &BTreeMap<String, String>, k: &String| {
            m.get(k).cloned().ok_or_else(|| Error::MalformedHom(format!("`{k}` has no image in the second map")))
        };
        Ok(GraphHom {
            vertex_map: self
                .vertex_map
                .iter()
                .map(|(k, v)| Ok((k.clone(), look(&then.vertex_map, v)?)))
                .collect::<Result<_>>()?,
            edge_map: self
                .edge_map
                .iter()
                .map(|(k, v)| Ok((k.clone(), look(&then.edge_map, v)?)))
                .collect::<Result<_>>()?,
        })
    }
}

/// Index-level view of a graph homomorphism.
pub(crate) struct ResolvedHom {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

fn resolve<'a>(
    map: &BTreeMap<String, String>,
    sources: impl Iterator<Item = &'a String>,
    target: impl Fn(&str) -> Option<usize>,
    what: &str,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut count = 0;
    for s in sources {
        count += 1;
        let t = map.get(s).ok_or_else(|| Error::MalformedHom(format!("{what} `{s}` has no image")))?;
        out.push(target(t).ok_or_else(|| Error::MalformedHom(format!("image `{t}` of {what} `{s}` does not exist")))?);
    }
    if map.len() != count {
        return Err(Error::MalformedHom(format!("map has {} {what} entries but the source has {count}", map.len())));
    }
    Ok(out)
}

pub(crate) fn resolve_graph_hom(h: &GraphHom, g: &Graph, t: &Graph) -> Result<ResolvedHom> {
    Ok(ResolvedHom {
        vertex: resolve(&h.vertex_map, g.vertices.iter(), |s| t.vindex.get(s).copied(), "vertex")?,
        edge: resolve(&h.edge_map, g.edges.iter().map(|e| &e.id), |s| t.eindex.get(s).copied(), "edge")?,
    })
}

pub(crate) fn resolve_digraph_hom(h: &GraphHom, g: &WeightedDigraph, t: &WeightedDigraph) -> Result<ResolvedHom> {
    Ok(ResolvedHom {
        vertex: resolve(&h.vertex_map, g.vertices.iter(), |s| t.vindex.get(s).copied(), "vertex")?,
        edge: resolve(&h.edge_map, g.arcs.iter().map(|a| &a.id), |s| t.aindex.get(s).copied(), "arc")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_loop_graph_is_valid() {
        let raw = RawGraph::weighted().vertex("v").looped("l", "v", 1);
        assert!(raw.validate().is_empty());
        let g = raw.build().unwrap();
        assert_eq!(g.half_edge_count(), 1);
    }

    #[test]
    fn shared_end_set_is_not_simple() {
        let raw = RawGraph::weighted().vertices(["x", "y"]).link("e", "x", 1, "y", 1).link("f", "y", 2, "x", 1);
        let v = raw.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().contains("not simple"));
    }

    #[test]
    fn multigraph_allows_parallels() {
        let g = RawGraph::multigraph()
            .vertices(["x", "y"])
            .edge("e1", "x", "y")
            .edge("e2", "x", "y")
            .edge("l1", "x", "x")
            .edge("l2", "x", "x")
            .build()
            .unwrap();
        assert!(!g.is_simple());
        assert_eq!(g.incident(0).len(), 4);
    }

    #[test]
    fn unreachable_vertex_reported() {
        let raw = RawDigraph::new().vertices(["r", "a", "b"]).arc("1", "r", "a", 1).root("r");
        let v = raw.validate();
        assert_eq!(v, vec![Violation::Unreachable("b".into())]);
        assert!(v[0].to_string().contains("unreachable"));
    }

    #[test]
    fn zero_weight_and_dangling_are_all_reported() {
        let raw = RawGraph::weighted().vertices(["x"]).link("e", "x", 0, "z", 1);
        let v = raw.validate();
        assert!(v.contains(&Violation::ZeroWeight { edge: "e".into() }));
        assert!(v.contains(&Violation::DanglingEnd { edge: "e".into(), vertex: "z".into() }));
        assert!(v.iter().any(|x| x.to_string().contains("weight must be ≥ 1 or omega")));
    }

    #[test]
    fn out_neighborhood_sums_parallel_arcs() {
        let d = RawDigraph::new()
            .vertices(["x", "y"])
            .arc("a", "x", "y", 1)
            .arc("b", "x", "y", 2)
            .arc("c", "x", "x", Card::Omega)
            .build()
            .unwrap();
        assert_eq!(d.out_neighborhood(0), vec![(0, Card::Omega), (1, Card::from(3))]);
    }

    #[test]
    fn vertex_indices_follow_id_order() {
        let g = RawGraph::weighted().vertices(["b", "a", "c"]).link("e", "c", 1, "a", 2).build().unwrap();
        assert_eq!(g.vertices(), &["a", "b", "c"]);
        match &g.edge(0).ends {
            Ends::Link { a, wa, b, wb } => {
                assert_eq!((*a, *b), (0, 2));
                assert_eq!((wa, wb), (&Weight::fin(2), &Weight::fin(1)));
            }
            _ => panic!(),
        }
    }
}
