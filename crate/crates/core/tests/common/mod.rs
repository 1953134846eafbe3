//! Seeded generators and brute-force oracles shared by the integration
//! tests. Nothing here calls the refinement engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use coverlab::graph::RawArc;
use coverlab::{CanonicalTree, Card, Graph, GraphHom, RawDigraph, RawGraph, WeightedDigraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct Weights {
    pub max: u64,
    pub omega: bool,
}

impl Weights {
    pub const UNIT: Weights = Weights { max: 1, omega: false };

    pub fn upto(max: u64) -> Weights {
        Weights { max, omega: false }
    }

    pub fn with_omega(max: u64) -> Weights {
        Weights { max, omega: true }
    }

    pub fn draw(self, rng: &mut impl Rng) -> Card {
        let top = self.max + u64::from(self.omega);
        let k = rng.gen_range(1..=top);
        if k > self.max {
            Card::Omega
        } else {
            Card::from(k)
        }
    }
}

fn vname(i: usize) -> String {
    format!("v{i}")
}

/// A rooted digraph on `n` vertices where every vertex is reachable from
/// `v0`; each vertex gets up to `extra` further arcs, loops included.
pub fn random_digraph(rng: &mut impl Rng, n: usize, extra: usize, w: Weights) -> WeightedDigraph {
    let mut raw = RawDigraph::new().vertices((0..n).map(vname)).root(vname(0));
    let mut k = 0;
    let mut arc = |raw: &mut RawDigraph, t: usize, h: usize, weight: Card| {
        raw.arcs.push(RawArc { id: format!("a{k}"), tail: vname(t), head: vname(h), weight });
        k += 1;
    };
    for i in 1..n {
        let p = rng.gen_range(0..i);
        arc(&mut raw, p, i, w.draw(rng));
    }
    for t in 0..n {
        for _ in 0..rng.gen_range(0..=extra) {
            let h = rng.gen_range(0..n);
            arc(&mut raw, t, h, w.draw(rng));
        }
    }
    raw.build().expect("generated digraph is valid")
}

/// A connected simple weighted graph: a random spanning tree, extra edges
/// with probability `p`, loops with probability `q`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, q: f64, w: Weights) -> Graph {
    let mut raw = RawGraph::weighted().vertices((0..n).map(vname));
    let mut pairs = BTreeSet::new();
    for i in 1..n {
        pairs.insert((rng.gen_range(0..i), i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.insert((i, j));
            }
        }
    }
    for (i, j) in pairs {
        let (wi, wj) = (w.draw(rng), w.draw(rng));
        raw = raw.link(format!("e{i}_{j}"), vname(i), wi, vname(j), wj);
    }
    for i in 0..n {
        if rng.gen_bool(q) {
            let wl = w.draw(rng);
            raw = raw.looped(format!("l{i}"), vname(i), wl);
        }
    }
    raw.build().expect("generated graph is valid")
}

/// A connected unweighted multigraph: spanning tree plus `extra` random
/// edges, which may be parallels or loops.
pub fn random_multigraph(rng: &mut impl Rng, n: usize, extra: usize) -> Graph {
    let mut raw = RawGraph::multigraph().vertices((0..n).map(vname));
    for i in 1..n {
        let p = rng.gen_range(0..i);
        raw = raw.edge(format!("t{i}"), vname(p), vname(i));
    }
    for k in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        raw = raw.edge(format!("x{k}"), vname(a), vname(b));
    }
    raw.build().expect("generated multigraph is valid")
}

/// A random `sheets`-fold cover of an unweighted graph `m`: each non-loop
/// edge lifts along a random permutation of the sheets, each loop along a
/// random involution whose fixed points become loops.
pub fn random_cover(rng: &mut impl Rng, m: &Graph, sheets: usize) -> (Graph, GraphHom) {
    let vid = |v: usize, s: usize| format!("({},{s})", m.vertex_id(v));
    let mut raw = RawGraph::multigraph();
    let mut hom = GraphHom::default();
    for v in 0..m.vertex_count() {
        for s in 0..sheets {
            raw.vertices.push(vid(v, s));
            hom.vertex_map.insert(vid(v, s), m.vertex_id(v).to_string());
        }
    }
    for e in m.edges() {
        let ends = e.ends.vertices();
        let mut perm: Vec<usize> = (0..sheets).collect();
        perm.shuffle(rng);
        let mut lifts = Vec::new();
        if ends.len() == 2 {
            for (s, &t) in perm.iter().enumerate() {
                lifts.push((vid(ends[0], s), vid(ends[1], t)));
            }
        } else {
            // pair consecutive entries of the shuffled sheets; a chance of
            // leaving each pair as two fixed points
            let mut i = 0;
            while i < sheets {
                if i + 1 < sheets && rng.gen_bool(0.6) {
                    lifts.push((vid(ends[0], perm[i]), vid(ends[0], perm[i + 1])));
                    i += 2;
                } else {
                    lifts.push((vid(ends[0], perm[i]), vid(ends[0], perm[i])));
                    i += 1;
                }
            }
        }
        for (k, (a, b)) in lifts.into_iter().enumerate() {
            let id = format!("({},{k})", e.id);
            raw = raw.edge(id.clone(), a, b);
            hom.edge_map.insert(id, e.id.clone());
        }
    }
    (raw.build().expect("generated cover is valid"), hom)
}

/// Renames every vertex through `f`, keeping edge ids.
pub fn relabel(g: &Graph, f: impl Fn(&str) -> String) -> Graph {
    let mut raw = g.to_raw();
    raw.vertices = raw.vertices.iter().map(|v| f(v)).collect();
    for e in raw.edges.iter_mut() {
        e.ends = e.ends.iter().map(|v| f(v)).collect();
        e.weights = e.weights.iter().map(|(v, w)| (f(v), w.clone())).collect();
    }
    raw.build().expect("relabelled graph is valid")
}

/// Unlabelled rooted tree as a nested parenthesis string with sorted
/// children.
fn node(mut kids: Vec<String>) -> String {
    kids.sort();
    format!("({})", kids.concat())
}

/// Tree of all walks of length ≤ `depth` from `v`, where an arc of weight
/// `w` can be taken in `w` distinguishable ways.
pub fn exp_walk_tree(d: &WeightedDigraph, v: usize, depth: usize) -> String {
    if depth == 0 {
        return node(vec![]);
    }
    let mut kids = Vec::new();
    for &k in d.out_arcs(v) {
        let a = d.arc(k);
        let w = a.weight.finite().expect("finite weights only");
        for _ in 0..w.to_u64_digits().first().copied().unwrap_or(0) {
            kids.push(exp_walk_tree(d, a.head, depth - 1));
        }
    }
    node(kids)
}

/// Tree of walks of length ≤ `depth` from `v` in an unweighted graph that
/// never use the same edge twice in a row.
pub fn non_backtracking_tree(g: &Graph, v: usize, depth: usize) -> String {
    fn go(g: &Graph, v: usize, prev: Option<usize>, depth: usize) -> String {
        if depth == 0 {
            return node(vec![]);
        }
        let kids = g
            .incident(v)
            .iter()
            .filter(|&&k| Some(k) != prev)
            .map(|&k| go(g, g.edge(k).ends.other(v).unwrap(), Some(k), depth - 1))
            .collect();
        node(kids)
    }
    go(g, v, None, depth)
}

/// The expanded form of a canonical tree, in the same string encoding.
pub fn tree_string(t: &CanonicalTree) -> String {
    let mut kids = Vec::new();
    for (c, m) in t.children() {
        let s = tree_string(c);
        let m = m.finite().expect("finite multiplicities only");
        for _ in 0..m.to_u64_digits().first().copied().unwrap_or(0) {
            kids.push(s.clone());
        }
    }
    node(kids)
}

/// Every positive solution of `m_ij·x_i = m_ji·x_j` with all entries in
/// `1..=bound`, by enumeration with early rejection.
pub fn brute_force_solutions(h: &Graph, bound: u64) -> Vec<Vec<u64>> {
    let n = h.vertex_count();
    let mut eqs: Vec<(usize, u64, usize, u64)> = Vec::new();
    for e in h.edges() {
        let ends = e.ends.vertices();
        if ends.len() == 2 {
            let w = |v: usize| e.ends.weight_at(v).unwrap().finite().unwrap().to_u64_digits()[0];
            eqs.push((ends[0], w(ends[0]), ends[1], w(ends[1])));
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0u64; n];
    fn go(i: usize, x: &mut Vec<u64>, eqs: &[(usize, u64, usize, u64)], bound: u64, out: &mut Vec<Vec<u64>>) {
        if i == x.len() {
            out.push(x.clone());
            return;
        }
        for v in 1..=bound {
            x[i] = v;
            let ok = eqs.iter().filter(|&&(a, _, b, _)| a.max(b) == i).all(|&(a, wa, b, wb)| wa * x[a] == wb * x[b]);
            if ok {
                go(i + 1, x, eqs, bound, out);
            }
        }
    }
    go(0, &mut x, &eqs, bound, &mut out);
    out
}

/// Hub `a` joined to a 6-cycle `b…g`, vertex names prefixed.
pub fn wheel6(prefix: &str) -> RawGraph {
    let v = |s: &str| format!("{prefix}{s}");
    let rim = ["b", "c", "d", "e", "f", "g"];
    let mut raw = RawGraph::weighted().vertex(v("a")).vertices(rim.iter().map(|r| v(r)));
    for (i, r) in rim.iter().enumerate() {
        raw = raw.edge(v(&format!("s{r}")), v("a"), v(r)).edge(v(&format!("r{r}")), v(r), v(rim[(i + 1) % 6]));
    }
    raw
}

/// Hub `a` joined to two disjoint triangles, vertex names prefixed.
pub fn hub_triangles(prefix: &str) -> RawGraph {
    let v = |s: &str| format!("{prefix}{s}");
    let rim = ["b", "c", "d", "e", "f", "g"];
    let mut raw = RawGraph::weighted().vertex(v("a")).vertices(rim.iter().map(|r| v(r)));
    for r in rim {
        raw = raw.edge(v(&format!("s{r}")), v("a"), v(r));
    }
    for (x, y) in [("b", "c"), ("c", "d"), ("b", "d"), ("e", "f"), ("f", "g"), ("e", "g")] {
        raw = raw.edge(v(&format!("{x}{y}")), v(x), v(y));
    }
    raw
}

pub fn cycle(n: usize) -> Graph {
    let mut raw = RawGraph::weighted().vertices((0..n).map(vname));
    for i in 0..n {
        raw = raw.edge(format!("e{i}"), vname(i), vname((i + 1) % n));
    }
    raw.build().unwrap()
}

/// Splits a non-root vertex `v` of a digraph into `v` and a copy `v'`
/// with the same out-arcs; a proper non-empty subset of the arcs entering
/// `v` from other vertices is redirected to the copy. The result unfolds
/// onto the input.
pub fn split_vertex(rng: &mut impl Rng, d: &WeightedDigraph, tag: &str) -> Option<WeightedDigraph> {
    let root = d.root()?;
    let entering = |v: usize| -> Vec<usize> {
        (0..d.arcs().len()).filter(|&k| d.arc(k).head == v && d.arc(k).tail != v).collect()
    };
    let candidates: Vec<usize> = (0..d.vertex_count()).filter(|&v| v != root && entering(v).len() >= 2).collect();
    let &v = candidates.choose(rng)?;
    let mut into = entering(v);
    into.shuffle(rng);
    let moved = rng.gen_range(1..into.len());
    let mut raw = d.to_raw();
    let copy = format!("{}{tag}", d.vertex_id(v));
    raw.vertices.push(copy.clone());
    for &k in &into[..moved] {
        raw.arcs[k].head = copy.clone();
    }
    for &k in d.out_arcs(v) {
        let a = d.arc(k);
        let head = if a.head == v { copy.clone() } else { d.vertex_id(a.head).to_string() };
        raw.arcs.push(RawArc {
            id: format!("{}{tag}", a.id),
            tail: copy.clone(),
            head,
            weight: a.weight.card().clone(),
        });
    }
    Some(raw.build().expect("split digraph is valid"))
}

pub fn count_by<K: Ord>(items: impl IntoIterator<Item = K>) -> BTreeMap<K, usize> {
    let mut m = BTreeMap::new();
    for k in items {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

/// A weighted graph on the topology of `random_graph` whose link weights
/// are chosen so that the sheet counts `mult` balance on every edge.
pub fn balanced_graph(rng: &mut impl Rng, mult: &[u64], p: f64, q: f64) -> Graph {
    let topo = random_graph(rng, mult.len(), p, q, Weights::UNIT);
    let mut raw = topo.to_raw();
    for e in raw.edges.iter_mut() {
        let t = rng.gen_range(1..=2u64);
        if let [a, b] = e.ends.as_slice() {
            let (ma, mb) = (mult[topo.vertex_index(a).unwrap()], mult[topo.vertex_index(b).unwrap()]);
            let g = num::integer::gcd(ma, mb);
            e.weights.insert(a.clone(), Card::from(mb / g * t));
            e.weights.insert(b.clone(), Card::from(ma / g * t));
        } else {
            let w = rng.gen_range(1..=3u64);
            for c in e.weights.values_mut() {
                *c = Card::from(w);
            }
        }
    }
    raw.build().expect("balanced graph is valid")
}
