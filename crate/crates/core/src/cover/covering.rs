use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{resolve_graph_hom, Graph, GraphHom, RawEdge, RawGraph};
use crate::iso::graphs_isomorphic;
use crate::partition::Partition;
use crate::unfold::{joint_labels, CrossCheck};
use crate::weight::Card;

use super::build_generated;
use super::sym::{cover_labels, sym, uc_trees_equal};

/// Whether `h` is a covering `g → t`: a surjective homomorphism whose
/// restriction to each vertex sums source half-edge weights onto target
/// half-edge weights.
pub fn is_covering(h: &GraphHom, g: &Graph, t: &Graph) -> Result<bool> {
    let r = resolve_graph_hom(h, g, t)?;
    for (k, e) in g.edges().iter().enumerate() {
        let mut img: Vec<usize> = e.ends.vertices().iter().map(|&v| r.vertex[v]).collect();
        img.sort_unstable();
        img.dedup();
        if img != t.edge(r.edge[k]).ends.vertices() {
            return Ok(false);
        }
    }
    let mut hit_v = vec![false; t.vertex_count()];
    let mut hit_e = vec![false; t.edge_count()];
    r.vertex.iter().for_each(|&v| hit_v[v] = true);
    r.edge.iter().for_each(|&e| hit_e[e] = true);
    if !hit_v.into_iter().chain(hit_e).all(|b| b) {
        return Ok(false);
    }
    for x in 0..g.vertex_count() {
        let y = r.vertex[x];
        let mut sums: BTreeMap<usize, Card> = BTreeMap::new();
        for (k, _, w) in g.half_edges(x) {
            let slot = sums.entry(r.edge[k]).or_insert_with(Card::zero);
            *slot = &*slot + w.card();
        }
        let mut expected = 0;
        for (f, _, w) in t.half_edges(y) {
            expected += 1;
            if sums.get(&f) != Some(w.card()) {
                return Ok(false);
            }
        }
        if sums.len() != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fuses parallel edges, and the loops at a vertex, into one edge whose
/// half weights are the sums of the fused halves. Each group keeps its
/// smallest edge id. The returned hom is a covering.
pub fn fuse(g: &Graph) -> (Graph, GraphHom) {
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (k, e) in g.edges().iter().enumerate() {
        groups.entry(e.ends.vertices()).or_default().push(k);
    }
    let mut raw = RawGraph::weighted().vertices(g.vertices().iter().cloned());
    let mut hom = GraphHom::identity_graph(g);
    for (ends, members) in groups {
        let id = members.iter().map(|&k| &g.edge(k).id).min().unwrap().clone();
        let weights = ends
            .iter()
            .map(|&v| {
                let w = Card::sum(members.iter().map(|&k| g.edge(k).ends.weight_at(v).unwrap().card()));
                (g.vertex_id(v).to_string(), w)
            })
            .collect();
        raw.edges.push(RawEdge {
            id: id.clone(),
            ends: ends.iter().map(|&v| g.vertex_id(v).to_string()).collect(),
            weights,
        });
        for &k in &members {
            hom.edge_map.insert(g.edge(k).id.clone(), id.clone());
        }
    }
    (raw.build().expect("fused graph is simple"), hom)
}

/// Vertices share a block exactly when their universal covers are
/// isomorphic as rooted weighted trees.
pub fn covering_equivalence(h: &Graph) -> Partition {
    Partition::from_labels(h.vertices().to_vec(), &cover_labels(h))
}

/// Quotient of `h` by a partition stable under weighted neighbour counts.
/// Weights are read at each block's representative.
pub(crate) fn quotient_by(h: &Graph, p: &Partition) -> Result<(Graph, GraphHom)> {
    let rep = |b: usize| h.vertex_id(p.representative(b));
    let into: Vec<BTreeMap<usize, Card>> = (0..p.len())
        .map(|b| {
            let mut m: BTreeMap<usize, Card> = BTreeMap::new();
            for (_, other, w) in h.half_edges(p.representative(b)) {
                let slot = m.entry(p.block_index(other)).or_insert_with(Card::zero);
                *slot = &*slot + w.card();
            }
            m
        })
        .collect();
    let edge_id = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        format!("{}-{}", rep(a), rep(b))
    };
    let mut raw = RawGraph::weighted();
    for b in 0..p.len() {
        raw.vertices.push(rep(b).to_string());
        for (&c, w) in into[b].range(b..) {
            if c == b {
                raw = raw.looped(edge_id(b, b), rep(b), w.clone());
            } else {
                let back = into[c].get(&b).ok_or_else(|| Error::Inconsistent("partition is not stable".into()))?;
                raw = raw.link(edge_id(b, c), rep(b), w.clone(), rep(c), back.clone());
            }
        }
    }
    let q = build_generated(&raw)?;
    let mut hom = GraphHom::default();
    for v in 0..h.vertex_count() {
        hom.vertex_map.insert(h.vertex_id(v).to_string(), rep(p.block_index(v)).to_string());
    }
    for e in h.edges() {
        let bs: Vec<usize> = e.ends.vertices().iter().map(|&v| p.block_index(v)).collect();
        let (a, b) = (bs[0], *bs.last().unwrap());
        hom.edge_map.insert(e.id.clone(), edge_id(a, b));
    }
    Ok((q, hom))
}

/// The minimal weighted graph covered by `h`, with the covering onto it.
/// Base vertices are named by block representatives, base edges `x-y`.
pub fn minimize(h: &Graph) -> Result<(Graph, GraphHom)> {
    h.require_connected()?;
    quotient_by(h, &covering_equivalence(h))
}

/// Both decision routes for a shared universal cover: joint refinement of
/// the symmetric digraphs, and isomorphism of the minimized bases.
pub fn same_uc_routes(g: &Graph, h: &Graph) -> Result<(bool, bool)> {
    g.require_connected()?;
    h.require_connected()?;
    let cls = joint_labels(&sym(g).digraph, &sym(h).digraph);
    let (left, right) = cls.split_at(g.vertex_count());
    let joint = left.iter().any(|c| right.contains(c));
    let bases = graphs_isomorphic(&minimize(g)?.0, &minimize(h)?.0);
    Ok((joint, bases))
}

pub fn same_universal_cover(g: &Graph, h: &Graph) -> Result<bool> {
    match same_uc_routes(g, h)? {
        (a, b) if a == b => Ok(a),
        (a, b) => Err(Error::Inconsistent(format!("joint refinement says {a}, base isomorphism says {b}"))),
    }
}

/// Compares universal-cover truncations at depth `|V|−1` with the
/// covering-equivalence verdict.
pub fn norris_uc_crosscheck(h: &Graph, x: &str, y: &str) -> Result<CrossCheck> {
    let (xi, yi) = (h.vertex_index(x)?, h.vertex_index(y)?);
    h.require_connected()?;
    let depth = h.vertex_count() - 1;
    let labels = cover_labels(h);
    Ok(CrossCheck {
        trunc_equal: uc_trees_equal(h, xi, yi, depth),
        refine_equal: labels[xi] == labels[yi],
        depth_used: depth,
    })
}
