use crate::error::Result;
use crate::graph::{resolve_graph_hom, Ends, Graph, GraphHom, RawEdge, RawGraph};

use super::build_generated;

fn vid(x: &str, i: u8) -> String {
    format!("({x},{i})")
}

fn eid(e: &str, x: &str, y: &str) -> String {
    format!("({e},{x},{y})")
}

/// Product with `K₂`: vertices `(x,1)`, `(x,2)`. A non-loop edge `e` between
/// `x < y` yields `(e,x,y)` joining `(x,1)` to `(y,2)` and `(e,y,x)` joining
/// `(y,1)` to `(x,2)`; a loop at `x` yields `(e,x,x)` joining `(x,1)` to
/// `(x,2)`. Each half keeps the weight of the half it comes from. The
/// result is bipartite, loop-free, and covers `h` by the projection.
pub fn kronecker_k2(h: &Graph) -> Result<(Graph, GraphHom)> {
    let simple = h.is_simple();
    let mut raw = if simple { RawGraph::weighted() } else { RawGraph::multigraph() };
    let mut hom = GraphHom::default();
    for x in h.vertices() {
        for i in [1, 2] {
            raw.vertices.push(vid(x, i));
            hom.vertex_map.insert(vid(x, i), x.clone());
        }
    }
    let mut push = |raw: &mut RawGraph, e: &str, x: &str, y: &str, wx, wy| {
        let (u, v) = (vid(x, 1), vid(y, 2));
        let weights = if simple { [(u.clone(), wx), (v.clone(), wy)].into() } else { Default::default() };
        raw.edges.push(RawEdge { id: eid(e, x, y), ends: vec![u, v], weights });
        hom.edge_map.insert(eid(e, x, y), e.to_string());
    };
    for e in h.edges() {
        match &e.ends {
            Ends::Loop { at, weight } => {
                let x = h.vertex_id(*at);
                push(&mut raw, &e.id, x, x, weight.card().clone(), weight.card().clone());
            }
            Ends::Link { a, wa, b, wb } => {
                let (x, y) = (h.vertex_id(*a), h.vertex_id(*b));
                push(&mut raw, &e.id, x, y, wa.card().clone(), wb.card().clone());
                push(&mut raw, &e.id, y, x, wb.card().clone(), wa.card().clone());
            }
        }
    }
    Ok((build_generated(&raw)?, hom))
}

/// Lifts a homomorphism `α : g → m` to `g×K₂ → m×K₂`:
/// `(x,i) ↦ (α(x),i)` and `(e,x,y) ↦ (α(e),α(x),α(y))`.
pub fn kronecker_lift(alpha: &GraphHom, g: &Graph, m: &Graph) -> Result<GraphHom> {
    let r = resolve_graph_hom(alpha, g, m)?;
    let mut out = GraphHom::default();
    for (x, &ax) in r.vertex.iter().enumerate() {
        for i in [1, 2] {
            out.vertex_map.insert(vid(g.vertex_id(x), i), vid(m.vertex_id(ax), i));
        }
    }
    for (k, e) in g.edges().iter().enumerate() {
        let f = &m.edge(r.edge[k]).id;
        let ends = e.ends.vertices();
        let (a, b) = (ends[0], *ends.last().unwrap());
        let mut put = |x: usize, y: usize| {
            out.edge_map.insert(
                eid(&e.id, g.vertex_id(x), g.vertex_id(y)),
                eid(f, m.vertex_id(r.vertex[x]), m.vertex_id(r.vertex[y])),
            );
        };
        put(a, b);
        if a != b {
            put(b, a);
        }
    }
    Ok(out)
}
