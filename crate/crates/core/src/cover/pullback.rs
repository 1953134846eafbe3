use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{resolve_graph_hom, Graph, GraphHom, RawGraph};

use super::{build_generated, is_covering, kronecker_k2, kronecker_lift};

/// One connected component of a pullback with its two projections.
#[derive(Debug, Clone)]
pub struct CommonCover {
    pub k: Graph,
    pub to_g: GraphHom,
    pub to_h: GraphHom,
}

#[derive(Debug, Clone)]
pub struct Pullback {
    pub components: Vec<CommonCover>,
    /// Upper bound on the total vertex count: `|V_G|·|V_H|`, or four times
    /// that when the base has loops.
    pub vertex_bound: usize,
}

/// Common covers of `g` and `h` from coverings `a : g → m` and `b : h → m`
/// onto an unweighted base. Vertices are pairs `(x,y)` with `a(x) = b(y)`
/// and edges pairs `(e,f)` with `a(e) = b(f)`. When `m` has loops all three
/// graphs are first doubled by the product with `K₂`.
pub fn common_cover_pullback(g: &Graph, h: &Graph, m: &Graph, a: &GraphHom, b: &GraphHom) -> Result<Pullback> {
    if !m.is_unit_weighted() {
        return Err(Error::Weighted);
    }
    if !is_covering(a, g, m)? {
        return Err(Error::NotACovering("first map".into()));
    }
    if !is_covering(b, h, m)? {
        return Err(Error::NotACovering("second map".into()));
    }
    let bound = g.vertex_count() * h.vertex_count();
    if !m.has_loops() {
        return Ok(Pullback { components: loop_free_pullback(g, h, m, a, b)?, vertex_bound: bound });
    }
    let (gk, pg) = kronecker_k2(g)?;
    let (hk, ph) = kronecker_k2(h)?;
    let (mk, _) = kronecker_k2(m)?;
    let (ak, bk) = (kronecker_lift(a, g, m)?, kronecker_lift(b, h, m)?);
    let components = loop_free_pullback(&gk, &hk, &mk, &ak, &bk)?
        .into_iter()
        .map(|c| Ok(CommonCover { to_g: c.to_g.then(&pg)?, to_h: c.to_h.then(&ph)?, k: c.k }))
        .collect::<Result<_>>()?;
    Ok(Pullback { components, vertex_bound: 4 * bound })
}

fn loop_free_pullback(g: &Graph, h: &Graph, m: &Graph, a: &GraphHom, b: &GraphHom) -> Result<Vec<CommonCover>> {
    let (ra, rb) = (resolve_graph_hom(a, g, m)?, resolve_graph_hom(b, h, m)?);
    let pair = |x: usize, y: usize| format!("({},{})", g.vertex_id(x), h.vertex_id(y));
    let mut raw = RawGraph::multigraph();
    let mut to_g = GraphHom::default();
    let mut to_h = GraphHom::default();
    for x in 0..g.vertex_count() {
        for y in 0..h.vertex_count() {
            if ra.vertex[x] == rb.vertex[y] {
                raw.vertices.push(pair(x, y));
                to_g.vertex_map.insert(pair(x, y), g.vertex_id(x).to_string());
                to_h.vertex_map.insert(pair(x, y), h.vertex_id(y).to_string());
            }
        }
    }
    let mut by_image: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for f in 0..h.edge_count() {
        by_image.entry(rb.edge[f]).or_default().push(f);
    }
    // The end of an edge lying over base vertex `u`; the base is loop-free
    // so the two ends of any edge lie over different vertices.
    let over = |ends: Vec<usize>, map: &[usize], u: usize| -> (usize, usize) {
        if map[ends[0]] == u {
            (ends[0], ends[1])
        } else {
            (ends[1], ends[0])
        }
    };
    for (e, ge) in g.edges().iter().enumerate() {
        let t = ra.edge[e];
        let u = m.edge(t).ends.vertices()[0];
        let (xu, xv) = over(ge.ends.vertices(), &ra.vertex, u);
        for &f in by_image.get(&t).into_iter().flatten() {
            let he = h.edge(f);
            let (yu, yv) = over(he.ends.vertices(), &rb.vertex, u);
            let id = format!("({},{})", ge.id, he.id);
            raw = raw.edge(id.clone(), pair(xu, yu), pair(xv, yv));
            to_g.edge_map.insert(id.clone(), ge.id.clone());
            to_h.edge_map.insert(id, he.id.clone());
        }
    }
    let k = build_generated(&raw)?;
    Ok(k.components()
        .into_iter()
        .map(|comp| {
            let part = k.induced(&comp);
            let restrict = |hom: &GraphHom| GraphHom {
                vertex_map: part.vertices().iter().map(|v| (v.clone(), hom.vertex_map[v].clone())).collect(),
                edge_map: part.edges().iter().map(|e| (e.id.clone(), hom.edge_map[&e.id].clone())).collect(),
            };
            CommonCover { to_g: restrict(&to_g), to_h: restrict(&to_h), k: part }
        })
        .collect())
}
