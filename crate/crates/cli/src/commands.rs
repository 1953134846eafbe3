use std::path::Path;

use coverlab::cover::{self, covering_equivalence, same_uc_routes};
use coverlab::spectra::{self, block_triangularize, cover_products, matrix_cover_check, weight_matrix};
use coverlab::unfold::{self, refine, unfold_truncate_from};
use coverlab::{CanonicalTree, Error, Graph, GraphHom};
use num::ToPrimitive;
use serde_json::{json, Value};

use crate::document::{
    digraph_value, graph_value, kind_of, load_digraph, load_document, load_graph, load_hom, parse_document, Document,
};
use crate::report::{hom_value, matrix_value, partition_value, poly_value, Report};
use crate::CliError;

type Outcome = Result<Report, CliError>;

fn shown(p: &Path) -> Value {
    json!(p.display().to_string())
}

fn norris_depth(n: usize) -> usize {
    n.saturating_sub(1)
}

fn tree_report(r: &mut Report, t: &CanonicalTree) {
    let size = match t.expanded_size() {
        Some(s) => s.to_u64().map(Value::from).unwrap_or_else(|| json!(s.to_string())),
        None => json!("infinite"),
    };
    r.set("tree", t.render()).set("size", size).set("distinctSubtrees", t.distinct_subtrees());
}

pub fn unfold(file: &Path, root: Option<String>, depth: Option<usize>) -> Outcome {
    let d = load_digraph(file)?;
    let x = match root {
        Some(x) => x,
        None => d.vertex_id(d.require_root()?).to_string(),
    };
    let depth = depth.unwrap_or(norris_depth(d.vertex_count()));
    let t = unfold_truncate_from(&d, &x, depth)?;
    let mut r = Report::new("unfold");
    r.set("input", shown(file)).set("root", x).set("depth", depth);
    tree_report(&mut r, &t);
    Ok(r)
}

pub fn unf_equiv(file: &Path, x: &str, y: &str) -> Outcome {
    let d = load_digraph(file)?;
    let trace = refine(&d);
    let same = unfold::unf_equivalent(&d, x, y)?;
    let mut r = Report::new("unf-equiv");
    r.set("input", shown(file))
        .set("pair", json!([x, y]))
        .set("partition", partition_value(trace.final_partition()))
        .set("fixpointIndex", trace.fixpoint_index)
        .verdict("equivalent", same);
    Ok(r)
}

pub fn quotient_digraph(file: &Path, root: Option<String>) -> Outcome {
    let mut d = load_digraph(file)?;
    if let Some(x) = root {
        d = d.rooted_at(&x)?;
    }
    let (q, hom) = unfold::canonical_quotient(&d)?;
    let mut r = Report::new("quotient-digraph");
    r.set("input", shown(file))
        .set("partition", partition_value(refine(&d).final_partition()))
        .set("quotient", digraph_value(&q, None))
        .set("map", hom_value(&hom));
    Ok(r)
}

pub fn common_unfolding(g: &Path, h: &Path) -> Outcome {
    let (dg, dh) = (load_digraph(g)?, load_digraph(h)?);
    let mut r = Report::new("common-unfolding");
    r.set("inputs", json!([shown(g), shown(h)]));
    match unfold::common_unfolding(&dg, &dh)? {
        Some(c) => {
            r.verdict("exists", true)
                .set("unfolding", digraph_value(&c.k, None))
                .set("toG", hom_value(&c.to_g))
                .set("toH", hom_value(&c.to_h));
        }
        None => {
            r.verdict("exists", false);
        }
    }
    Ok(r)
}

pub fn uc(file: &Path, vertex: &str, depth: Option<usize>) -> Outcome {
    let (_, g) = load_graph(file)?;
    let depth = depth.unwrap_or(norris_depth(g.vertex_count()));
    let t = cover::uc_truncate(&g, vertex, depth)?;
    let mut r = Report::new("uc");
    r.set("input", shown(file)).set("vertex", vertex).set("depth", depth);
    tree_report(&mut r, &t);
    Ok(r)
}

/// Vertex map as indices into `h`, when it is total and well-formed.
fn index_map(hom: &GraphHom, g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    g.vertices().iter().map(|v| h.vertex_index(hom.vertex_map.get(v)?).ok()).collect()
}

pub fn cover_check(g: &Path, h: &Path, hom: &Path) -> Outcome {
    let ((_, gg), (_, hh), map) = (load_graph(g)?, load_graph(h)?, load_hom(hom)?);
    let covering = cover::is_covering(&map, &gg, &hh)?;
    let mut r = Report::new("cover-check");
    r.set("inputs", json!([shown(g), shown(h), shown(hom)]));
    let (mg, mh) = (weight_matrix(&gg), weight_matrix(&hh));
    if let Some(idx) = index_map(&map, &gg, &hh) {
        if let Ok(check) = matrix_cover_check(&mg, &mh, &idx) {
            let (left, right) = cover_products(&mg, &mh, &idx)?;
            let rows = |m: spectra::Rows| {
                Value::Array(
                    m.iter().map(|row| Value::Array(row.iter().map(crate::document::card_value).collect())).collect(),
                )
            };
            r.set("matrixCheck", check).set("products", json!({"left": rows(left), "right": rows(right)}));
        }
    }
    r.set("matrixG", matrix_value(&mg)).set("matrixH", matrix_value(&mh)).verdict("covering", covering);
    Ok(r)
}

pub fn minimize(file: &Path) -> Outcome {
    let (_, g) = load_graph(file)?;
    let (base, hom) = cover::minimize(&g)?;
    let mut r = Report::new("minimize");
    r.set("input", shown(file))
        .set("partition", partition_value(&covering_equivalence(&g)))
        .set("base", graph_value(&base, kind_of(&base), None))
        .set("baseMatrix", matrix_value(&weight_matrix(&base)))
        .set("map", hom_value(&hom));
    Ok(r)
}

pub fn same_uc(g: &Path, h: &Path) -> Outcome {
    let ((_, gg), (_, hh)) = (load_graph(g)?, load_graph(h)?);
    let (joint, bases) = same_uc_routes(&gg, &hh)?;
    if joint != bases {
        return Err(Error::Inconsistent(format!("joint refinement says {joint}, minimal bases say {bases}")).into());
    }
    let mut r = Report::new("same-uc");
    r.set("inputs", json!([shown(g), shown(h)]))
        .set("routes", json!({"jointRefinement": joint, "minimalBases": bases}))
        .verdict("same", joint);
    Ok(r)
}

pub fn norris(file: &Path, x: &str, y: &str) -> Outcome {
    let check = match load_document(file)? {
        Document::Digraph { digraph, .. } => unfold::norris_crosscheck(&digraph, x, y)?,
        Document::Graph { graph, .. } => cover::norris_uc_crosscheck(&graph, x, y)?,
    };
    if !check.agrees() {
        return Err(Error::Inconsistent(format!(
            "trees at depth {} say {}, refinement says {}",
            check.depth_used, check.trunc_equal, check.refine_equal
        ))
        .into());
    }
    let mut r = Report::new("norris");
    r.set("input", shown(file))
        .set("pair", json!([x, y]))
        .set("depth", check.depth_used)
        .set("truncationsEqual", check.trunc_equal)
        .set("refinementEqual", check.refine_equal)
        .verdict("equivalent", check.refine_equal);
    Ok(r)
}

pub fn degree_matrix(file: &Path) -> Outcome {
    let (_, g) = load_graph(file)?;
    let d = cover::degree_partition(&g)?;
    let mut r = Report::new("degree-matrix");
    r.set("input", shown(file))
        .set("partition", partition_value(&d.partition))
        .set("classes", json!(d.partition.block_ids()))
        .set("matrix", json!(d.matrix))
        .set("base", graph_value(&d.base, kind_of(&d.base), None))
        .set("map", hom_value(&d.hom));
    Ok(r)
}

pub fn finite_cover(file: &Path, build: bool, loop_free: bool) -> Outcome {
    let (_, h) = load_graph(file)?;
    let res = cover::finite_cover_solve(&h)?;
    let mut r = Report::new("finite-cover");
    r.set("input", shown(file)).verdict("solvable", res.solvable);
    if let Some(c) = &res.failure_cycle {
        r.set("cycle", json!({"edges": c.edges, "ratio": c.ratio.to_string()}));
    }
    if let Some(m) = &res.multiplicities {
        let per: serde_json::Map<String, Value> = h
            .vertices()
            .iter()
            .zip(m)
            .map(|(v, k)| (v.clone(), k.to_u64().map(Value::from).unwrap_or_else(|| json!(k.to_string()))))
            .collect();
        r.set("multiplicities", Value::Object(per));
        if build {
            let sizes: Vec<usize> = m
                .iter()
                .map(|k| k.to_usize().ok_or_else(|| CliError::Usage("multiplicities too large to build".into())))
                .collect::<Result<_, _>>()?;
            let fc = cover::build_finite_cover(&h, &sizes, loop_free)?;
            let verified = cover::is_covering(&fc.hom, &fc.graph, &h)?;
            if !verified {
                return Err(Error::Inconsistent("built graph fails the covering check".into()).into());
            }
            r.set("loopFree", loop_free)
                .set("cover", graph_value(&fc.graph, kind_of(&fc.graph), None))
                .set("projection", hom_value(&fc.hom));
        }
    }
    Ok(r)
}

pub fn common_cover(g: &Path, h: &Path, m: &Path, a: &Path, b: &Path) -> Outcome {
    let ((_, gg), (_, hh), (_, mm)) = (load_graph(g)?, load_graph(h)?, load_graph(m)?);
    let (ha, hb) = (load_hom(a)?, load_hom(b)?);
    let pb = cover::common_cover_pullback(&gg, &hh, &mm, &ha, &hb)?;
    let comps: Vec<Value> = pb
        .components
        .iter()
        .map(|c| json!({"cover": graph_value(&c.k, kind_of(&c.k), None), "toG": hom_value(&c.to_g), "toH": hom_value(&c.to_h)}))
        .collect();
    let total: usize = pb.components.iter().map(|c| c.k.vertex_count()).sum();
    let mut r = Report::new("common-cover");
    r.set("inputs", json!([shown(g), shown(h), shown(m), shown(a), shown(b)]))
        .set("vertexBound", pb.vertex_bound)
        .set("totalVertices", total)
        .set("components", Value::Array(comps));
    Ok(r)
}

pub fn kronecker(file: &Path) -> Outcome {
    let (_, g) = load_graph(file)?;
    let (k, hom) = cover::kronecker_k2(&g)?;
    let mut r = Report::new("kronecker");
    r.set("input", shown(file)).set("product", graph_value(&k, kind_of(&k), None)).set("projection", hom_value(&hom));
    Ok(r)
}

pub fn charpoly(file: &Path) -> Outcome {
    let (_, g) = load_graph(file)?;
    let m = weight_matrix(&g);
    let p = spectra::charpoly(&m)?;
    let mut r = Report::new("charpoly");
    r.set("input", shown(file))
        .set("vertices", json!(g.vertices()))
        .set("matrix", matrix_value(&m))
        .set("polynomial", poly_value(&p));
    Ok(r)
}

pub fn charpoly_divides(g: &Path, h: &Path, hom: Option<&Path>) -> Outcome {
    let ((_, gg), (_, hh)) = (load_graph(g)?, load_graph(h)?);
    let (mg, mh) = (weight_matrix(&gg), weight_matrix(&hh));
    let (pg, ph) = (spectra::charpoly(&mg)?, spectra::charpoly(&mh)?);
    let quotient = pg.div_exact(&ph)?;
    let mut r = Report::new("charpoly-divides");
    r.set("inputs", json!([shown(g), shown(h)]))
        .set("polynomialG", poly_value(&pg))
        .set("polynomialH", poly_value(&ph));
    if let Some(q) = &quotient {
        r.set("quotient", poly_value(q));
    }
    if let Some(path) = hom {
        let map = load_hom(path)?;
        let idx = index_map(&map, &gg, &hh).ok_or_else(|| {
            CliError::Usage(format!("{}: vertex map does not send every vertex of G into H", path.display()))
        })?;
        match block_triangularize(&mg, &mh, &idx) {
            Ok(b) => {
                let order: Vec<&str> = b.order.iter().map(|&i| gg.vertex_id(i)).collect();
                r.set("intertwining", true)
                    .set("block", json!({"order": order, "detS": poly_value(&b.det_s), "check": b.check}));
            }
            Err(Error::NotIntertwining) => {
                r.verdict("intertwining", false);
            }
            Err(e) => return Err(e.into()),
        }
    }
    r.verdict("divides", quotient.is_some());
    Ok(r)
}

pub fn election(file: &Path) -> Outcome {
    let (_, g) = load_graph(file)?;
    let e = cover::election_check(&g)?;
    let mut r = Report::new("election");
    r.set("input", shown(file)).set("ambiguousClasses", json!(e.ambiguous_classes)).verdict("solvable", e.solvable);
    Ok(r)
}

pub fn validate(file: &Path) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Io(file.display().to_string(), e.to_string()))?;
    let mut r = Report::new("validate");
    r.set("input", shown(file));
    match parse_document(&text) {
        Ok(doc) => {
            let (vertices, edges) = match &doc {
                Document::Graph { graph, .. } => (graph.vertex_count(), graph.edge_count()),
                Document::Digraph { digraph, .. } => (digraph.vertex_count(), digraph.arcs().len()),
            };
            r.set("kind", doc.kind().as_str())
                .set("vertexCount", vertices)
                .set("edgeCount", edges)
                .set("canonical", doc.to_value())
                .verdict("valid", true);
        }
        Err(errors) => {
            r.set("errors", json!(errors)).verdict("valid", false);
        }
    }
    Ok(r)
}
