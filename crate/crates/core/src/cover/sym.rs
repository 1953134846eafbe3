use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::graph::{Ends, Graph, RawArc, RawDigraph, WeightedDigraph};
use crate::treecanon::{tree_equal, CanonicalTree, TreeInterner};
use crate::unfold::{out_lists, refine_labels};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcKind {
    Plus,
    Minus,
    Loop,
}

impl ArcKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ArcKind::Plus => "plus",
            ArcKind::Minus => "minus",
            ArcKind::Loop => "loop",
        }
    }
}

/// The symmetric weighted digraph of a weighted graph.
///
/// A non-loop edge `e` between `x < y` gives `e+ : x → y` weighted by the
/// half at `x` and `e- : y → x` weighted by the half at `y`; a loop gives
/// `e~`. Arc ids are edge ids with a one-character suffix, so they never
/// collide.
#[derive(Debug, Clone)]
pub struct SymDigraph {
    pub digraph: WeightedDigraph,
    /// Arc id → (edge id, kind).
    pub tags: BTreeMap<String, (String, ArcKind)>,
    reverse: Vec<usize>,
}

impl SymDigraph {
    /// Index of the arc that undoes arc `a`; a loop arc undoes itself.
    pub fn reverse_of(&self, a: usize) -> usize {
        self.reverse[a]
    }
}

pub(crate) fn sym_arc_id(edge: &str, kind: ArcKind) -> String {
    let c = match kind {
        ArcKind::Plus => '+',
        ArcKind::Minus => '-',
        ArcKind::Loop => '~',
    };
    format!("{edge}{c}")
}

pub fn sym(h: &Graph) -> SymDigraph {
    let mut raw = RawDigraph::new().vertices(h.vertices().iter().cloned());
    let mut tags = BTreeMap::new();
    let mut push = |raw: &mut RawDigraph, e: &str, kind, t: usize, hd: usize, w: &crate::Weight| {
        let id = sym_arc_id(e, kind);
        raw.arcs.push(RawArc {
            id: id.clone(),
            tail: h.vertex_id(t).to_string(),
            head: h.vertex_id(hd).to_string(),
            weight: w.card().clone(),
        });
        tags.insert(id, (e.to_string(), kind));
    };
    for e in h.edges() {
        match &e.ends {
            Ends::Loop { at, weight } => push(&mut raw, &e.id, ArcKind::Loop, *at, *at, weight),
            Ends::Link { a, wa, b, wb } => {
                push(&mut raw, &e.id, ArcKind::Plus, *a, *b, wa);
                push(&mut raw, &e.id, ArcKind::Minus, *b, *a, wb);
            }
        }
    }
    let digraph = raw.build().expect("sym of a valid graph is valid");
    let reverse = digraph
        .arcs()
        .iter()
        .map(|a| {
            let (edge, kind) = &tags[&a.id];
            let back = match kind {
                ArcKind::Plus => ArcKind::Minus,
                ArcKind::Minus => ArcKind::Plus,
                ArcKind::Loop => ArcKind::Loop,
            };
            digraph.arc_index(&sym_arc_id(edge, back)).unwrap()
        })
        .collect();
    SymDigraph { digraph, tags, reverse }
}

/// Canonical truncation at `depth` of the universal cover of `h` seen from
/// `x`: walks of the expanded symmetric digraph that never take back, in
/// the very next step, the copy of the edge they just used.
pub fn uc_truncate(h: &Graph, x: &str, depth: usize) -> Result<CanonicalTree> {
    let xi = h.vertex_index(x)?;
    h.require_connected()?;
    let s = sym(h);
    Ok(uc_tree(&s, xi, depth, &mut TreeInterner::new()))
}

pub(crate) fn uc_tree(s: &SymDigraph, x: usize, depth: usize, interner: &mut TreeInterner) -> CanonicalTree {
    let mut memo = HashMap::new();
    uc_memo(s, x, None, depth, interner, &mut memo)
}

type UcMemo = HashMap<(usize, Option<usize>, usize), CanonicalTree>;

fn uc_memo(
    s: &SymDigraph,
    v: usize,
    incoming: Option<usize>,
    depth: usize,
    interner: &mut TreeInterner,
    memo: &mut UcMemo,
) -> CanonicalTree {
    if let Some(t) = memo.get(&(v, incoming, depth)) {
        return t.clone();
    }
    let t = if depth == 0 {
        interner.leaf()
    } else {
        let d = &s.digraph;
        let mut kids = Vec::new();
        for &k in d.out_arcs(v) {
            let arc = d.arc(k);
            let m = if incoming.map(|i| s.reverse_of(i)) == Some(k) {
                match crate::Weight::new(arc.weight.card().pred().expect("weights are positive")) {
                    Some(m) => m,
                    None => continue,
                }
            } else {
                arc.weight.clone()
            };
            kids.push((uc_memo(s, arc.head, Some(k), depth - 1, interner, memo), m));
        }
        interner.node(None, kids)
    };
    memo.insert((v, incoming, depth), t.clone());
    t
}

/// Vertex labels of the coarsest partition where equal labels mean
/// isomorphic universal-cover views.
pub(crate) fn cover_labels(h: &Graph) -> Vec<usize> {
    refine_labels(&out_lists(&sym(h).digraph)).pop().unwrap()
}

pub(crate) fn uc_trees_equal(h: &Graph, x: usize, y: usize, depth: usize) -> bool {
    let s = sym(h);
    let mut interner = TreeInterner::new();
    let tx = uc_tree(&s, x, depth, &mut interner);
    let ty = uc_tree(&s, y, depth, &mut interner);
    tree_equal(&tx, &ty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RawGraph;
    use crate::iso::digraph_isomorphism;
    use crate::weight::{Card, Weight};

    #[test]
    fn plus_and_minus_weights() {
        let h = RawGraph::weighted().vertices(["x", "y"]).link("e", "x", 3, "y", 2).build().unwrap();
        let s = sym(&h);
        let d = &s.digraph;
        let plus = d.arc(d.arc_index("e+").unwrap());
        let minus = d.arc(d.arc_index("e-").unwrap());
        assert_eq!((d.vertex_id(plus.tail), d.vertex_id(plus.head)), ("x", "y"));
        assert_eq!(plus.weight, Weight::fin(3));
        assert_eq!((d.vertex_id(minus.tail), minus.weight.clone()), ("y", Weight::fin(2)));
        assert_eq!(s.tags["e-"], ("e".to_string(), ArcKind::Minus));
    }

    #[test]
    fn loop_gives_single_arc() {
        let h = RawGraph::weighted().vertex("v").looped("l", "v", 5).build().unwrap();
        let s = sym(&h);
        assert_eq!(s.digraph.arcs().len(), 1);
        assert_eq!(s.reverse_of(0), 0);
        assert_eq!(s.digraph.arcs()[0].weight, Weight::fin(5));
    }

    #[test]
    fn relabelling_gives_isomorphic_sym() {
        let a = RawGraph::weighted()
            .vertices(["a", "b", "c"])
            .link("e", "a", 2, "b", 1)
            .link("f", "b", 3, "c", 1)
            .looped("l", "c", 2)
            .build()
            .unwrap();
        // same graph with the order of the names reversed
        let b = RawGraph::weighted()
            .vertices(["z", "y", "x"])
            .link("e", "z", 2, "y", 1)
            .link("f", "y", 3, "x", 1)
            .looped("l", "x", 2)
            .build()
            .unwrap();
        let (sa, sb) = (sym(&a), sym(&b));
        assert!(digraph_isomorphism(&sa.digraph, &sb.digraph).is_some());
        // plus/minus flip under the reversed order
        assert_eq!(sa.tags["e+"].1, ArcKind::Plus);
        let plus_b = sb.digraph.arc(sb.digraph.arc_index("e+").unwrap());
        assert_eq!(sb.digraph.vertex_id(plus_b.tail), "y");
    }

    #[test]
    fn loop_of_weight_two_is_a_biinfinite_path() {
        let h = RawGraph::weighted().vertex("v").looped("l", "v", 2).build().unwrap();
        let t = uc_truncate(&h, "v", 3).unwrap();
        assert_eq!(t.render(), "*\n  2x\n    1x\n      1x\n");
    }

    #[test]
    fn omega_star() {
        let h = RawGraph::weighted().vertices(["x", "y"]).link("e", "x", Card::Omega, "y", 1).build().unwrap();
        let t = uc_truncate(&h, "x", 2).unwrap();
        assert_eq!(t.children().len(), 1);
        assert!(t.children()[0].1.is_omega());
        assert!(t.children()[0].0.is_leaf());
    }

    #[test]
    fn alternating_four_three() {
        let h = RawGraph::weighted().vertices(["x", "y"]).link("e", "x", 4, "y", 3).build().unwrap();
        let t = uc_truncate(&h, "x", 2).unwrap();
        assert_eq!(t.render(), "*\n  4x\n    2x\n");
    }

    #[test]
    fn disconnected_is_rejected() {
        let h = RawGraph::weighted().vertices(["x", "y"]).build().unwrap();
        assert!(uc_truncate(&h, "x", 1).is_err());
        assert!(uc_truncate(&RawGraph::weighted().vertex("x").build().unwrap(), "q", 1).is_err());
    }
}
