//! Unfoldings of rooted weighted digraphs.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{resolve_digraph_hom, GraphHom, RawArc, RawDigraph, WeightedDigraph};
use crate::partition::Partition;
use crate::treecanon::{tree_equal, CanonicalTree, TreeInterner};
use crate::weight::Card;
#[cfg(test)]
use crate::weight::Weight;
use crate::witness::class_witness;

/// The sequence of partitions produced by out-neighbourhood refinement.
///
/// `rounds[0]` is the single block; `rounds[fixpoint_index]` is the first
/// round equal to its successor, which is stored as the last element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementTrace {
    pub rounds: Vec<Partition>,
    pub fixpoint_index: usize,
}

impl RefinementTrace {
    pub fn final_partition(&self) -> &Partition {
        self.rounds.last().expect("at least two rounds")
    }
}

/// Weighted out-neighbourhoods: for each vertex, `(head, summed weight)`.
pub(crate) type OutLists = Vec<Vec<(usize, Card)>>;

pub(crate) fn out_lists(d: &WeightedDigraph) -> OutLists {
    (0..d.vertex_count()).map(|v| d.out_neighborhood(v)).collect()
}

/// Label vectors of every round, ending with two equal ones. Labels are
/// canonical: blocks numbered in order of their least member.
pub(crate) fn refine_labels(out: &OutLists) -> Vec<Vec<usize>> {
    let n = out.len();
    let mut rounds = vec![vec![0usize; n]];
    loop {
        let cur = rounds.last().unwrap();
        // Signature: own class plus the ω-summed weight sent into each class.
        let sigs: Vec<(usize, Vec<(usize, Card)>)> = (0..n)
            .map(|v| {
                let mut per: BTreeMap<usize, Card> = BTreeMap::new();
                for (h, w) in &out[v] {
                    let slot = per.entry(cur[*h]).or_insert_with(Card::zero);
                    *slot = &*slot + w;
                }
                (cur[v], per.into_iter().collect())
            })
            .collect();
        let next = canonical_labels(&sigs);
        let done = &next == cur;
        rounds.push(next);
        if done {
            return rounds;
        }
    }
}

/// Renumbers arbitrary labels as 0, 1, … in order of first occurrence.
pub(crate) fn canonical_labels<L: Ord>(labels: &[L]) -> Vec<usize> {
    let mut seen: BTreeMap<&L, usize> = BTreeMap::new();
    labels
        .iter()
        .map(|l| {
            let k = seen.len();
            *seen.entry(l).or_insert(k)
        })
        .collect()
}

pub fn refine(d: &WeightedDigraph) -> RefinementTrace {
    let rounds = refine_labels(&out_lists(d));
    let fixpoint_index = rounds.len() - 2;
    RefinementTrace {
        rounds: rounds.iter().map(|l| Partition::from_labels(d.vertices().to_vec(), l)).collect(),
        fixpoint_index,
    }
}

pub fn unf_equivalent(d: &WeightedDigraph, x: &str, y: &str) -> Result<bool> {
    let (xi, yi) = (d.vertex_index(x)?, d.vertex_index(y)?);
    let rounds = refine_labels(&out_lists(d));
    let last = rounds.last().unwrap();
    Ok(last[xi] == last[yi])
}

/// Number of equivalence classes among the vertices reachable from `x`.
pub fn regularity_index(d: &WeightedDigraph, x: &str) -> Result<usize> {
    let xi = d.vertex_index(x)?;
    let rounds = refine_labels(&out_lists(d));
    let last = rounds.last().unwrap();
    let mut classes: Vec<usize> = d.reachable_from(xi).into_iter().map(|v| last[v]).collect();
    classes.sort_unstable();
    classes.dedup();
    Ok(classes.len())
}

/// Quotient by the unfolding equivalence. Vertices are named by block
/// representatives and arcs `rx->ry`.
pub fn canonical_quotient(d: &WeightedDigraph) -> Result<(WeightedDigraph, GraphHom)> {
    let root = d.require_root()?;
    let trace = refine(d);
    let p = trace.final_partition();
    let rep = |v: usize| d.vertex_id(p.representative(p.block_index(v))).to_string();
    let arc_id = |a: &str, b: &str| format!("{a}->{b}");

    let mut raw = RawDigraph::new().root(rep(root));
    for b in 0..p.len() {
        let x = p.representative(b);
        raw.vertices.push(d.vertex_id(x).to_string());
        let mut into: BTreeMap<usize, Card> = BTreeMap::new();
        for (h, w) in d.out_neighborhood(x) {
            let slot = into.entry(p.block_index(h)).or_insert_with(Card::zero);
            *slot = &*slot + &w;
        }
        for (cb, w) in into {
            let (rx, ry) = (d.vertex_id(x), d.vertex_id(p.representative(cb)));
            raw.arcs.push(RawArc { id: arc_id(rx, ry), tail: rx.to_string(), head: ry.to_string(), weight: w });
        }
    }
    let q = raw.build()?;
    let mut hom = GraphHom::default();
    for v in 0..d.vertex_count() {
        hom.vertex_map.insert(d.vertex_id(v).to_string(), rep(v));
    }
    for a in d.arcs() {
        hom.edge_map.insert(a.id.clone(), arc_id(&rep(a.tail), &rep(a.head)));
    }
    Ok((q, hom))
}

/// Canonical truncation at `depth` of the complete unfolding from the root.
pub fn unfold_truncate(d: &WeightedDigraph, depth: usize) -> Result<CanonicalTree> {
    let root = d.require_root()?;
    Ok(truncate_at(d, root, depth, &mut TreeInterner::new()))
}

/// Same as [`unfold_truncate`] from an arbitrary vertex.
pub fn unfold_truncate_from(d: &WeightedDigraph, x: &str, depth: usize) -> Result<CanonicalTree> {
    let xi = d.vertex_index(x)?;
    Ok(truncate_at(d, xi, depth, &mut TreeInterner::new()))
}

pub(crate) fn truncate_at(d: &WeightedDigraph, x: usize, depth: usize, interner: &mut TreeInterner) -> CanonicalTree {
    let mut memo: HashMap<(usize, usize), CanonicalTree> = HashMap::new();
    truncate_memo(d, x, depth, interner, &mut memo)
}

fn truncate_memo(
    d: &WeightedDigraph,
    v: usize,
    depth: usize,
    interner: &mut TreeInterner,
    memo: &mut HashMap<(usize, usize), CanonicalTree>,
) -> CanonicalTree {
    if let Some(t) = memo.get(&(v, depth)) {
        return t.clone();
    }
    let t = if depth == 0 {
        interner.leaf()
    } else {
        let kids = d
            .out_arcs(v)
            .iter()
            .map(|&k| {
                let a = d.arc(k);
                (truncate_memo(d, a.head, depth - 1, interner, memo), a.weight.clone())
            })
            .collect();
        interner.node(None, kids)
    };
    memo.insert((v, depth), t.clone());
    t
}

/// True iff `h` is a surjective root-preserving homomorphism inducing
/// weighted surjections on out-arc sets.
pub fn is_unfolding(h: &GraphHom, g: &WeightedDigraph, t: &WeightedDigraph) -> Result<bool> {
    let r = resolve_digraph_hom(h, g, t)?;
    for (k, a) in g.arcs().iter().enumerate() {
        let b = t.arc(r.edge[k]);
        if b.tail != r.vertex[a.tail] || b.head != r.vertex[a.head] {
            return Ok(false);
        }
    }
    match (g.root(), t.root()) {
        (Some(x), Some(y)) if r.vertex[x] == y => {}
        (None, None) => {}
        _ => return Ok(false),
    }
    let mut hit_v = vec![false; t.vertex_count()];
    for &v in &r.vertex {
        hit_v[v] = true;
    }
    let mut hit_a = vec![false; t.arcs().len()];
    for &a in &r.edge {
        hit_a[a] = true;
    }
    if hit_v.contains(&false) || hit_a.contains(&false) {
        return Ok(false);
    }
    for u in 0..g.vertex_count() {
        let x = r.vertex[u];
        let mut sums: BTreeMap<usize, Card> = BTreeMap::new();
        for &k in g.out_arcs(u) {
            let slot = sums.entry(r.edge[k]).or_insert_with(Card::zero);
            *slot = &*slot + g.arc(k).weight.card();
        }
        for &f in t.out_arcs(x) {
            match sums.get(&f) {
                Some(s) if s == t.arc(f).weight.card() => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Result of [`common_unfolding`]: `k` unfolds onto both inputs.
#[derive(Debug, Clone)]
pub struct CommonUnfolding {
    pub k: WeightedDigraph,
    pub to_g: GraphHom,
    pub to_h: GraphHom,
}

/// Joint refinement of two digraphs placed side by side. Vertices of `h`
/// are shifted by `|V_g|`.
pub(crate) fn joint_labels(g: &WeightedDigraph, h: &WeightedDigraph) -> Vec<usize> {
    let shift = g.vertex_count();
    let mut out = out_lists(g);
    out.extend(out_lists(h).into_iter().map(|l| l.into_iter().map(|(v, w)| (v + shift, w)).collect()));
    refine_labels(&out).pop().unwrap()
}

/// A common finite unfolding of two rooted digraphs, if their complete
/// unfoldings are isomorphic. Vertices are `(x,y)` pairs of equivalent
/// vertices reachable from the pair of roots; arcs `(e,f)` come from
/// witnesses of the out-neighbourhood equivalence.
pub fn common_unfolding(g: &WeightedDigraph, h: &WeightedDigraph) -> Result<Option<CommonUnfolding>> {
    let (rg, rh) = (g.require_root()?, h.require_root()?);
    let cls = joint_labels(g, h);
    let shift = g.vertex_count();
    if cls[rg] != cls[rh + shift] {
        return Ok(None);
    }
    let pair_id = |x: usize, y: usize| format!("({},{})", g.vertex_id(x), h.vertex_id(y));

    let mut raw = RawDigraph::new().root(pair_id(rg, rh));
    let mut to_g = GraphHom::default();
    let mut to_h = GraphHom::default();
    let mut seen: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    let mut queue = VecDeque::from([(rg, rh)]);
    seen.insert((rg, rh), ());
    while let Some((x, y)) = queue.pop_front() {
        let id = pair_id(x, y);
        raw.vertices.push(id.clone());
        to_g.vertex_map.insert(id.clone(), g.vertex_id(x).to_string());
        to_h.vertex_map.insert(id.clone(), h.vertex_id(y).to_string());

        let mut left: BTreeMap<usize, Vec<(usize, Card)>> = BTreeMap::new();
        let mut right: BTreeMap<usize, Vec<(usize, Card)>> = BTreeMap::new();
        for &e in g.out_arcs(x) {
            let a = g.arc(e);
            left.entry(cls[a.head]).or_default().push((e, a.weight.card().clone()));
        }
        for &f in h.out_arcs(y) {
            let a = h.arc(f);
            right.entry(cls[a.head + shift]).or_default().push((f, a.weight.card().clone()));
        }
        if left.keys().ne(right.keys()) {
            return Err(Error::Inconsistent("equivalent vertices with different class support".into()));
        }
        for (c, xs) in &left {
            for (e, f, mu) in class_witness(xs, &right[c]) {
                let (ae, af) = (g.arc(e), h.arc(f));
                let next = (ae.head, af.head);
                let arc = format!("({},{})", ae.id, af.id);
                raw.arcs.push(RawArc {
                    id: arc.clone(),
                    tail: id.clone(),
                    head: pair_id(next.0, next.1),
                    weight: mu.card().clone(),
                });
                to_g.edge_map.insert(arc.clone(), ae.id.clone());
                to_h.edge_map.insert(arc, af.id.clone());
                if seen.insert(next, ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
    }
    let k = raw.build().map_err(|e| match e {
        Error::Invalid(v) => Error::IdCollision(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")),
        other => other,
    })?;
    Ok(Some(CommonUnfolding { k, to_g, to_h }))
}

/// Outcome of comparing truncation equality with refinement equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossCheck {
    pub trunc_equal: bool,
    pub refine_equal: bool,
    pub depth_used: usize,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.trunc_equal == self.refine_equal
    }
}

/// Compares truncations at depth `|V|−1` from `x` and `y` against the
/// refinement verdict.
pub fn norris_crosscheck(d: &WeightedDigraph, x: &str, y: &str) -> Result<CrossCheck> {
    let (xi, yi) = (d.vertex_index(x)?, d.vertex_index(y)?);
    let depth = d.vertex_count() - 1;
    let mut interner = TreeInterner::new();
    let tx = truncate_at(d, xi, depth, &mut interner);
    let ty = truncate_at(d, yi, depth, &mut interner);
    Ok(CrossCheck { trunc_equal: tree_equal(&tx, &ty), refine_equal: unf_equivalent(d, x, y)?, depth_used: depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::digraphs_isomorphic;

    fn loop_pair() -> WeightedDigraph {
        RawDigraph::new().vertices(["x", "y"]).arc("lx", "x", "x", 1).arc("ly", "y", "y", 1).build().unwrap()
    }

    fn cycle(n: usize, root: bool) -> WeightedDigraph {
        let mut raw = RawDigraph::new();
        for i in 0..n {
            raw = raw.vertex(format!("v{i}")).arc(format!("a{i}"), format!("v{i}"), format!("v{}", (i + 1) % n), 1);
        }
        if root {
            raw = raw.root("v0");
        }
        raw.build().unwrap()
    }

    fn single_loop(w: impl Into<Card>) -> WeightedDigraph {
        RawDigraph::new().vertex("v").arc("l", "v", "v", w).root("v").build().unwrap()
    }

    #[test]
    fn disjoint_unit_loops_merge() {
        let t = refine(&loop_pair());
        assert_eq!(t.final_partition().len(), 1);
        assert_eq!(t.fixpoint_index, 0);
        let d = loop_pair();
        assert!(tree_equal(&unfold_truncate_from(&d, "x", 3).unwrap(), &unfold_truncate_from(&d, "y", 3).unwrap()));
    }

    #[test]
    fn three_cycle_is_one_class() {
        let d = cycle(3, false);
        assert_eq!(refine(&d).final_partition().len(), 1);
    }

    #[test]
    fn different_loop_weights_split() {
        let d = RawDigraph::new().vertices(["a", "b"]).arc("la", "a", "a", 1).arc("lb", "b", "b", 2).build().unwrap();
        let t = refine(&d);
        assert!(t.final_partition().is_discrete());
        assert_eq!(t.fixpoint_index, 1);
        assert!(t.rounds[1].is_discrete());
    }

    #[test]
    fn equivalence_examples() {
        let d = RawDigraph::new()
            .vertices(["l", "p", "q", "o", "u"])
            .arc("1", "l", "l", 1)
            .arc("2", "p", "q", 1)
            .arc("3", "q", "p", 1)
            .arc("4", "o", "o", Card::Omega)
            .arc("5", "u", "u", 1)
            .build()
            .unwrap();
        assert!(unf_equivalent(&d, "l", "p").unwrap());
        assert!(unf_equivalent(&d, "o", "o").unwrap());
        assert!(!unf_equivalent(&d, "o", "u").unwrap());
        assert!(unf_equivalent(&d, "l", "zz").is_err());
    }

    #[test]
    fn three_cycle_quotient_is_unit_loop() {
        let d = cycle(3, true);
        let (q, h) = canonical_quotient(&d).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.arcs().len(), 1);
        assert!(q.arcs()[0].weight.is_one());
        assert!(is_unfolding(&h, &d, &q).unwrap());
    }

    #[test]
    fn parallel_arcs_fuse_in_quotient() {
        let d = RawDigraph::new()
            .vertices(["x", "y"])
            .arc("p1", "x", "y", 1)
            .arc("p2", "x", "y", 1)
            .arc("ly", "y", "y", 1)
            .root("x")
            .build()
            .unwrap();
        let (q, h) = canonical_quotient(&d).unwrap();
        assert_eq!(q.vertex_count(), 2);
        let xy = q.arc(q.arc_index("x->y").unwrap());
        assert_eq!(xy.weight, Weight::fin(2));
        assert!(is_unfolding(&h, &d, &q).unwrap());
    }

    #[test]
    fn quotient_is_idempotent() {
        let d = RawDigraph::new()
            .vertices(["r", "a", "b", "c"])
            .arc("1", "r", "a", 2)
            .arc("2", "r", "b", 1)
            .arc("3", "a", "c", 1)
            .arc("4", "b", "c", 1)
            .arc("5", "c", "c", 3)
            .root("r")
            .build()
            .unwrap();
        let (q, _) = canonical_quotient(&d).unwrap();
        let (qq, _) = canonical_quotient(&q).unwrap();
        assert_eq!(q.vertex_count(), 3);
        assert!(digraphs_isomorphic(&q, &qq));
    }

    #[test]
    fn truncation_examples() {
        let t = unfold_truncate(&single_loop(1), 3).unwrap();
        assert_eq!(t.render(), "*\n  1x\n    1x\n      1x\n");
        let t = unfold_truncate(&single_loop(2), 2).unwrap();
        assert_eq!(t.render(), "*\n  2x\n    2x\n");
        let star = RawDigraph::new().vertices(["x", "y"]).arc("a", "x", "y", Card::Omega).root("x").build().unwrap();
        let t = unfold_truncate(&star, 1).unwrap();
        assert_eq!(t.children().len(), 1);
        assert!(t.children()[0].0.is_leaf() && t.children()[0].1.is_omega());
        assert_eq!(regularity_index(&star, "x").unwrap(), 2);
        assert_eq!(regularity_index(&single_loop(1), "v").unwrap(), 1);
    }

    #[test]
    fn identity_is_an_unfolding() {
        let d = cycle(4, true);
        assert!(is_unfolding(&GraphHom::identity_digraph(&d), &d, &d).unwrap());
    }

    #[test]
    fn weight_mismatch_is_not_an_unfolding() {
        let g = RawDigraph::new()
            .vertices(["x", "y"])
            .arc("a", "x", "y", 1)
            .arc("b", "x", "y", 2)
            .root("x")
            .build()
            .unwrap();
        let t = RawDigraph::new().vertices(["x", "y"]).arc("c", "x", "y", 2).root("x").build().unwrap();
        let mut h = GraphHom::identity_digraph(&g);
        h.edge_map = [("a", "c"), ("b", "c")].iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        assert!(!is_unfolding(&h, &g, &t).unwrap());
        h.edge_map.remove("a");
        assert!(is_unfolding(&h, &g, &t).is_err());
    }

    #[test]
    fn common_unfolding_of_cycles() {
        let (g, h) = (cycle(2, true), cycle(3, true));
        let cu = common_unfolding(&g, &h).unwrap().unwrap();
        assert_eq!(cu.k.vertex_count(), 6);
        assert!(is_unfolding(&cu.to_g, &cu.k, &g).unwrap());
        assert!(is_unfolding(&cu.to_h, &cu.k, &h).unwrap());
    }

    #[test]
    fn common_unfolding_of_self_is_diagonal() {
        let g = RawDigraph::new()
            .vertices(["r", "a"])
            .arc("1", "r", "a", 3)
            .arc("2", "a", "r", Card::Omega)
            .arc("3", "a", "a", 1)
            .root("r")
            .build()
            .unwrap();
        let cu = common_unfolding(&g, &g).unwrap().unwrap();
        assert!(digraphs_isomorphic(&cu.k, &g));
        assert!(is_unfolding(&cu.to_g, &cu.k, &g).unwrap());
    }

    #[test]
    fn unary_and_binary_have_no_common_unfolding() {
        assert!(common_unfolding(&single_loop(1), &single_loop(2)).unwrap().is_none());
    }

    #[test]
    fn norris_examples() {
        let d = loop_pair();
        let c = norris_crosscheck(&d, "x", "y").unwrap();
        assert_eq!((c.trunc_equal, c.refine_equal, c.depth_used), (true, true, 1));
        let d = RawDigraph::new().vertices(["a", "b"]).arc("la", "a", "a", 1).arc("lb", "b", "b", 2).build().unwrap();
        let c = norris_crosscheck(&d, "a", "b").unwrap();
        assert_eq!((c.trunc_equal, c.refine_equal), (false, false));
    }
}
