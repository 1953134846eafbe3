//! Brute-force isomorphism search for small graphs and digraphs.
//!
//! Backtracking over vertices in breadth-first order, pruning candidates by
//! a degree signature and by consistency with the pairs already mapped.

use std::collections::VecDeque;

use crate::graph::{Ends, Graph, WeightedDigraph};
use crate::weight::Weight;

/// Dense relation: `rel[u][v]` is the sorted list of labels of the
/// edges/arcs between `u` and `v`.
struct Dense<L> {
    rel: Vec<Vec<Vec<L>>>,
    sig: Vec<Vec<Vec<L>>>,
    adj: Vec<Vec<usize>>,
}

impl<L: Ord + Clone> Dense<L> {
    fn new(n: usize, pairs: Vec<(usize, usize, L)>) -> Self {
        let mut rel = vec![vec![Vec::new(); n]; n];
        let mut adj = vec![Vec::new(); n];
        for (u, v, l) in pairs {
            rel[u][v].push(l);
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in rel.iter_mut() {
            for cell in row.iter_mut() {
                cell.sort();
            }
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        let sig = (0..n)
            .map(|u| {
                let mut s: Vec<Vec<L>> = rel[u].iter().filter(|r| !r.is_empty()).cloned().collect();
                s.sort();
                s
            })
            .collect();
        Dense { rel, sig, adj }
    }
}

impl<L> Dense<L> {
    fn n(&self) -> usize {
        self.rel.len()
    }
}

fn bfs_order<L>(d: &Dense<L>, start: Option<usize>) -> Vec<usize> {
    let n = d.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let starts = start.into_iter().chain(0..n);
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &v in &d.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
    }
    order
}

fn search<L: Ord + Clone>(a: &Dense<L>, b: &Dense<L>, fixed: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let n = a.n();
    if n != b.n() {
        return None;
    }
    let mut sa: Vec<&Vec<Vec<L>>> = a.sig.iter().collect();
    let mut sb: Vec<&Vec<Vec<L>>> = b.sig.iter().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let order = bfs_order(a, fixed.map(|f| f.0));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if let Some((x, y)) = fixed {
        if a.sig[x] != b.sig[y] || a.rel[x][x] != b.rel[y][y] {
            return None;
        }
        map[x] = y;
        used[y] = true;
    }
    fn go<L: Ord>(
        k: usize,
        order: &[usize],
        a: &Dense<L>,
        b: &Dense<L>,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let u = order[k];
        if map[u] != usize::MAX {
            return go(k + 1, order, a, b, map, used);
        }
        for c in 0..b.n() {
            if used[c] || a.sig[u] != b.sig[c] || a.rel[u][u] != b.rel[c][c] {
                continue;
            }
            let consistent = order[..k].iter().all(|&v| {
                let w = map[v];
                a.rel[u][v] == b.rel[c][w] && a.rel[v][u] == b.rel[w][c]
            });
            if !consistent {
                continue;
            }
            map[u] = c;
            used[c] = true;
            if go(k + 1, order, a, b, map, used) {
                return true;
            }
            map[u] = usize::MAX;
            used[c] = false;
        }
        false
    }
    // A fixed vertex heads the order; it is already mapped, so `go` only
    // checks consistency for later vertices against it.
    if go(0, &order, a, b, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn graph_dense(g: &Graph) -> Dense<(Weight, Weight)> {
    let mut pairs = Vec::new();
    for e in g.edges() {
        match &e.ends {
            Ends::Loop { at, weight } => pairs.push((*at, *at, (weight.clone(), weight.clone()))),
            Ends::Link { a, wa, b, wb } => {
                pairs.push((*a, *b, (wa.clone(), wb.clone())));
                pairs.push((*b, *a, (wb.clone(), wa.clone())));
            }
        }
    }
    Dense::new(g.vertex_count(), pairs)
}

fn digraph_dense(d: &WeightedDigraph) -> Dense<(bool, Weight)> {
    // `true` marks the forward direction so that in- and out-arcs differ.
    let mut pairs = Vec::new();
    for a in d.arcs() {
        pairs.push((a.tail, a.head, (true, a.weight.clone())));
        if a.tail != a.head {
            pairs.push((a.head, a.tail, (false, a.weight.clone())));
        }
    }
    Dense::new(d.vertex_count(), pairs)
}

/// Vertex bijection of a weighted graph isomorphism `a → b`, if any.
pub fn graph_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.edge_count() != b.edge_count() {
        return None;
    }
    search(&graph_dense(a), &graph_dense(b), None)
}

pub fn graphs_isomorphic(a: &Graph, b: &Graph) -> bool {
    graph_isomorphism(a, b).is_some()
}

/// An automorphism of `g` mapping vertex `x` to vertex `y`, if any.
pub fn automorphism_mapping(g: &Graph, x: usize, y: usize) -> Option<Vec<usize>> {
    let d = graph_dense(g);
    search(&d, &d, Some((x, y)))
}

/// Isomorphism of weighted digraphs, root to root when both are rooted.
pub fn digraph_isomorphism(a: &WeightedDigraph, b: &WeightedDigraph) -> Option<Vec<usize>> {
    if a.arcs().len() != b.arcs().len() {
        return None;
    }
    let fixed = match (a.root(), b.root()) {
        (Some(x), Some(y)) => Some((x, y)),
        (None, None) => None,
        _ => return None,
    };
    search(&digraph_dense(a), &digraph_dense(b), fixed)
}

pub fn digraphs_isomorphic(a: &WeightedDigraph, b: &WeightedDigraph) -> bool {
    digraph_isomorphism(a, b).is_some()
}
