use std::collections::VecDeque;

use num::integer::Integer;
use num::{BigInt, BigRational, BigUint, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Ends, Graph, GraphHom, RawGraph};

use super::{build_generated, kronecker_k2};

/// A cycle on which the ratios `x_j / x_i` multiply to `ratio ≠ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureCycle {
    pub edges: Vec<String>,
    pub ratio: BigRational,
}

/// Outcome of solving `m_ij·x_i = m_ji·x_j` over positive integers, one
/// equation per non-loop edge, where `m_ij` is the weight at `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolveResult {
    pub solvable: bool,
    /// The least positive solution, indexed like the vertices.
    pub multiplicities: Option<Vec<BigUint>>,
    pub failure_cycle: Option<FailureCycle>,
}

fn fin(w: &crate::Weight) -> BigInt {
    BigInt::from(w.finite().expect("checked finite").clone())
}

pub fn finite_cover_solve(h: &Graph) -> Result<CoverSolveResult> {
    h.require_finite()?;
    h.require_connected()?;
    let n = h.vertex_count();
    // value, parent vertex, parent edge, depth
    let mut val: Vec<Option<BigRational>> = vec![None; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut tree_edge = vec![false; h.edge_count()];
    if n == 0 {
        return Ok(CoverSolveResult { solvable: true, multiplicities: Some(vec![]), failure_cycle: None });
    }
    val[0] = Some(BigRational::one());
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for (k, j, _) in h.half_edges(i) {
            if j != i && val[j].is_none() {
                val[j] = Some(val[i].as_ref().unwrap() * gain(h, k, i));
                parent[j] = Some((i, k));
                depth[j] = depth[i] + 1;
                tree_edge[k] = true;
                queue.push_back(j);
            }
        }
    }
    let val: Vec<BigRational> = val.into_iter().map(Option::unwrap).collect();
    for (k, e) in h.edges().iter().enumerate() {
        let Ends::Link { a, b, .. } = e.ends else { continue };
        if tree_edge[k] {
            continue;
        }
        let ratio = &val[a] * gain(h, k, a) / &val[b];
        if !ratio.is_one() {
            return Ok(CoverSolveResult {
                solvable: false,
                multiplicities: None,
                failure_cycle: Some(FailureCycle { edges: cycle_through(h, &parent, &depth, k), ratio }),
            });
        }
    }
    let lcm = val.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = val.iter().map(|v| (v * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let mult = ints.iter().map(|v| (v / &g).abs().to_biguint().unwrap()).collect();
    Ok(CoverSolveResult { solvable: true, multiplicities: Some(mult), failure_cycle: None })
}

/// `x_j / x_i` forced by the non-loop edge `k` read from end `i`.
fn gain(h: &Graph, k: usize, i: usize) -> BigRational {
    let e = &h.edge(k).ends;
    let j = e.other(i).unwrap();
    BigRational::new(fin(e.weight_at(i).unwrap()), fin(e.weight_at(j).unwrap()))
}

/// The tree path from `b` up to the common ancestor and down to `a`, closed
/// by the non-tree edge `k = a−b`, listed starting from `k`.
fn cycle_through(h: &Graph, parent: &[Option<(usize, usize)>], depth: &[usize], k: usize) -> Vec<String> {
    let Ends::Link { a, b, .. } = h.edge(k).ends else { unreachable!() };
    let (mut u, mut v) = (a, b);
    let (mut up_a, mut up_b) = (Vec::new(), Vec::new());
    while u != v {
        if depth[u] >= depth[v] {
            let (p, e) = parent[u].unwrap();
            up_a.push(e);
            u = p;
        } else {
            let (p, e) = parent[v].unwrap();
            up_b.push(e);
            v = p;
        }
    }
    // k goes a → b; then b climbs to the common ancestor and descends to a.
    let mut edges = vec![k];
    edges.extend(up_b);
    edges.extend(up_a.into_iter().rev());
    edges.into_iter().map(|e| h.edge(e).id.clone()).collect()
}

/// A finite unweighted cover together with its covering hom.
#[derive(Debug, Clone)]
pub struct FiniteCover {
    pub graph: Graph,
    pub hom: GraphHom,
}

/// Builds a finite unweighted cover with `mult[i]` copies of vertex `i`.
///
/// Copies are `(i,s)` for `s` in `1..=mult[i]`. For a non-loop edge `e`
/// between `a < b` with `m = m_ab·mult[a]`, edge `(e,k)` for `k` in `1..=m`
/// joins copy `⌈k/m_ab⌉` of `a` to copy `⌈k/m_ba⌉` of `b`, so consecutive
/// runs of `m_ab` edges share an `a` copy. A loop of weight `q` at `i`
/// becomes `q` loops `(e,s,t)` at each copy `(i,s)`. With `loop_free`, the
/// result is further doubled by the product with `K₂`.
pub fn build_finite_cover(h: &Graph, mult: &[usize], loop_free: bool) -> Result<FiniteCover> {
    h.require_finite()?;
    if mult.len() != h.vertex_count() {
        return Err(Error::BadMultiplicities(format!("expected {} entries, got {}", h.vertex_count(), mult.len())));
    }
    if let Some(i) = mult.iter().position(|&m| m == 0) {
        return Err(Error::BadMultiplicities(format!("entry for `{}` is zero", h.vertex_id(i))));
    }
    let small = |w: &crate::Weight| -> Result<usize> {
        usize::try_from(w.finite().unwrap()).map_err(|_| Error::BadMultiplicities("weight too large".into()))
    };
    let mut raw = RawGraph::multigraph();
    let mut hom = GraphHom::default();
    let vid = |i: usize, s: usize| format!("({},{s})", h.vertex_id(i));
    for (i, &m) in mult.iter().enumerate() {
        for s in 1..=m {
            raw.vertices.push(vid(i, s));
            hom.vertex_map.insert(vid(i, s), h.vertex_id(i).to_string());
        }
    }
    for e in h.edges() {
        match &e.ends {
            Ends::Link { a, wa, b, wb } => {
                let (mab, mba) = (small(wa)?, small(wb)?);
                let m = mab * mult[*a];
                if m != mba * mult[*b] {
                    return Err(Error::EquationViolated(e.id.clone()));
                }
                for k in 1..=m {
                    let id = format!("({},{k})", e.id);
                    raw = raw.edge(id.clone(), vid(*a, (k - 1) / mab + 1), vid(*b, (k - 1) / mba + 1));
                    hom.edge_map.insert(id, e.id.clone());
                }
            }
            Ends::Loop { at, weight } => {
                for s in 1..=mult[*at] {
                    for t in 1..=small(weight)? {
                        let id = format!("({},{s},{t})", e.id);
                        raw = raw.edge(id.clone(), vid(*at, s), vid(*at, s));
                        hom.edge_map.insert(id, e.id.clone());
                    }
                }
            }
        }
    }
    let graph = build_generated(&raw)?;
    if !loop_free {
        return Ok(FiniteCover { graph, hom });
    }
    let (doubled, proj) = kronecker_k2(&graph)?;
    let hom = proj.then(&hom)?;
    Ok(FiniteCover { graph: doubled, hom })
}
