use num::BigInt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weight::Card;

/// A square matrix of weights, zero meaning "no edge". Zero entries are
/// symmetric: `m[x][y] = 0` exactly when `m[y][x] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    entries: Vec<Vec<Card>>,
}

impl WeightMatrix {
    pub fn new(entries: Vec<Vec<Card>>) -> Result<Self> {
        let n = entries.len();
        if let Some(r) = entries.iter().position(|r| r.len() != n) {
            return Err(Error::Dimension(format!("row {r} has {} entries, expected {n}", entries[r].len())));
        }
        for (x, row) in entries.iter().enumerate() {
            for (y, c) in row.iter().enumerate().take(x) {
                if c.is_zero() != entries[y][x].is_zero() {
                    return Err(Error::Dimension(format!("zero pattern not symmetric at ({x},{y})")));
                }
            }
        }
        Ok(WeightMatrix { entries })
    }

    pub fn from_u64s(rows: &[&[u64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| Card::from(v)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Card>] {
        &self.entries
    }

    pub fn get(&self, x: usize, y: usize) -> &Card {
        &self.entries[x][y]
    }

    pub fn has_omega(&self) -> bool {
        self.entries.iter().flatten().any(Card::is_omega)
    }

    /// Entries as integers; ω is refused.
    pub fn to_integers(&self) -> Result<Vec<Vec<BigInt>>> {
        self.entries
            .iter()
            .map(|r| {
                r.iter().map(|c| c.finite().map(|v| BigInt::from(v.clone())).ok_or(Error::InfiniteWeight)).collect()
            })
            .collect()
    }
}

/// `m[x][y]` is the total weight at `x` of the edges joining `x` to `y`;
/// the diagonal holds loop weights. Rows follow the vertex id order.
pub fn weight_matrix(h: &Graph) -> WeightMatrix {
    let n = h.vertex_count();
    let mut entries = vec![vec![Card::zero(); n]; n];
    for (x, row) in entries.iter_mut().enumerate() {
        for (_, y, w) in h.half_edges(x) {
            row[y] = &row[y] + w.card();
        }
    }
    WeightMatrix { entries }
}

fn check_map(mg: &WeightMatrix, mh: &WeightMatrix, map: &[usize]) -> Result<()> {
    if map.len() != mg.dim() {
        return Err(Error::Dimension(format!("map has {} entries for dimension {}", map.len(), mg.dim())));
    }
    let p = mh.dim();
    let mut hit = vec![false; p];
    for &j in map {
        if j >= p {
            return Err(Error::NotSurjective(p));
        }
        hit[j] = true;
    }
    if hit.contains(&false) {
        return Err(Error::NotSurjective(p));
    }
    Ok(())
}

/// Rows of a possibly non-square weight matrix.
pub type Rows = Vec<Vec<Card>>;

/// `(M_G·B, B·M_H)` where `B[i][j] = 1` exactly when `map[i] = j`.
pub fn cover_products(mg: &WeightMatrix, mh: &WeightMatrix, map: &[usize]) -> Result<(Rows, Rows)> {
    check_map(mg, mh, map)?;
    let p = mh.dim();
    let left = mg
        .entries
        .iter()
        .map(|row| {
            let mut out = vec![Card::zero(); p];
            for (k, v) in row.iter().enumerate() {
                out[map[k]] = &out[map[k]] + v;
            }
            out
        })
        .collect();
    let right = map.iter().map(|&j| mh.entries[j].clone()).collect();
    Ok((left, right))
}

/// Whether `map` is the vertex part of a covering, by `M_G·B = B·M_H`.
pub fn matrix_cover_check(mg: &WeightMatrix, mh: &WeightMatrix, map: &[usize]) -> Result<bool> {
    let (l, r) = cover_products(mg, mh, map)?;
    Ok(l == r)
}
