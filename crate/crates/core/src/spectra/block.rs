use num::BigInt;

use crate::error::{Error, Result};

use super::det::{charpoly_of, determinant};
use super::matrix::{matrix_cover_check, WeightMatrix};
use super::poly::{IntPolynomial, Ring};

/// Block-triangular form of `M − x·I` relative to a covering map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTriangular {
    /// Row/column order used: class representatives first, by class, then
    /// the remaining indices ascending.
    pub order: Vec<usize>,
    /// Lower-right block, indexed like `order[p..]`.
    pub s: Vec<Vec<IntPolynomial>>,
    pub det_s: IntPolynomial,
    pub charpoly_m: IntPolynomial,
    pub charpoly_n: IntPolynomial,
    /// `charpoly_m == charpoly_n · det_s`.
    pub check: bool,
}

/// Reduces `M − x·I` to `[[N − x·I, R], [0, S]]` by adding each class's
/// columns into its representative column and then subtracting the
/// representative row from the other rows of its class.
pub fn block_triangularize(m: &WeightMatrix, n: &WeightMatrix, map: &[usize]) -> Result<BlockTriangular> {
    if !matrix_cover_check(m, n, map)? {
        return Err(Error::NotIntertwining);
    }
    let (mi, ni) = (m.to_integers()?, n.to_integers()?);
    let (dim, p) = (m.dim(), n.dim());
    let mut order: Vec<usize> = (0..p).map(|j| map.iter().position(|&c| c == j).unwrap()).collect();
    let rest: Vec<usize> = (0..dim).filter(|i| !order.contains(i)).collect();
    order.extend(rest);
    let cls: Vec<usize> = order.iter().map(|&i| map[i]).collect();

    let x = IntPolynomial::x();
    let minus_x = |a: usize, b: usize, v: &BigInt| {
        let c = IntPolynomial::constant(v.clone());
        if a == b {
            &c - &x
        } else {
            c
        }
    };
    let mut w: Vec<Vec<IntPolynomial>> =
        (0..dim).map(|a| (0..dim).map(|b| minus_x(a, b, &mi[order[a]][order[b]])).collect()).collect();
    for row in w.iter_mut() {
        for b in p..dim {
            row[cls[b]] = &row[cls[b]] + &row[b];
        }
    }
    for a in p..dim {
        let rep = w[cls[a]].clone();
        for (cell, r) in w[a].iter_mut().zip(&rep) {
            *cell = &*cell - r;
        }
    }
    for a in 0..dim {
        for b in 0..p {
            let want = if a < p { minus_x(a, b, &ni[a][b]) } else { IntPolynomial::zero() };
            if w[a][b] != want {
                return Err(Error::Inconsistent(format!("entry ({a},{b}) after reduction is {}", w[a][b])));
            }
        }
    }
    let s: Vec<Vec<IntPolynomial>> = w[p..].iter().map(|r| r[p..].to_vec()).collect();
    let det_s = determinant(&s);
    let charpoly_m = charpoly_of(&mi);
    let charpoly_n = charpoly_of(&ni);
    let check = charpoly_m == &charpoly_n * &det_s;
    Ok(BlockTriangular { order, s, det_s, charpoly_m, charpoly_n, check })
}

#[cfg(test)]
mod tests {
    use super::super::matrix::tests::{five, two};
    use super::*;

    #[test]
    fn five_over_two() {
        let b = block_triangularize(&five(), &two(), &[0, 0, 1, 1, 1]).unwrap();
        assert_eq!(b.order, vec![0, 2, 1, 3, 4]);
        assert_eq!(b.det_s, IntPolynomial::from_i64s(&[0, 0, -1, -1]));
        assert_eq!(b.charpoly_n, IntPolynomial::from_i64s(&[-6, -1, 1]));
        assert!(b.check);
        assert_eq!(b.s.len(), 3);
    }

    #[test]
    fn identity_map_leaves_nothing() {
        let b = block_triangularize(&two(), &two(), &[0, 1]).unwrap();
        assert!(b.s.is_empty());
        assert_eq!(b.det_s, IntPolynomial::from_i64s(&[1]));
        assert!(b.check);
    }

    #[test]
    fn non_covering_map_is_refused() {
        let err = block_triangularize(&five(), &two(), &[0, 1, 1, 1, 0]).unwrap_err();
        assert_eq!(err, Error::NotIntertwining);
    }
}
