use num::BigInt;

use crate::error::Result;

use super::matrix::WeightMatrix;
use super::poly::{IntPolynomial, Ring};

/// Coefficients of `det(x·I − A)` from the highest power down, computed
/// without division (Berkowitz). Works over any commutative ring.
pub fn berkowitz<R: Ring>(a: &[Vec<R>]) -> Vec<R> {
    let n = a.len();
    let mut vect = vec![R::one()];
    for r in 0..n {
        // t = [1, −a_rr, −R·C, −R·A·C, …, −R·A^{r−1}·C] for the leading r×r block A.
        let mut t = Vec::with_capacity(r + 2);
        t.push(R::one());
        t.push(a[r][r].neg());
        let mut col: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        for _ in 0..r {
            let rc = (0..r).fold(R::zero(), |acc, j| acc.add(&a[r][j].mul(&col[j])));
            t.push(rc.neg());
            col = (0..r).map(|i| (0..r).fold(R::zero(), |acc, j| acc.add(&a[i][j].mul(&col[j])))).collect();
        }
        // Toeplitz product: next[i] = Σ_{j ≤ i} t[i−j]·vect[j].
        vect = (0..r + 2)
            .map(|i| (0..vect.len()).filter(|&j| j <= i).fold(R::zero(), |acc, j| acc.add(&t[i - j].mul(&vect[j]))))
            .collect();
    }
    vect
}

pub fn determinant<R: Ring>(a: &[Vec<R>]) -> R {
    let v = berkowitz(a);
    let d = v.last().unwrap().clone();
    if a.len() % 2 == 1 {
        d.neg()
    } else {
        d
    }
}

/// `det(M − x·I)` for an integer matrix.
pub fn charpoly_of(m: &[Vec<BigInt>]) -> IntPolynomial {
    let n = m.len();
    let v = berkowitz(m);
    // det(M − xI) = (−1)^n det(xI − M); v holds descending coefficients.
    let sign = if n % 2 == 1 { BigInt::from(-1) } else { BigInt::from(1) };
    IntPolynomial::new(v.into_iter().rev().map(|c| c * &sign).collect())
}

/// `det(M − x·I)`; ω entries are refused.
pub fn charpoly(m: &WeightMatrix) -> Result<IntPolynomial> {
    Ok(charpoly_of(&m.to_integers()?))
}
