use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};

/// The operations the determinant needs: a commutative ring with unit.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// A polynomial with integer coefficients, constant term first and no
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::from(0), |acc, c| acc * x + c)
    }

    /// `p(−x)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Exact quotient `self / q` in ℤ[x], or `None` when `q` does not divide.
    pub fn div_exact(&self, q: &IntPolynomial) -> Result<Option<IntPolynomial>> {
        let (dq, lead) = match (q.degree(), q.leading()) {
            (Some(d), Some(l)) => (d, l),
            _ => return Err(Error::ZeroDivisor),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok(Ring::is_zero(self).then(IntPolynomial::default));
        }
        let mut quot = vec![BigInt::from(0); rem.len() - dq];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dq];
            if Zero::is_zero(top) {
                continue;
            }
            if !Zero::is_zero(&(top % lead)) {
                return Ok(None);
            }
            let c = top / lead;
            for (i, qc) in q.coeffs.iter().enumerate() {
                rem[k + i] -= &c * qc;
            }
            quot[k] = c;
        }
        Ok(rem.iter().all(Zero::is_zero).then(|| IntPolynomial::new(quot)))
    }
}

/// Whether `p = q·r` for some integer polynomial `r`.
pub fn poly_divides(q: &IntPolynomial, p: &IntPolynomial) -> Result<bool> {
    Ok(p.div_exact(q)?.is_some())
}

impl Ring for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::default()
    }
    fn one() -> Self {
        Self::from_i64s(&[1])
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::from(0);
        Self::new((0..n).map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero)).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::default();
        }
        let mut out = vec![BigInt::from(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
    fn neg(&self) -> Self {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        Ring::add(self, rhs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        Ring::sub(self, rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        Ring::mul(self, rhs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        Ring::neg(self)
    }
}

/// Descending powers, e.g. `-x^5 + 7x^3 + 6x^2`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[-6, -1, 1]).to_string(), "x^2 - x - 6");
        assert_eq!(p(&[0, 0, 6, 7, 0, -1]).to_string(), "-x^5 + 7x^3 + 6x^2");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[1]).to_string(), "1");
        assert_eq!(p(&[-1, 2]).to_string(), "2x - 1");
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn divisibility() {
        let q = p(&[-6, -1, 1]);
        let big = p(&[0, 0, 6, 7, 0, -1]);
        assert!(poly_divides(&q, &big).unwrap());
        assert_eq!(big.div_exact(&q).unwrap(), Some(p(&[0, 0, -1, -1])));
        assert!(poly_divides(&q, &q).unwrap());
        assert!(!poly_divides(&p(&[1, 0, 1]), &q).unwrap());
        assert!(!poly_divides(&p(&[1, 2]), &p(&[1, 1])).unwrap());
        assert!(poly_divides(&p(&[1, 2]), &p(&[])).unwrap());
        assert!(!poly_divides(&p(&[1, 1, 1]), &p(&[1, 1])).unwrap());
        assert_eq!(poly_divides(&p(&[]), &q).unwrap_err(), Error::ZeroDivisor);
    }

    #[test]
    fn reflect_and_eval() {
        let q = p(&[-6, -1, 1]);
        assert_eq!(q.reflect(), p(&[-6, 1, 1]));
        assert_eq!(q.eval(&BigInt::from(3)), BigInt::from(0));
    }

    fn small_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-5i64..=5, 0..5).prop_map(|c| p(&c))
    }

    proptest! {
        #[test]
        fn product_is_divisible(a in small_poly(), b in small_poly()) {
            prop_assume!(!Ring::is_zero(&b));
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b).unwrap(), Some(a.clone()));
        }

        #[test]
        fn evaluation_is_a_ring_map(a in small_poly(), b in small_poly(), x in -4i64..=4) {
            let x = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a - &b).eval(&x), a.eval(&x) - b.eval(&x));
        }
    }
}
