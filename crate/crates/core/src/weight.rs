//! Cardinals in ℕ ∪ {ω} and the positive weights built on them.
//!
//! `Card` is the "weight or zero" domain: sums over empty sets and matrix
//! entries live here. `Weight` is what graphs store and is never zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num::{BigUint, One, Zero};

/// An element of ℕ ∪ {ω} with absorbing ω arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Card {
    Fin(BigUint),
    Omega,
}

impl Card {
    pub fn zero() -> Self {
        Card::Fin(BigUint::zero())
    }

    pub fn one() -> Self {
        Card::Fin(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Card::Fin(n) if n.is_zero())
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, Card::Omega)
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Card::Fin(n) => Some(n),
            Card::Omega => None,
        }
    }

    /// `self - 1`, with ω − 1 = ω. Returns `None` on zero.
    pub fn pred(&self) -> Option<Card> {
        match self {
            Card::Omega => Some(Card::Omega),
            Card::Fin(n) if n.is_zero() => None,
            Card::Fin(n) => Some(Card::Fin(n - 1u32)),
        }
    }

    /// Subtraction where ω − finite = ω. Undefined (None) for finite − ω
    /// and for negative finite results. ω − ω is ambiguous and also None.
    pub fn checked_sub(&self, other: &Card) -> Option<Card> {
        match (self, other) {
            (Card::Omega, Card::Fin(_)) => Some(Card::Omega),
            (Card::Omega, Card::Omega) => None,
            (Card::Fin(_), Card::Omega) => None,
            (Card::Fin(a), Card::Fin(b)) => (a >= b).then(|| Card::Fin(a - b)),
        }
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Card>>(items: I) -> Card {
        items.into_iter().fold(Card::zero(), |acc, c| &acc + c)
    }
}

impl From<u64> for Card {
    fn from(n: u64) -> Self {
        Card::Fin(BigUint::from(n))
    }
}

impl From<BigUint> for Card {
    fn from(n: BigUint) -> Self {
        Card::Fin(n)
    }
}

impl From<Weight> for Card {
    fn from(w: Weight) -> Self {
        w.0
    }
}

impl From<&Weight> for Card {
    fn from(w: &Weight) -> Self {
        w.0.clone()
    }
}

impl Ord for Card {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Card::Omega, Card::Omega) => Ordering::Equal,
            (Card::Omega, Card::Fin(_)) => Ordering::Greater,
            (Card::Fin(_), Card::Omega) => Ordering::Less,
            (Card::Fin(a), Card::Fin(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Card {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Card {
    type Output = Card;
    fn add(self, rhs: &Card) -> Card {
        match (self, rhs) {
            (Card::Fin(a), Card::Fin(b)) => Card::Fin(a + b),
            _ => Card::Omega,
        }
    }
}

impl Add for Card {
    type Output = Card;
    fn add(self, rhs: Card) -> Card {
        &self + &rhs
    }
}

impl Mul for &Card {
    type Output = Card;
    fn mul(self, rhs: &Card) -> Card {
        match (self, rhs) {
            (Card::Fin(a), Card::Fin(b)) => Card::Fin(a * b),
            // ω·0 = 0, ω·x = ω for x > 0
            (Card::Omega, x) | (x, Card::Omega) => {
                if x.is_zero() {
                    Card::zero()
                } else {
                    Card::Omega
                }
            }
        }
    }
}

impl Mul for Card {
    type Output = Card;
    fn mul(self, rhs: Card) -> Card {
        &self * &rhs
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::Fin(n) => write!(f, "{n}"),
            Card::Omega => f.write_str("omega"),
        }
    }
}

/// A stored weight: a positive integer or ω.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Card);

impl Weight {
    /// Rejects zero.
    pub fn new(c: Card) -> Option<Weight> {
        (!c.is_zero()).then_some(Weight(c))
    }

    pub fn omega() -> Weight {
        Weight(Card::Omega)
    }

    pub fn one() -> Weight {
        Weight(Card::one())
    }

    /// Panics on zero; meant for literals.
    pub fn fin(n: u64) -> Weight {
        assert!(n > 0, "weight must be positive");
        Weight(Card::from(n))
    }

    pub fn card(&self) -> &Card {
        &self.0
    }

    pub fn is_omega(&self) -> bool {
        self.0.is_omega()
    }

    pub fn is_one(&self) -> bool {
        self.0 == Card::one()
    }

    pub fn finite(&self) -> Option<&BigUint> {
        self.0.finite()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// ω-absorbing sum of two "weight or zero" values.
pub fn weight_add(a: &Card, b: &Card) -> Card {
    a + b
}

/// Product with ω·0 = 0 and ω·x = ω for x > 0.
pub fn weight_mul(a: &Card, b: &Card) -> Card {
    a * b
}
