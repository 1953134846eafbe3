//! Classwise equality of weighted sets and witnesses for it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::weight::{Card, Weight};

/// A finite set of ids, each with a weight.
pub type WeightedSet = BTreeMap<String, Weight>;

/// Triples `(x, y, μ)` whose marginals reproduce both weighted sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WitnessSet {
    pub entries: Vec<(String, String, Weight)>,
}

impl WitnessSet {
    /// Left and right ω-sums of μ.
    pub fn marginals(&self) -> (BTreeMap<String, Card>, BTreeMap<String, Card>) {
        let mut left: BTreeMap<String, Card> = BTreeMap::new();
        let mut right: BTreeMap<String, Card> = BTreeMap::new();
        for (x, y, mu) in &self.entries {
            let l = left.entry(x.clone()).or_insert_with(Card::zero);
            *l = &*l + mu.card();
            let r = right.entry(y.clone()).or_insert_with(Card::zero);
            *r = &*r + mu.card();
        }
        (left, right)
    }
}

fn class_sums(set: &WeightedSet, r: &Partition) -> Result<BTreeMap<usize, Card>> {
    let mut sums: BTreeMap<usize, Card> = BTreeMap::new();
    for (id, w) in set {
        let b = r.block_of(id)?;
        let s = sums.entry(b).or_insert_with(Card::zero);
        *s = &*s + w.card();
    }
    Ok(sums)
}

/// Blocks on which the two class sums differ, in block order.
fn failing_blocks(x: &WeightedSet, y: &WeightedSet, r: &Partition) -> Result<Vec<usize>> {
    let sx = class_sums(x, r)?;
    let sy = class_sums(y, r)?;
    let zero = Card::zero();
    let mut blocks: Vec<usize> = sx.keys().chain(sy.keys()).copied().collect();
    blocks.sort_unstable();
    blocks.dedup();
    Ok(blocks.into_iter().filter(|b| sx.get(b).unwrap_or(&zero) != sy.get(b).unwrap_or(&zero)).collect())
}

/// True iff every block of `r` receives the same ω-sum from `x` and `y`.
pub fn weighted_class_equiv(x: &WeightedSet, y: &WeightedSet, r: &Partition) -> Result<bool> {
    Ok(failing_blocks(x, y, r)?.is_empty())
}

/// A witness pairing only `r`-equivalent ids.
pub fn build_witness(x: &WeightedSet, y: &WeightedSet, r: &Partition) -> Result<WitnessSet> {
    if let Some(&b) = failing_blocks(x, y, r)?.first() {
        return Err(Error::NotEquivalent(r.block(b).iter().map(|&i| r.ids()[i].clone()).collect()));
    }
    let mut xs: BTreeMap<usize, Vec<(String, Card)>> = BTreeMap::new();
    let mut ys: BTreeMap<usize, Vec<(String, Card)>> = BTreeMap::new();
    for (id, w) in x {
        xs.entry(r.block_of(id)?).or_default().push((id.clone(), w.card().clone()));
    }
    for (id, w) in y {
        ys.entry(r.block_of(id)?).or_default().push((id.clone(), w.card().clone()));
    }
    let mut entries = Vec::new();
    for (b, left) in &xs {
        entries.extend(class_witness(left, &ys[b]));
    }
    entries.sort();
    Ok(WitnessSet { entries })
}

/// Witness for a single class whose two ω-sums agree. Inputs are taken in
/// the given order.
///
/// Greedy pass: pair the current heads with the smaller remaining weight.
/// With ω around the greedy pass can leave residue (e.g. `{a:ω, b:4}`
/// against `{u:ω}` leaves `b`), so a second pass pairs every shortfall with
/// the first ω element of the other side. Such an element exists whenever
/// the class sum is ω.
pub(crate) fn class_witness<K: Clone + Ord>(xs: &[(K, Card)], ys: &[(K, Card)]) -> Vec<(K, K, Weight)> {
    let mut acc: BTreeMap<(K, K), Card> = BTreeMap::new();
    let add = |acc: &mut BTreeMap<(K, K), Card>, a: &K, b: &K, mu: Card| {
        let slot = acc.entry((a.clone(), b.clone())).or_insert_with(Card::zero);
        *slot = &*slot + &mu;
    };

    let mut rem_x: Vec<Card> = xs.iter().map(|p| p.1.clone()).collect();
    let mut rem_y: Vec<Card> = ys.iter().map(|p| p.1.clone()).collect();
    let (mut i, mut j) = (0, 0);
    while i < xs.len() && j < ys.len() {
        if rem_x[i].is_omega() && rem_y[j].is_omega() {
            add(&mut acc, &xs[i].0, &ys[j].0, Card::Omega);
            i += 1;
            j += 1;
            continue;
        }
        let mu = rem_x[i].clone().min(rem_y[j].clone());
        add(&mut acc, &xs[i].0, &ys[j].0, mu.clone());
        rem_x[i] = rem_x[i].checked_sub(&mu).expect("mu is the minimum");
        rem_y[j] = rem_y[j].checked_sub(&mu).expect("mu is the minimum");
        if rem_x[i].is_zero() {
            i += 1;
        }
        if rem_y[j].is_zero() {
            j += 1;
        }
    }

    let marginal = |acc: &BTreeMap<(K, K), Card>, k: &K, left: bool| {
        Card::sum(acc.iter().filter(|((a, b), _)| if left { a == k } else { b == k }).map(|(_, m)| m))
    };
    let shortfall = |want: &Card, have: &Card| -> Option<Card> {
        if want == have {
            None
        } else if want.is_omega() {
            Some(Card::Omega)
        } else {
            want.checked_sub(have)
        }
    };
    if let Some(ystar) = ys.iter().find(|p| p.1.is_omega()).map(|p| p.0.clone()) {
        for (k, w) in xs {
            if let Some(res) = shortfall(w, &marginal(&acc, k, true)) {
                add(&mut acc, k, &ystar, res);
            }
        }
    }
    if let Some(xstar) = xs.iter().find(|p| p.1.is_omega()).map(|p| p.0.clone()) {
        for (k, w) in ys {
            if let Some(res) = shortfall(w, &marginal(&acc, k, false)) {
                add(&mut acc, &xstar, k, res);
            }
        }
    }

    acc.into_iter().filter_map(|((a, b), m)| Weight::new(m).map(|w| (a, b, w))).collect()
}
