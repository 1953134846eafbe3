//! Depth-bounded rooted trees in multiplicity-compressed canonical form.
//!
//! A node stores its distinct child subtrees, each with a [`Weight`]
//! multiplicity, sorted by [`tree_order`]. Equal subtrees are merged, so two
//! canonical trees are equal iff the trees they stand for are isomorphic.
//! Subtrees are shared through `Arc`, which keeps truncations of deep
//! unfoldings polynomial in size.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num::BigUint;

use crate::weight::{Card, Weight};

#[derive(Debug)]
struct Node {
    label: Option<String>,
    children: Vec<(CanonicalTree, Weight)>,
    height: usize,
    hash: u64,
}

#[derive(Debug, Clone)]
pub struct CanonicalTree(Arc<Node>);

impl CanonicalTree {
    pub fn leaf() -> CanonicalTree {
        CanonicalTree::labelled_leaf(None)
    }

    pub fn labelled_leaf(label: Option<String>) -> CanonicalTree {
        CanonicalTree::assemble(label, Vec::new())
    }

    /// Children must already be sorted and merged.
    fn assemble(label: Option<String>, children: Vec<(CanonicalTree, Weight)>) -> CanonicalTree {
        let height = children.iter().map(|(c, _)| c.height() + 1).max().unwrap_or(0);
        let mut h = DefaultHasher::new();
        label.hash(&mut h);
        for (c, m) in &children {
            c.0.hash.hash(&mut h);
            m.hash(&mut h);
        }
        CanonicalTree(Arc::new(Node { label, hash: h.finish(), children, height }))
    }

    pub fn label(&self) -> Option<&str> {
        self.0.label.as_deref()
    }

    pub fn children(&self) -> &[(CanonicalTree, Weight)] {
        &self.0.children
    }

    pub fn height(&self) -> usize {
        self.0.height
    }

    pub fn is_leaf(&self) -> bool {
        self.0.children.is_empty()
    }

    /// Total number of children counted with multiplicity.
    pub fn degree(&self) -> Card {
        Card::sum(self.0.children.iter().map(|(_, m)| m.card()))
    }

    /// Number of nodes of the expanded tree, `None` if infinite.
    pub fn expanded_size(&self) -> Option<BigUint> {
        let mut memo: HashMap<*const Node, Option<BigUint>> = HashMap::new();
        expanded_size(self, &mut memo)
    }

    /// Number of distinct subtrees, i.e. nodes of the shared DAG.
    pub fn distinct_subtrees(&self) -> usize {
        let mut seen: HashMap<*const Node, ()> = HashMap::new();
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            if seen.insert(Arc::as_ptr(&t.0), ()).is_none() {
                stack.extend(t.children().iter().map(|(c, _)| c.clone()));
            }
        }
        seen.len()
    }

    /// Indented rendering, one line per child entry: `<m>x` with `w` for ω.
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.label() {
            Some(l) => writeln!(out, "* {l}").unwrap(),
            None => out.push_str("*\n"),
        }
        render_into(self, 1, &mut out);
        out
    }
}

fn expanded_size(t: &CanonicalTree, memo: &mut HashMap<*const Node, Option<BigUint>>) -> Option<BigUint> {
    let key = Arc::as_ptr(&t.0);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = Some(BigUint::from(1u32));
    for (c, m) in t.children() {
        let sub = expanded_size(c, memo);
        total = match (total, m.finite(), sub) {
            (Some(acc), Some(k), Some(s)) => Some(acc + k * s),
            _ => None,
        };
    }
    memo.insert(key, total.clone());
    total
}

fn render_into(t: &CanonicalTree, indent: usize, out: &mut String) {
    for (c, m) in t.children() {
        let m = if m.is_omega() { "w".to_string() } else { m.to_string() };
        for _ in 0..indent {
            out.push_str("  ");
        }
        match c.label() {
            Some(l) => writeln!(out, "{m}x {l}").unwrap(),
            None => writeln!(out, "{m}x").unwrap(),
        }
        render_into(c, indent + 1, out);
    }
}

impl PartialEq for CanonicalTree {
    fn eq(&self, other: &Self) -> bool {
        tree_equal(self, other)
    }
}

impl Eq for CanonicalTree {}

impl PartialOrd for CanonicalTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalTree {
    fn cmp(&self, other: &Self) -> Ordering {
        tree_order(self, other)
    }
}

impl Hash for CanonicalTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state);
    }
}

/// Canonical node from an unsorted list of (subtree, multiplicity).
pub fn normalize(raw: Vec<(CanonicalTree, Weight)>) -> CanonicalTree {
    normalize_labelled(None, raw)
}

pub fn normalize_labelled(label: Option<String>, raw: Vec<(CanonicalTree, Weight)>) -> CanonicalTree {
    let mut memo = HashMap::new();
    let mut raw = raw;
    raw.sort_by(|a, b| compare(&a.0, &b.0, &mut memo));
    let mut merged: Vec<(CanonicalTree, Weight)> = Vec::with_capacity(raw.len());
    for (t, m) in raw {
        match merged.last_mut() {
            Some((last, lm)) if compare(last, &t, &mut memo) == Ordering::Equal => {
                *lm = Weight::new(lm.card() + m.card()).expect("sum of weights is positive");
            }
            _ => merged.push((t, m)),
        }
    }
    CanonicalTree::assemble(label, merged)
}

/// Structural equality of canonical trees.
pub fn tree_equal(a: &CanonicalTree, b: &CanonicalTree) -> bool {
    Arc::ptr_eq(&a.0, &b.0) || (a.0.hash == b.0.hash && a.height() == b.height() && tree_order(a, b) == Ordering::Equal)
}

/// Total order: height, then number of child entries, then the child
/// entries lexicographically (subtree first, then multiplicity with finite
/// values below ω), then the label.
pub fn tree_order(a: &CanonicalTree, b: &CanonicalTree) -> Ordering {
    let mut memo = HashMap::new();
    compare(a, b, &mut memo)
}

type PairMemo = HashMap<(*const Node, *const Node), Ordering>;

fn compare(a: &CanonicalTree, b: &CanonicalTree, memo: &mut PairMemo) -> Ordering {
    if Arc::ptr_eq(&a.0, &b.0) {
        return Ordering::Equal;
    }
    let key = (Arc::as_ptr(&a.0), Arc::as_ptr(&b.0));
    if let Some(&o) = memo.get(&key) {
        return o;
    }
    let mut o = a.height().cmp(&b.height()).then(a.children().len().cmp(&b.children().len()));
    if o == Ordering::Equal {
        for ((ca, ma), (cb, mb)) in a.children().iter().zip(b.children()) {
            o = compare(ca, cb, memo).then_with(|| ma.cmp(mb));
            if o != Ordering::Equal {
                break;
            }
        }
    }
    o = o.then_with(|| a.label().cmp(&b.label()));
    memo.insert(key, o);
    o
}

/// Hash-consing table. Trees built through one interner share every equal
/// subtree, so equality between them is pointer equality.
#[derive(Default)]
pub struct TreeInterner {
    table: HashMap<u64, Vec<CanonicalTree>>,
}

impl TreeInterner {
    pub fn new() -> Self {
        TreeInterner::default()
    }

    pub fn leaf(&mut self) -> CanonicalTree {
        self.intern(CanonicalTree::leaf())
    }

    pub fn node(&mut self, label: Option<String>, raw: Vec<(CanonicalTree, Weight)>) -> CanonicalTree {
        let t = normalize_labelled(label, raw);
        self.intern(t)
    }

    pub fn intern(&mut self, t: CanonicalTree) -> CanonicalTree {
        let bucket = self.table.entry(t.0.hash).or_default();
        if let Some(found) = bucket.iter().find(|u| tree_equal(u, &t)) {
            return found.clone();
        }
        bucket.push(t.clone());
        t
    }

    pub fn len(&self) -> usize {
        self.table.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}
