use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A partition of a sorted id set. Blocks are sorted internally and ordered
/// by their smallest element, which is also the block representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    ids: Vec<String>,
    label: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds the partition whose blocks are the level sets of `labels`.
    /// `ids` must be sorted and `labels` aligned with it.
    pub fn from_labels<L: Ord>(ids: Vec<String>, labels: &[L]) -> Partition {
        debug_assert_eq!(ids.len(), labels.len());
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        let mut first: BTreeMap<&L, usize> = BTreeMap::new();
        let mut by_first: Vec<usize> = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            by_first.push(*first.entry(l).or_insert(i));
        }
        // Canonical block numbers: blocks ordered by their smallest member.
        let mut number: BTreeMap<usize, usize> = BTreeMap::new();
        let mut label = Vec::with_capacity(labels.len());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &f) in by_first.iter().enumerate() {
            let b = *number.entry(f).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(i);
            label.push(b);
        }
        Partition { ids, label, blocks }
    }

    pub fn single_block(ids: Vec<String>) -> Partition {
        let zeros = vec![0u8; ids.len()];
        Partition::from_labels(ids, &zeros)
    }

    pub fn discrete(ids: Vec<String>) -> Partition {
        let labels: Vec<usize> = (0..ids.len()).collect();
        Partition::from_labels(ids, &labels)
    }

    /// Blocks given by id lists; ids absent from every block are an error.
    pub fn from_blocks(mut ids: Vec<String>, blocks: &[Vec<String>]) -> Result<Partition> {
        ids.sort();
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut labels = vec![usize::MAX; ids.len()];
        for (b, block) in blocks.iter().enumerate() {
            for id in block {
                let i = *index.get(id.as_str()).ok_or_else(|| Error::UnknownId(id.clone()))?;
                if labels[i] != usize::MAX {
                    return Err(Error::Inconsistent(format!("`{id}` lies in two blocks")));
                }
                labels[i] = b;
            }
        }
        if let Some(i) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::UnknownId(ids[i].clone()));
        }
        Ok(Partition::from_labels(ids, &labels))
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block number of element `i`.
    pub fn block_index(&self, i: usize) -> usize {
        self.label[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids.binary_search_by(|s| s.as_str().cmp(id)).map_err(|_| Error::UnknownId(id.to_string()))
    }

    pub fn block_of(&self, id: &str) -> Result<usize> {
        Ok(self.label[self.index_of(id)?])
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.label[i] == self.label[j]
    }

    /// Smallest element of block `b`.
    pub fn representative(&self, b: usize) -> usize {
        self.blocks[b][0]
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.ids == coarser.ids
            && self.blocks.iter().all(|b| b.iter().all(|&i| coarser.label[i] == coarser.label[b[0]]))
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.ids.len()
    }

    pub fn block_ids(&self) -> Vec<Vec<String>> {
        self.blocks.iter().map(|b| b.iter().map(|&i| self.ids[i].clone()).collect()).collect()
    }
}
