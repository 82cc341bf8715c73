//! Partitions of `0..n` in a normalized representation.
//!
//! `block_of[i]` is the block id of element `i`; ids are normalized to
//! first-occurrence order, so equal partitions compare equal and the
//! derived block lists are sorted by least element automatically.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
}

impl Partition {
    pub fn identity(n: usize) -> Partition {
        Partition {
            block_of: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Partition {
        Partition {
            block_of: vec![0; n],
        }
    }

    /// Normalizes arbitrary block ids to first-occurrence order.
    pub fn from_raw(raw: &[usize]) -> Partition {
        let mut map: Vec<Option<usize>> = vec![None; raw.len()];
        let mut next = 0;
        let mut block_of = Vec::with_capacity(raw.len());
        for &r in raw {
            let id = match map[r] {
                Some(id) => id,
                None => {
                    map[r] = Some(next);
                    next += 1;
                    next - 1
                }
            };
            block_of.push(id);
        }
        Partition { block_of }
    }

    /// Equivalence closure of the listed pairs on `0..n`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Partition {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        uf.into_partition()
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Partition> {
        let mut raw = vec![usize::MAX; n];
        for (id, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= n {
                    return Err(Error::ElementRange { elem: e, size: n });
                }
                if raw[e] != usize::MAX {
                    return Err(Error::BadPartition {
                        size: n,
                        msg: format!("element {e} occurs in two blocks"),
                    });
                }
                raw[e] = id;
            }
        }
        if let Some(e) = raw.iter().position(|&r| r == usize::MAX) {
            return Err(Error::BadPartition {
                size: n,
                msg: format!("element {e} occurs in no block"),
            });
        }
        Ok(Partition::from_raw(&raw))
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn same(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Blocks sorted by least element, elements ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.block_of.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let mut image = vec![usize::MAX; self.num_blocks()];
        for i in 0..self.size() {
            let b = self.block_of[i];
            if image[b] == usize::MAX {
                image[b] = other.block_of[i];
            } else if image[b] != other.block_of[i] {
                return false;
            }
        }
        true
    }

    /// Common refinement (intersection of the equivalence relations).
    pub fn meet(&self, other: &Partition) -> Partition {
        debug_assert_eq!(self.size(), other.size());
        let mut key_ids: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
        let mut raw = Vec::with_capacity(self.size());
        for i in 0..self.size() {
            let key = (self.block_of[i], other.block_of[i]);
            let next = key_ids.len();
            raw.push(*key_ids.entry(key).or_insert(next));
        }
        Partition::from_raw(&raw)
    }

    /// All related pairs (i < j), for re-generation seeds.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size() {
            for j in i + 1..self.size() {
                if self.same(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `{0,2|1|3}` — blocks separated by `|`, elements by `,`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, block) in self.blocks().iter().enumerate() {
            if k > 0 {
                write!(f, "|")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "}}")
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub fn into_partition(mut self) -> Partition {
        let raw: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        Partition::from_raw(&raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialization_matches_block_order() {
        let p = Partition::from_pairs(4, &[(0, 2)]);
        assert_eq!(p.to_string(), "{0,2|1|3}");
    }

    #[test]
    fn refinement_and_meet() {
        let fine = Partition::from_pairs(4, &[(0, 1)]);
        let coarse = Partition::from_pairs(4, &[(0, 1), (2, 3)]);
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert_eq!(fine.meet(&coarse), fine);
        assert!(Partition::identity(4).refines(&fine));
        assert!(coarse.refines(&Partition::total(4)));
    }
}
