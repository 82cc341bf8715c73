//! Finite posets as reflexive order matrices.

use crate::bitset::Bits;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    name: String,
    size: usize,
    /// up[i] = { j : i <= j }, including i.
    up: Vec<Bits>,
}

impl FinitePoset {
    pub fn from_leq(name: impl Into<String>, size: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut up = Vec::with_capacity(size);
        for i in 0..size {
            let mut row = Bits::new(size);
            for j in 0..size {
                if leq(i, j) {
                    row.insert(j);
                }
            }
            up.push(row);
        }
        let p = FinitePoset {
            name: name.into(),
            size,
            up,
        };
        p.validate()?;
        Ok(p)
    }

    /// Reflexive-transitive closure of covering pairs `(lower, upper)`.
    pub fn from_covers(
        name: impl Into<String>,
        size: usize,
        covers: &[(usize, usize)],
    ) -> Result<Self> {
        let mut up: Vec<Bits> = (0..size).map(|i| Bits::singleton(size, i)).collect();
        for &(lo, hi) in covers {
            if lo >= size || hi >= size {
                return Err(Error::ElementRange {
                    elem: lo.max(hi),
                    size,
                });
            }
            up[lo].insert(hi);
        }
        // Warshall closure.
        for k in 0..size {
            for i in 0..size {
                if up[i].contains(k) {
                    let row_k = up[k].clone();
                    up[i].union_with(&row_k);
                }
            }
        }
        let p = FinitePoset {
            name: name.into(),
            size,
            up,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.size {
            if !self.up[i].contains(i) {
                return Err(Error::NotAPoset(format!("missing {i} <= {i}")));
            }
            for j in 0..self.size {
                if i != j && self.up[i].contains(j) && self.up[j].contains(i) {
                    return Err(Error::NotAPoset(format!("{i} <= {j} and {j} <= {i}")));
                }
                if self.up[i].contains(j) && !self.up[j].is_subset(&self.up[i]) {
                    let k = self.up[j].iter().find(|&k| !self.up[i].contains(k)).unwrap();
                    return Err(Error::NotAPoset(format!(
                        "{i} <= {j} <= {k} but not {i} <= {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn upset(&self, i: usize) -> &Bits {
        &self.up[i]
    }

    pub fn downset(&self, i: usize) -> Bits {
        let mut b = Bits::new(self.size);
        for j in 0..self.size {
            if self.leq(j, i) {
                b.insert(j);
            }
        }
        b
    }

    /// Covering pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if self.lt(i, j)
                    && !(0..self.size).any(|k| self.lt(i, k) && self.lt(k, j))
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Upper covers of i.
    pub fn covers_of(&self, i: usize) -> Vec<usize> {
        (0..self.size)
            .filter(|&j| {
                self.lt(i, j) && !(0..self.size).any(|k| self.lt(i, k) && self.lt(k, j))
            })
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&i| (0..self.size).all(|j| !self.lt(i, j)))
            .collect()
    }

    /// Whenever x <= y and x <= z there is w with y <= w and z <= w.
    pub fn principally_up_directed(&self) -> bool {
        for x in 0..self.size {
            for y in 0..self.size {
                for z in 0..self.size {
                    if self.leq(x, y) && self.leq(x, z) {
                        let joinable =
                            (0..self.size).any(|w| self.leq(y, w) && self.leq(z, w));
                        if !joinable {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_close_transitively() {
        let p = FinitePoset::from_covers("c3", 3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn cycles_are_rejected() {
        assert!(FinitePoset::from_covers("bad", 2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn fork_is_not_up_directed() {
        let fork = FinitePoset::from_covers("fork", 3, &[(0, 1), (0, 2)]).unwrap();
        assert!(!fork.principally_up_directed());
        let chain = FinitePoset::from_covers("c3", 3, &[(0, 1), (1, 2)]).unwrap();
        assert!(chain.principally_up_directed());
    }
}
