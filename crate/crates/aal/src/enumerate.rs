//! Enumeration of finite lattices up to isomorphism.
//!
//! Two independent generators back each other up:
//!
//! * [`enumerate_lattices`] — the production path. Elements are added in
//!   linear-extension order; each new element picks a downward-closed
//!   strict down-set. A state is pruned unless every pair of present
//!   elements has a greatest lower bound (adding maximal elements never
//!   shrinks lower-bound sets, so meets must already exist), and the
//!   final element must close the order with a unique top. A finite
//!   meet-semilattice with a greatest element is a lattice.
//! * [`enumerate_lattices_brute`] — the oracle path. Every relation on
//!   the upper triangle of n points (every labeled order for which the
//!   identity is a linear extension, hence every isomorphism class),
//!   filtered by transitivity and the lattice property.
//!
//! Both deduplicate through the same canonical form: the colexicographic
//! minimum of the order matrix over all permutations compatible with an
//! iterated neighborhood coloring.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lattice::{lattice_from_order, FiniteLattice};
use crate::poset::FinitePoset;

/// Order matrix as rows of up-set masks (row i = { j : i <= j }).
type Rows = Vec<u32>;

fn rows_to_lattice(rows: &Rows, tag: String) -> FiniteLattice {
    let n = rows.len();
    let p = FinitePoset::from_leq(tag, n, |i, j| rows[i] >> j & 1 != 0)
        .expect("generated rows form a poset");
    lattice_from_order(&p).expect("generated rows form a lattice")
}

/// All lattices with `n` elements, one canonical representative per
/// isomorphism class, in a deterministic order.
pub fn enumerate_lattices(n: usize, cap: usize) -> Result<Vec<FiniteLattice>> {
    if n > cap || n > 16 {
        return Err(Error::Budget {
            what: "lattice enumeration size",
            size: n,
            cap: cap.min(16),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut seen: HashSet<Rows> = HashSet::new();
    let mut out: Vec<Rows> = Vec::new();
    let mut down: Vec<u32> = vec![1]; // element 0 is the bottom
    extend(n, &mut down, &mut seen, &mut out);
    out.sort();
    Ok(out
        .iter()
        .enumerate()
        .map(|(i, rows)| rows_to_lattice(rows, format!("L{n}#{i}")))
        .collect())
}

/// `down[i]` = mask of elements <= i (including i). Adds element k.
fn extend(n: usize, down: &mut Vec<u32>, seen: &mut HashSet<Rows>, out: &mut Vec<Rows>) {
    let k = down.len();
    if k == n {
        let rows = downsets_to_uprows(down);
        let canon = canonical_rows(&rows);
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
        return;
    }
    if k == n - 1 {
        // The last element is the unique maximal one: above everything.
        let d: u32 = (1 << k) - 1;
        down.push(d | 1 << k);
        extend(n, down, seen, out);
        down.pop();
        return;
    }
    // Strict down-set choices: downward closed, containing the bottom.
    'candidate: for d in 0u32..1 << k {
        if d & 1 == 0 {
            continue;
        }
        let mut m = d;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            if down[i] & !d & !(1 << i) != 0 {
                continue 'candidate; // not downward closed
            }
        }
        let new_down = d | 1 << k;
        // Meet pruning: every old element must share a greatest lower
        // bound with the new one (old pairs hold by induction).
        for i in 0..k {
            let common = down[i] & new_down;
            let mut has_greatest = false;
            let mut mm = common;
            while mm != 0 {
                let c = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                if common & !down[c] == 0 {
                    has_greatest = true;
                    break;
                }
            }
            if !has_greatest {
                continue 'candidate;
            }
        }
        down.push(new_down);
        extend(n, down, seen, out);
        down.pop();
    }
}

fn downsets_to_uprows(down: &[u32]) -> Rows {
    let n = down.len();
    let mut rows = vec![0u32; n];
    for (i, &d) in down.iter().enumerate() {
        let mut m = d;
        while m != 0 {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            rows[j] |= 1 << i;
        }
    }
    rows
}

/// Brute-force oracle: filter all labeled orders on the upper triangle.
/// Exponential in n(n-1)/2; intended for n <= 6 cross-validation.
pub fn enumerate_lattices_brute(n: usize) -> Result<Vec<FiniteLattice>> {
    if n > 7 {
        return Err(Error::Budget {
            what: "brute-force lattice enumeration size",
            size: n,
            cap: 7,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut seen: HashSet<Rows> = HashSet::new();
    let mut out: Vec<Rows> = Vec::new();
    'mask: for mask in 0u64..1 << pairs.len() {
        let mut rows = vec![0u32; n];
        for i in 0..n {
            rows[i] |= 1 << i;
        }
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 != 0 {
                rows[i] |= 1 << j;
            }
        }
        // Transitivity (chains ascend numerically by construction).
        for i in 0..n {
            let mut reach = rows[i];
            let mut m = rows[i] & !(1 << i);
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                reach |= rows[j];
            }
            if reach != rows[i] {
                continue 'mask;
            }
        }
        if !is_lattice_rows(&rows) {
            continue;
        }
        let canon = canonical_rows(&rows);
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out.sort();
    Ok(out
        .iter()
        .enumerate()
        .map(|(i, rows)| rows_to_lattice(rows, format!("B{n}#{i}")))
        .collect())
}

fn is_lattice_rows(rows: &Rows) -> bool {
    let n = rows.len();
    let mut downs = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if rows[i] >> j & 1 != 0 {
                downs[j] |= 1 << i;
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if !has_extreme(rows[x] & rows[y], rows) || !has_extreme_down(downs[x] & downs[y], &downs) {
                return false;
            }
        }
    }
    true
}

/// Nonempty and containing a least element w.r.t. up-rows.
fn has_extreme(set: u32, rows: &Rows) -> bool {
    let mut m = set;
    while m != 0 {
        let z = m.trailing_zeros() as usize;
        m &= m - 1;
        if set & !rows[z] == 0 {
            return true;
        }
    }
    false
}

fn has_extreme_down(set: u32, downs: &Rows) -> bool {
    let mut m = set;
    while m != 0 {
        let z = m.trailing_zeros() as usize;
        m &= m - 1;
        if set & !downs[z] == 0 {
            return true;
        }
    }
    false
}

/// Canonical form of an order matrix: minimum row vector over all
/// permutations refining an iterated degree coloring.
pub fn canonical_rows(rows: &Rows) -> Rows {
    let n = rows.len();
    // Iterated coloring: start from (|down|, |up|), refine by the
    // sorted colors of strict up- and down-neighbours.
    let mut color: Vec<u64> = (0..n)
        .map(|i| {
            let upc = rows[i].count_ones() as u64;
            let dnc = (0..n).filter(|&j| rows[j] >> i & 1 != 0).count() as u64;
            upc << 8 | dnc
        })
        .collect();
    for _ in 0..n {
        let mut sig: Vec<(u64, Vec<u64>, Vec<u64>)> = Vec::with_capacity(n);
        for i in 0..n {
            let mut ups: Vec<u64> = (0..n)
                .filter(|&j| j != i && rows[i] >> j & 1 != 0)
                .map(|j| color[j])
                .collect();
            ups.sort_unstable();
            let mut dns: Vec<u64> = (0..n)
                .filter(|&j| j != i && rows[j] >> i & 1 != 0)
                .map(|j| color[j])
                .collect();
            dns.sort_unstable();
            sig.push((color[i], ups, dns));
        }
        let mut sorted: Vec<&(u64, Vec<u64>, Vec<u64>)> = sig.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u64> = sig
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap() as u64)
            .collect();
        if next == color {
            break;
        }
        color = next;
    }
    // Group positions by color; canonical order lists color classes
    // ascending, permuting only within classes.
    let mut classes: std::collections::BTreeMap<u64, Vec<usize>> = Default::default();
    for (i, &c) in color.iter().enumerate() {
        classes.entry(c).or_default().push(i);
    }
    let class_list: Vec<Vec<usize>> = classes.into_values().collect();
    let mut best: Option<Rows> = None;
    let mut arrangement: Vec<Vec<usize>> = class_list.clone();
    permute_classes(0, &mut arrangement, &class_list, &mut |perm_classes| {
        // old index -> new index
        let order: Vec<usize> = perm_classes.iter().flatten().copied().collect();
        let mut position = vec![0usize; n];
        for (new_idx, &old) in order.iter().enumerate() {
            position[old] = new_idx;
        }
        let mut cand = vec![0u32; n];
        for (new_idx, &old) in order.iter().enumerate() {
            let mut row = 0u32;
            let mut m = rows[old];
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                row |= 1 << position[j];
            }
            cand[new_idx] = row;
        }
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    });
    best.unwrap()
}

fn permute_classes(
    idx: usize,
    current: &mut Vec<Vec<usize>>,
    classes: &[Vec<usize>],
    visit: &mut impl FnMut(&[Vec<usize>]),
) {
    if idx == classes.len() {
        visit(current);
        return;
    }
    let mut items = classes[idx].clone();
    permutations(&mut items, 0, &mut |perm| {
        current[idx] = perm.to_vec();
        permute_classes(idx + 1, current, classes, visit);
    });
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Isomorphism via equality of canonical forms.
pub fn are_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    if a.size() != b.size() {
        return false;
    }
    canonical_rows(&uprows_of(a)) == canonical_rows(&uprows_of(b))
}

pub fn uprows_of(l: &FiniteLattice) -> Rows {
    let n = l.size();
    (0..n)
        .map(|i| {
            let mut row = 0u32;
            for j in 0..n {
                if l.leq(i, j) {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_small() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_lattices(n, 8).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn brute_agrees_up_to_five() {
        for n in 1..=5 {
            let a = enumerate_lattices(n, 8).unwrap();
            let b = enumerate_lattices_brute(n).unwrap();
            assert_eq!(a.len(), b.len(), "n = {n}");
        }
    }

    #[test]
    fn canonical_form_is_an_invariant() {
        // The pentagon labeled two different ways.
        let p1 = FinitePoset::from_covers("a", 5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
            .unwrap();
        let p2 = FinitePoset::from_covers("b", 5, &[(0, 3), (3, 1), (1, 4), (0, 2), (2, 4)])
            .unwrap();
        let l1 = lattice_from_order(&p1).unwrap();
        let l2 = lattice_from_order(&p2).unwrap();
        assert!(are_isomorphic(&l1, &l2));
        let m3 = FinitePoset::from_covers(
            "m3",
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap();
        assert!(!are_isomorphic(&l1, &lattice_from_order(&m3).unwrap()));
    }
}
