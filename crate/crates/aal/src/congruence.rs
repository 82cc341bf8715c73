//! Congruences, relative congruence lattices, and the Leibniz congruence
//! of a designated subset.
//!
//! Compatibility closure works with single-coordinate substitutions
//! only: for x θ y and any basic operation g, g(..., x, ...) must relate
//! to g(..., y, ...) with the remaining coordinates fixed. Changing
//! several coordinates follows by chaining, so nothing is lost.

use std::collections::BTreeSet;

use crate::algebra::{satisfies_quasiequation, FiniteAlgebra, QuasiEquation};
use crate::error::{Error, Result};
use crate::lattice::{lattice_from_order, FiniteLattice, IrreducibleMode};
use crate::limits::Caps;
use crate::partition::{Partition, UnionFind};
use crate::poset::FinitePoset;

/// Congruence generated by the given pairs: union-find plus a worklist
/// of translation images.
pub fn congruence_generated(a: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Partition {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = pairs.to_vec();
    while let Some((u, v)) = work.pop() {
        if !uf.union(u, v) {
            continue;
        }
        for sym in 0..a.signature().len() {
            let k = a.signature().arity(sym);
            if k == 0 {
                continue;
            }
            for coord in 0..k {
                for ctx_idx in 0..n.pow((k - 1) as u32) {
                    let mut ctx = vec![0usize; k - 1];
                    let mut rest = ctx_idx;
                    for slot in (0..k - 1).rev() {
                        ctx[slot] = rest % n;
                        rest /= n;
                    }
                    let mut lhs = Vec::with_capacity(k);
                    let mut rhs = Vec::with_capacity(k);
                    let mut ci = 0;
                    for slot in 0..k {
                        if slot == coord {
                            lhs.push(u);
                            rhs.push(v);
                        } else {
                            lhs.push(ctx[ci]);
                            rhs.push(ctx[ci]);
                            ci += 1;
                        }
                    }
                    let (x, y) = (a.op(sym, &lhs), a.op(sym, &rhs));
                    if uf.find(x) != uf.find(y) {
                        work.push((x, y));
                    }
                }
            }
        }
    }
    uf.into_partition()
}

pub fn principal_congruence(a: &FiniteAlgebra, x: usize, y: usize) -> Partition {
    congruence_generated(a, &[(x, y)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IdentityClass {
    Rs,
    Rsi,
    Rfsi,
    None,
}

impl IdentityClass {
    pub fn name(self) -> &'static str {
        match self {
            IdentityClass::Rs => "RS",
            IdentityClass::Rsi => "RSI",
            IdentityClass::Rfsi => "RFSI",
            IdentityClass::None => "NONE",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CongruenceLatticeResult {
    /// Sorted coarse-to-fine-insensitive: by descending block count,
    /// then by serialized form; the identity (when present) is first
    /// and the total congruence is last.
    pub congruences: Vec<Partition>,
    pub lattice: FiniteLattice,
    /// Absent exactly when the algebra itself fails K.
    pub identity_index: Option<usize>,
    pub total_index: usize,
}

impl CongruenceLatticeResult {
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.congruences.iter().position(|q| q == p)
    }
}

/// All congruences: principal congruences closed under pairwise join.
pub fn congruence_lattice(a: &FiniteAlgebra, caps: &Caps) -> Result<CongruenceLatticeResult> {
    caps.check_universe(a.size())?;
    let family = all_congruences(a, caps)?;
    build_result(a, family, &[])
}

/// Congruences whose quotient satisfies every quasi-equation of K.
pub fn relative_congruence_lattice(
    a: &FiniteAlgebra,
    k: &[QuasiEquation],
    caps: &Caps,
) -> Result<CongruenceLatticeResult> {
    caps.check_universe(a.size())?;
    let family = all_congruences(a, caps)?;
    let mut kept = Vec::new();
    for theta in family {
        let q = a.quotient(&theta)?;
        let mut ok = true;
        for qe in k {
            if !satisfies_quasiequation(&q, qe)?.0 {
                ok = false;
                if theta.is_total() {
                    return Err(Error::KExcludesTrivial(format!("{qe:?}")));
                }
                break;
            }
        }
        if ok {
            kept.push(theta);
        }
    }
    build_result(a, kept, k)
}

fn all_congruences(a: &FiniteAlgebra, caps: &Caps) -> Result<Vec<Partition>> {
    let n = a.size();
    let mut family: BTreeSet<Partition> = BTreeSet::new();
    family.insert(Partition::identity(n));
    for x in 0..n {
        for y in x + 1..n {
            family.insert(principal_congruence(a, x, y));
        }
    }
    // Close under binary join (regenerate from the union of pairs).
    loop {
        let snapshot: Vec<Partition> = family.iter().cloned().collect();
        if snapshot.len() > caps.family_cap {
            return Err(Error::Budget {
                what: "congruence family",
                size: snapshot.len(),
                cap: caps.family_cap,
            });
        }
        let mut grew = false;
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                if snapshot[i].refines(&snapshot[j]) || snapshot[j].refines(&snapshot[i]) {
                    continue;
                }
                let mut pairs = snapshot[i].pairs();
                pairs.extend(snapshot[j].pairs());
                let joined = congruence_generated(a, &pairs);
                if family.insert(joined) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(family.into_iter().collect())
}

fn build_result(
    a: &FiniteAlgebra,
    mut family: Vec<Partition>,
    _k: &[QuasiEquation],
) -> Result<CongruenceLatticeResult> {
    let n = a.size();
    family.sort_by(|p, q| {
        q.num_blocks()
            .cmp(&p.num_blocks())
            .then_with(|| p.cmp(q))
    });
    family.dedup();
    let order = FinitePoset::from_leq("congruences", family.len(), |i, j| {
        family[i].refines(&family[j])
    })?;
    let lattice = lattice_from_order(&order)?;
    let identity_index = family.iter().position(|p| p.is_identity());
    let total = Partition::total(n);
    let total_index = family
        .iter()
        .position(|p| *p == total)
        .expect("total congruence always belongs to the family");
    Ok(CongruenceLatticeResult {
        congruences: family,
        lattice,
        identity_index,
        total_index,
    })
}

/// Where the identity sits in the (relative) congruence lattice:
/// strongest of RS (coatom), RSI (completely meet-irreducible),
/// RFSI (meet-irreducible); NONE otherwise or when the identity is
/// not a relative congruence.
pub fn classify_identity(r: &CongruenceLatticeResult) -> IdentityClass {
    let Some(id) = r.identity_index else {
        return IdentityClass::None;
    };
    if r.lattice
        .meet_irreducibles(IrreducibleMode::Coatom)
        .contains(&id)
    {
        return IdentityClass::Rs;
    }
    if r.lattice
        .meet_irreducibles(IrreducibleMode::CompletelyMeetIrr)
        .contains(&id)
    {
        return IdentityClass::Rsi;
    }
    if r.lattice
        .meet_irreducibles(IrreducibleMode::MeetIrr)
        .contains(&id)
    {
        return IdentityClass::Rfsi;
    }
    IdentityClass::None
}

/// Index of the greatest element strictly below the total congruence.
pub fn greatest_proper_congruence(r: &CongruenceLatticeResult) -> Option<usize> {
    let candidates: Vec<usize> = (0..r.congruences.len())
        .filter(|&i| i != r.total_index)
        .collect();
    r.lattice.greatest_of(&candidates)
}

/// Largest congruence compatible with the subset `filter`, computed by
/// partition refinement against all single-coordinate translations.
pub fn leibniz_congruence(a: &FiniteAlgebra, filter: &[usize]) -> Result<Partition> {
    let n = a.size();
    let mut in_f = vec![false; n];
    for &e in filter {
        if e >= n {
            return Err(Error::ElementRange { elem: e, size: n });
        }
        in_f[e] = true;
    }
    let mut raw: Vec<usize> = in_f.iter().map(|&b| usize::from(b)).collect();
    loop {
        let current = Partition::from_raw(&raw);
        // Signature of an element: its block plus the blocks of all
        // one-hole translation images.
        let mut sigs: Vec<Vec<usize>> = (0..n).map(|i| vec![current.block_of(i)]).collect();
        for sym in 0..a.signature().len() {
            let k = a.signature().arity(sym);
            if k == 0 {
                continue;
            }
            for coord in 0..k {
                for ctx_idx in 0..n.pow((k - 1) as u32) {
                    let mut ctx = vec![0usize; k - 1];
                    let mut rest = ctx_idx;
                    for slot in (0..k.saturating_sub(1)).rev() {
                        ctx[slot] = rest % n;
                        rest /= n;
                    }
                    for (x, sig) in sigs.iter_mut().enumerate() {
                        let mut args = Vec::with_capacity(k);
                        let mut ci = 0;
                        for slot in 0..k {
                            if slot == coord {
                                args.push(x);
                            } else {
                                args.push(ctx[ci]);
                                ci += 1;
                            }
                        }
                        sig.push(current.block_of(a.op(sym, &args)));
                    }
                }
            }
        }
        let mut keys: Vec<&Vec<usize>> = sigs.iter().collect();
        keys.sort();
        keys.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| keys.binary_search(&s).unwrap())
            .collect();
        let refined = Partition::from_raw(&next);
        if refined == current {
            return Ok(refined);
        }
        raw = next;
    }
}

/// The matrix (A, filter) is reduced when its Leibniz congruence is
/// the identity.
pub fn is_reduced_matrix(a: &FiniteAlgebra, filter: &[usize]) -> Result<bool> {
    Ok(leibniz_congruence(a, filter)?.is_identity())
}

#[derive(Debug, Clone)]
pub struct KollarRow {
    pub name: String,
    pub nontrivial: bool,
    pub trivial_subalgebra: Option<usize>,
    pub class: IdentityClass,
    pub greatest_proper: Option<Partition>,
}

#[derive(Debug, Clone)]
pub struct KollarReport {
    pub rows: Vec<KollarRow>,
    /// No nontrivial member has a trivial subalgebra.
    pub sample_is_kollar: bool,
    /// Every RSI (or stronger) member has a greatest proper congruence.
    pub rsi_have_greatest: bool,
}

/// Three-way record over a sample of algebras; no global verdict is
/// implied beyond the two recorded booleans.
pub fn kollar_and_semisimple_report(
    algebras: &[FiniteAlgebra],
    k: &[QuasiEquation],
    caps: &Caps,
) -> Result<KollarReport> {
    let mut rows = Vec::new();
    for a in algebras {
        let r = relative_congruence_lattice(a, k, caps)?;
        let class = classify_identity(&r);
        let greatest = greatest_proper_congruence(&r).map(|i| r.congruences[i].clone());
        rows.push(KollarRow {
            name: a.name().to_string(),
            nontrivial: a.size() > 1,
            trivial_subalgebra: a.has_trivial_subalgebra()?,
            class,
            greatest_proper: greatest,
        });
    }
    let sample_is_kollar = rows
        .iter()
        .all(|r| !r.nontrivial || r.trivial_subalgebra.is_none());
    let rsi_have_greatest = rows
        .iter()
        .filter(|r| matches!(r.class, IdentityClass::Rs | IdentityClass::Rsi))
        .all(|r| r.greatest_proper.is_some());
    Ok(KollarReport {
        rows,
        sample_is_kollar,
        rsi_have_greatest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;

    fn chain3_meet() -> FiniteAlgebra {
        let sig = Signature::new([("meet", 2)]).unwrap();
        FiniteAlgebra::new("c3", sig, 3, vec![vec![0, 0, 0, 0, 1, 1, 0, 1, 2]]).unwrap()
    }

    #[test]
    fn principal_congruence_on_meet_chain() {
        let a = chain3_meet();
        // Collapsing 1 and 2 forces nothing else on a meet-semilattice chain.
        let p = principal_congruence(&a, 1, 2);
        assert_eq!(p.to_string(), "{0|1,2}");
        // Collapsing 0 and 2 drags 1 in: meet(1, 2)=1 ~ meet(1, 0)=0.
        let q = principal_congruence(&a, 0, 2);
        assert!(q.is_total());
    }

    #[test]
    fn congruence_lattice_of_meet_chain() {
        let a = chain3_meet();
        let r = congruence_lattice(&a, &Caps::default()).unwrap();
        let shown: Vec<String> = r.congruences.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["{0|1|2}", "{0,1|2}", "{0|1,2}", "{0,1,2}"]);
        assert_eq!(r.identity_index, Some(0));
        assert_eq!(r.total_index, 3);
        assert_eq!(classify_identity(&r), IdentityClass::None);
        assert_eq!(greatest_proper_congruence(&r), None);
    }

    #[test]
    fn principal_is_least_containing_pair() {
        let a = chain3_meet();
        let r = congruence_lattice(&a, &Caps::default()).unwrap();
        for x in 0..3 {
            for y in x + 1..3 {
                let p = principal_congruence(&a, x, y);
                for theta in &r.congruences {
                    if theta.same(x, y) {
                        assert!(p.refines(theta), "Cg({x},{y}) not below {theta}");
                    }
                }
            }
        }
    }

    #[test]
    fn leibniz_on_meet_chain_filter() {
        let a = chain3_meet();
        // Filter {2}: 0 and 1 are separated by the translation
        // meet(x, 1)... they are not: meet(0,1)=0, meet(1,1)=1, both
        // outside {2}. Nothing separates 0 from 1.
        let omega = leibniz_congruence(&a, &[2]).unwrap();
        assert_eq!(omega.to_string(), "{0,1|2}");
        assert!(!is_reduced_matrix(&a, &[2]).unwrap());
        // {1,2} is still collapsed by {0|1,2}; the singleton {1} is
        // separated from 2 by meet(x, 1).
        assert!(!is_reduced_matrix(&a, &[1, 2]).unwrap());
        assert!(is_reduced_matrix(&a, &[1]).unwrap());
    }
}
