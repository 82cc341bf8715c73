//! Heyting algebras: construction from finite distributive lattices,
//! up-set algebras of finite posets, and the KC axiom with its
//! congruence-side companion.

use crate::algebra::FiniteAlgebra;
use crate::congruence::{congruence_lattice, IdentityClass};
use crate::demorgan::{sweep, AxiomCheck};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::limits::Caps;
use crate::poset::FinitePoset;
use crate::signature::Signature;

pub fn heyting_signature() -> Signature {
    Signature::new([
        ("meet", 2),
        ("join", 2),
        ("arrow", 2),
        ("neg", 1),
        ("bot", 0),
        ("top", 0),
    ])
    .expect("fixed signature is well formed")
}

/// The Heyting algebra on a finite distributive lattice:
/// arrow(a, b) is the greatest c with a ∧ c <= b.
pub fn heyting_from_lattice(name: &str, lat: &FiniteLattice) -> Result<FiniteAlgebra> {
    let dist = lat.is_distributive();
    if !dist.holds {
        let w = dist.witness.expect("failed check carries a witness");
        return Err(Error::NotDistributive {
            x: w[0],
            y: w[1],
            z: w[2],
        });
    }
    let n = lat.size();
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    let mut arrow = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = lat.meet(a, b);
            join[a * n + b] = lat.join(a, b);
            let mut best = lat.bottom();
            for c in 0..n {
                if lat.leq(lat.meet(a, c), b) {
                    best = lat.join(best, c);
                }
            }
            arrow[a * n + b] = best;
        }
    }
    let neg: Vec<usize> = (0..n).map(|a| arrow[a * n + lat.bottom()]).collect();
    FiniteAlgebra::new(
        name,
        heyting_signature(),
        n,
        vec![meet, join, arrow, neg, vec![lat.bottom()], vec![lat.top()]],
    )
}

fn is_upset(poset: &FinitePoset, mask: u32) -> bool {
    for i in 0..poset.size() {
        if mask >> i & 1 == 0 {
            continue;
        }
        for j in 0..poset.size() {
            if poset.leq(i, j) && mask >> j & 1 == 0 {
                return false;
            }
        }
    }
    true
}

fn mask_label(mask: u32, n: usize) -> String {
    let members: Vec<String> = (0..n)
        .filter(|&i| mask >> i & 1 != 0)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// The Heyting algebra of up-closed subsets of a poset; elements are
/// ordered by ascending bitmask and labeled with the sets they denote.
pub fn upset_algebra(name: &str, poset: &FinitePoset) -> Result<FiniteAlgebra> {
    if poset.size() > 20 {
        return Err(Error::Budget {
            what: "up-set algebra base poset",
            size: poset.size(),
            cap: 20,
        });
    }
    let pts = poset.size();
    let all: u32 = if pts == 32 { u32::MAX } else { (1 << pts) - 1 };
    let upsets: Vec<u32> = (0..=all).filter(|&m| is_upset(poset, m)).collect();
    let n = upsets.len();
    let index_of = |m: u32| upsets.binary_search(&m).expect("set is an up-set");
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    let mut arrow = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = index_of(upsets[a] & upsets[b]);
            join[a * n + b] = index_of(upsets[a] | upsets[b]);
            // w is in U -> V when every w' >= w lands in V whenever it
            // lands in U
            let mut rel = 0u32;
            for w in 0..pts {
                let ok = (0..pts).all(|w2| {
                    !poset.leq(w, w2)
                        || upsets[a] >> w2 & 1 == 0
                        || upsets[b] >> w2 & 1 != 0
                });
                if ok {
                    rel |= 1 << w;
                }
            }
            arrow[a * n + b] = index_of(rel);
        }
    }
    let neg: Vec<usize> = (0..n).map(|a| arrow[a * n]).collect();
    let alg = FiniteAlgebra::new(
        name,
        heyting_signature(),
        n,
        vec![meet, join, arrow, neg, vec![0], vec![n - 1]],
    )?;
    let labels: std::collections::BTreeMap<usize, String> = upsets
        .iter()
        .enumerate()
        .map(|(i, &m)| (i, mask_label(m, pts)))
        .collect();
    alg.with_labels(labels)
}

/// Exhaustive axiom report for the Heyting signature: bounded
/// distributive lattice, arrow as residual, neg as arrow-to-bot.
pub fn validate_heyting(a: &FiniteAlgebra) -> Result<Vec<AxiomCheck>> {
    let n = a.size();
    let meet = a.require("heyting", "meet", 2)?;
    let join = a.require("heyting", "join", 2)?;
    let arrow = a.require("heyting", "arrow", 2)?;
    let neg = a.require("heyting", "neg", 1)?;
    let bot = a.op(a.require("heyting", "bot", 0)?, &[]);
    let top = a.op(a.require("heyting", "top", 0)?, &[]);
    let m = |x: usize, y: usize| a.op(meet, &[x, y]);
    let j = |x: usize, y: usize| a.op(join, &[x, y]);
    let arr = |x: usize, y: usize| a.op(arrow, &[x, y]);
    let leq = |x: usize, y: usize| m(x, y) == x;
    Ok(vec![
        sweep("lattice-commutative", n, 2, |t| {
            m(t[0], t[1]) == m(t[1], t[0]) && j(t[0], t[1]) == j(t[1], t[0])
        }),
        sweep("lattice-associative", n, 3, |t| {
            m(m(t[0], t[1]), t[2]) == m(t[0], m(t[1], t[2]))
                && j(j(t[0], t[1]), t[2]) == j(t[0], j(t[1], t[2]))
        }),
        sweep("lattice-absorption", n, 2, |t| {
            m(t[0], j(t[0], t[1])) == t[0] && j(t[0], m(t[0], t[1])) == t[0]
        }),
        sweep("lattice-distributive", n, 3, |t| {
            m(t[0], j(t[1], t[2])) == j(m(t[0], t[1]), m(t[0], t[2]))
        }),
        sweep("bounds", n, 1, |t| m(bot, t[0]) == bot && j(top, t[0]) == top),
        sweep("residuation", n, 3, |t| {
            leq(m(t[0], t[2]), t[1]) == leq(t[2], arr(t[0], t[1]))
        }),
        sweep("neg-is-arrow-to-bot", n, 1, |t| {
            a.op(neg, &[t[0]]) == arr(t[0], bot)
        }),
    ])
}

#[derive(Debug, Clone)]
pub struct KcCheck {
    pub holds: bool,
    /// An element v with ¬v ∨ ¬¬v < top, and the value it takes.
    pub witness: Option<(usize, usize)>,
}

/// Validity of ¬v ∨ ¬¬v = top.
pub fn kc_holds(a: &FiniteAlgebra) -> Result<KcCheck> {
    let join = a.require("heyting", "join", 2)?;
    let neg = a.require("heyting", "neg", 1)?;
    let top = a.op(a.require("heyting", "top", 0)?, &[]);
    for v in 0..a.size() {
        let nv = a.op(neg, &[v]);
        let nnv = a.op(neg, &[nv]);
        let value = a.op(join, &[nv, nnv]);
        if value != top {
            return Ok(KcCheck {
                holds: false,
                witness: Some((v, value)),
            });
        }
    }
    Ok(KcCheck {
        holds: true,
        witness: None,
    })
}

/// Unique-coatom test on the lattice order carried by the algebra's
/// meet operation.
pub fn has_unique_coatom(a: &FiniteAlgebra) -> Result<bool> {
    let meet = a.require("heyting", "meet", 2)?;
    let top = a.op(a.require("heyting", "top", 0)?, &[]);
    let leq = |x: usize, y: usize| a.op(meet, &[x, y]) == x;
    let coatoms: Vec<usize> = (0..a.size())
        .filter(|&x| {
            x != top && (0..a.size()).all(|y| !(leq(x, y) && x != y && y != top))
        })
        .collect();
    Ok(coatoms.len() == 1)
}

#[derive(Debug, Clone)]
pub struct BridgeRow {
    pub name: String,
    pub kc: bool,
    /// Identity congruence is completely meet-irreducible.
    pub si: bool,
    pub unique_coatom: bool,
    pub greatest_proper: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct BridgeReport {
    pub rows: Vec<BridgeRow>,
    /// Sample-level soundness: kc on every member implies every SI
    /// member has a greatest proper congruence (equivalently, an SI
    /// member without one forces a kc failure somewhere).
    pub consistent: bool,
    /// SI agrees with the unique-coatom test on every row.
    pub coatom_crosscheck: bool,
}

/// Per-algebra KC validity next to the congruence-side facts it
/// predicts for subdirectly irreducible members.
pub fn kc_bridge_report(algebras: &[FiniteAlgebra], caps: &Caps) -> Result<BridgeReport> {
    let mut rows = Vec::with_capacity(algebras.len());
    for a in algebras {
        let kc = kc_holds(a)?.holds;
        let con = congruence_lattice(a, caps)?;
        let class = crate::congruence::classify_identity(&con);
        let si = matches!(class, IdentityClass::Rs | IdentityClass::Rsi);
        rows.push(BridgeRow {
            name: a.name().to_string(),
            kc,
            si,
            unique_coatom: has_unique_coatom(a)?,
            greatest_proper: crate::congruence::greatest_proper_congruence(&con),
        });
    }
    let all_kc = rows.iter().all(|r| r.kc);
    let consistent =
        !(all_kc && rows.iter().any(|r| r.si && r.greatest_proper.is_none()));
    let coatom_crosscheck = rows.iter().all(|r| r.si == r.unique_coatom);
    Ok(BridgeReport {
        rows,
        consistent,
        coatom_crosscheck,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::chain;

    fn fork() -> FinitePoset {
        FinitePoset::from_covers("fork", 3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn fork_upsets_are_the_expected_five() {
        let h = upset_algebra("h5", &fork()).unwrap();
        assert_eq!(h.size(), 5);
        assert_eq!(h.label_of(0), Some("{}"));
        assert_eq!(h.label_of(1), Some("{1}"));
        assert_eq!(h.label_of(2), Some("{2}"));
        assert_eq!(h.label_of(3), Some("{1,2}"));
        assert_eq!(h.label_of(4), Some("{0,1,2}"));
    }

    #[test]
    fn fork_negations_and_kc_failure() {
        let h = upset_algebra("h5", &fork()).unwrap();
        let neg = h.signature().index_of("neg").unwrap();
        let join = h.signature().index_of("join").unwrap();
        // ¬{1} = {2}, ¬¬{1} = {1}
        assert_eq!(h.op(neg, &[1]), 2);
        assert_eq!(h.op(neg, &[h.op(neg, &[1])]), 1);
        assert_eq!(h.op(join, &[2, 1]), 3);
        let kc = kc_holds(&h).unwrap();
        assert!(!kc.holds);
        assert_eq!(kc.witness, Some((1, 3)));
    }

    #[test]
    fn chains_validate_kc() {
        for n in 1..=5 {
            let h = heyting_from_lattice("chain", &chain(n)).unwrap();
            assert!(kc_holds(&h).unwrap().holds);
        }
    }

    #[test]
    fn chain_arrow_values() {
        let h = heyting_from_lattice("c3", &chain(3)).unwrap();
        let arrow = h.signature().index_of("arrow").unwrap();
        assert_eq!(h.op(arrow, &[2, 1]), 1);
        assert_eq!(h.op(arrow, &[1, 2]), 2);
        assert_eq!(h.op(arrow, &[1, 0]), 0);
        assert_eq!(h.op(arrow, &[0, 1]), 2);
    }

    #[test]
    fn pentagon_is_rejected() {
        use crate::poset::FinitePoset;
        let order = FinitePoset::from_covers("n5", 5, &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)])
            .unwrap();
        let lat = crate::lattice::lattice_from_order(&order).unwrap();
        assert!(matches!(
            heyting_from_lattice("n5", &lat),
            Err(Error::NotDistributive { .. })
        ));
    }

    #[test]
    fn bridge_on_small_sample() {
        let caps = Caps::default();
        let fork_h = upset_algebra("h5", &fork()).unwrap();
        let c3 = heyting_from_lattice("c3", &chain(3)).unwrap();
        let report = kc_bridge_report(&[fork_h, c3], &caps).unwrap();
        assert!(report.consistent);
        assert!(report.coatom_crosscheck);
        assert!(!report.rows[0].kc);
        assert!(report.rows[1].kc);
    }
}
