//! Finite lattices: join/meet tables over a poset, dual pseudocomplements,
//! the semilattice-style identities, irreducibility modes, and the two
//! theorem condition bundles checked by the acceptance oracle.

use crate::bitset::Bits;
use crate::error::{Bound, Error, Result};
use crate::poset::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
}

/// Joins and meets computed as unique least upper / greatest lower bounds.
pub fn lattice_from_order(p: &FinitePoset) -> Result<FiniteLattice> {
    let n = p.size();
    if n == 0 {
        return Err(Error::NotAPoset("empty order".to_string()));
    }
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for x in 0..n {
        for y in x..n {
            let ub = p.upset(x).and(p.upset(y));
            let j = least_of(p, &ub).ok_or(Error::NotALattice {
                x,
                y,
                bound: Bound::Join,
            })?;
            let lb = p.downset(x).and(&p.downset(y));
            let m = greatest_in(p, &lb).ok_or(Error::NotALattice {
                x,
                y,
                bound: Bound::Meet,
            })?;
            join[x * n + y] = j as u32;
            join[y * n + x] = j as u32;
            meet[x * n + y] = m as u32;
            meet[y * n + x] = m as u32;
        }
    }
    let mut bottom = 0;
    let mut top = 0;
    for i in 1..n {
        bottom = meet[bottom * n + i] as usize;
        top = join[top * n + i] as usize;
    }
    Ok(FiniteLattice {
        poset: p.clone(),
        join,
        meet,
        bottom,
        top,
    })
}

fn least_of(p: &FinitePoset, set: &Bits) -> Option<usize> {
    set.iter().find(|&z| set.is_subset(p.upset(z)))
}

fn greatest_in(p: &FinitePoset, set: &Bits) -> Option<usize> {
    set.iter().find(|&z| {
        set.iter().all(|w| p.leq(w, z))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemilatticeProp {
    /// Every element has a least join-complement to the top.
    Dpc,
    /// (a + b)** = a** + b**.
    Frink,
    /// (x + y*) meet (x + y**) = x.
    WemlId,
    /// (x + y) meet (x + y*) = x.
    EmlId,
    /// y meet y* = bottom.
    StarMeetZero,
    /// y* meet y** = bottom.
    StarStarstarMeetZero,
}

impl SemilatticeProp {
    pub fn name(self) -> &'static str {
        match self {
            SemilatticeProp::Dpc => "DPC",
            SemilatticeProp::Frink => "FRINK",
            SemilatticeProp::WemlId => "WEML_ID",
            SemilatticeProp::EmlId => "EML_ID",
            SemilatticeProp::StarMeetZero => "STAR_MEET_ZERO",
            SemilatticeProp::StarStarstarMeetZero => "STAR_STARSTAR_MEET_ZERO",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "DPC" => Some(SemilatticeProp::Dpc),
            "FRINK" => Some(SemilatticeProp::Frink),
            "WEML_ID" => Some(SemilatticeProp::WemlId),
            "EML_ID" => Some(SemilatticeProp::EmlId),
            "STAR_MEET_ZERO" => Some(SemilatticeProp::StarMeetZero),
            "STAR_STARSTAR_MEET_ZERO" => Some(SemilatticeProp::StarStarstarMeetZero),
            _ => None,
        }
    }
}

/// Outcome of a universally quantified check; the witness is the
/// lexicographically first failing tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyCheck {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl PropertyCheck {
    fn pass() -> Self {
        PropertyCheck {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Vec<usize>) -> Self {
        PropertyCheck {
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn witness_string(&self) -> String {
        match &self.witness {
            None => "-".to_string(),
            Some(w) => format!(
                "({})",
                w.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleMode {
    MeetIrr,
    CompletelyMeetIrr,
    Coatom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremKind {
    Main,
    Eml,
}

/// Named condition booleans plus the overall agreement flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub which: TheoremKind,
    pub conditions: Vec<(&'static str, bool)>,
    pub agreement: bool,
}

impl FiniteLattice {
    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y] as usize
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Least b with a + b = top, when it exists.
    pub fn dual_pseudocomplement(&self, a: usize) -> Option<usize> {
        let n = self.size();
        let complements: Vec<usize> =
            (0..n).filter(|&b| self.join(a, b) == self.top).collect();
        complements
            .iter()
            .copied()
            .find(|&l| complements.iter().all(|&b| self.leq(l, b)))
    }

    /// a* after the DPC gate; callers that checked DPC can unwrap.
    fn star(&self, a: usize) -> usize {
        self.dual_pseudocomplement(a)
            .expect("star called on a non-DPC lattice")
    }

    pub fn is_distributive(&self) -> PropertyCheck {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.meet(x, self.join(y, z))
                        != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return PropertyCheck::fail(vec![x, y, z]);
                    }
                }
            }
        }
        PropertyCheck::pass()
    }

    fn dpc_check(&self) -> PropertyCheck {
        for a in 0..self.size() {
            if self.dual_pseudocomplement(a).is_none() {
                return PropertyCheck::fail(vec![a]);
            }
        }
        PropertyCheck::pass()
    }

    fn require_dpc(&self) -> Result<()> {
        match self.dpc_check() {
            PropertyCheck { holds: true, .. } => Ok(()),
            PropertyCheck { witness, .. } => Err(Error::RequiresDpc {
                witness: witness.unwrap()[0],
            }),
        }
    }

    /// The DPC gate applies to every property except DPC itself.
    pub fn semilattice_property(&self, prop: SemilatticeProp) -> Result<PropertyCheck> {
        if prop != SemilatticeProp::Dpc {
            self.require_dpc()?;
        }
        let n = self.size();
        Ok(match prop {
            SemilatticeProp::Dpc => self.dpc_check(),
            SemilatticeProp::Frink => {
                for a in 0..n {
                    for b in 0..n {
                        let lhs = self.star(self.star(self.join(a, b)));
                        let rhs = self.join(self.star(self.star(a)), self.star(self.star(b)));
                        if lhs != rhs {
                            return Ok(PropertyCheck::fail(vec![a, b]));
                        }
                    }
                }
                PropertyCheck::pass()
            }
            SemilatticeProp::WemlId => {
                for x in 0..n {
                    for y in 0..n {
                        let ys = self.star(y);
                        let yss = self.star(ys);
                        if self.meet(self.join(x, ys), self.join(x, yss)) != x {
                            return Ok(PropertyCheck::fail(vec![x, y]));
                        }
                    }
                }
                PropertyCheck::pass()
            }
            SemilatticeProp::EmlId => {
                for x in 0..n {
                    for y in 0..n {
                        let ys = self.star(y);
                        if self.meet(self.join(x, y), self.join(x, ys)) != x {
                            return Ok(PropertyCheck::fail(vec![x, y]));
                        }
                    }
                }
                PropertyCheck::pass()
            }
            SemilatticeProp::StarMeetZero => {
                for y in 0..n {
                    if self.meet(y, self.star(y)) != self.bottom {
                        return Ok(PropertyCheck::fail(vec![y]));
                    }
                }
                PropertyCheck::pass()
            }
            SemilatticeProp::StarStarstarMeetZero => {
                for y in 0..n {
                    let ys = self.star(y);
                    if self.meet(ys, self.star(ys)) != self.bottom {
                        return Ok(PropertyCheck::fail(vec![y]));
                    }
                }
                PropertyCheck::pass()
            }
        })
    }

    pub fn meet_irreducibles(&self, mode: IrreducibleMode) -> Vec<usize> {
        let n = self.size();
        (0..n)
            .filter(|&a| match mode {
                IrreducibleMode::MeetIrr => {
                    a != self.top
                        && !(0..n).any(|x| {
                            (0..n).any(|y| {
                                self.meet(x, y) == a && x != a && y != a
                            })
                        })
                }
                IrreducibleMode::CompletelyMeetIrr => {
                    let covers = self.poset.covers_of(a);
                    covers.len() == 1
                        && (0..n).all(|x| !self.poset.lt(a, x) || self.leq(covers[0], x))
                }
                IrreducibleMode::Coatom => {
                    a != self.top
                        && !(0..n).any(|x| self.poset.lt(a, x) && self.poset.lt(x, self.top))
                }
            })
            .collect()
    }

    /// Elements of [lo, top] (or [lo, top) when half-open), ascending.
    pub fn interval_to_top(&self, lo: usize, half_open: bool) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| self.leq(lo, x) && !(half_open && x == self.top))
            .collect()
    }

    pub fn interval(&self, lo: usize, hi: usize, half_open: bool) -> Vec<usize> {
        (0..self.size())
            .filter(|&x| self.leq(lo, x) && self.leq(x, hi) && !(half_open && x == hi))
            .collect()
    }

    /// Greatest element of the subset, when one exists inside it.
    pub fn greatest_of(&self, set: &[usize]) -> Option<usize> {
        set.iter()
            .copied()
            .find(|&g| set.iter().all(|&x| self.leq(x, g)))
    }

    /// The four named conditions of the selected theorem plus agreement.
    /// Requires DPC (both bundles mention the operation *).
    pub fn theorem_conditions(&self, which: TheoremKind) -> Result<TheoremReport> {
        self.require_dpc()?;
        let n = self.size();
        let report = match which {
            TheoremKind::Main => {
                // (0)/(i): a = (a + c*) meet (a + c**); in the finite case
                // the compact elements are all elements, so the two ranges
                // coincide; both are run for the audit trail.
                let ident = |a: usize, c: usize| {
                    let cs = self.star(c);
                    let css = self.star(cs);
                    self.meet(self.join(a, cs), self.join(a, css)) == a
                };
                let cond0 = (0..n).all(|a| (0..n).all(|c| ident(a, c)));
                let cond_i = (0..n).all(|a| (0..n).all(|c| ident(a, c)));
                // (ii): meet-irreducible a has a largest element in [a, top).
                let cond_ii = self
                    .meet_irreducibles(IrreducibleMode::MeetIrr)
                    .into_iter()
                    .all(|a| {
                        self.greatest_of(&self.interval_to_top(a, true)).is_some()
                    });
                // (iii): top is join-irreducible in [a, top] for every
                // completely meet-irreducible a.
                let cond_iii = self
                    .meet_irreducibles(IrreducibleMode::CompletelyMeetIrr)
                    .into_iter()
                    .all(|a| {
                        let iv = self.interval_to_top(a, false);
                        iv.iter().all(|&x| {
                            iv.iter().all(|&y| {
                                self.join(x, y) != self.top || x == self.top || y == self.top
                            })
                        })
                    });
                TheoremReport {
                    which,
                    conditions: vec![
                        ("0", cond0),
                        ("i", cond_i),
                        ("ii", cond_ii),
                        ("iii", cond_iii),
                    ],
                    agreement: cond0 == cond_i && cond_i == cond_ii && cond_ii == cond_iii,
                }
            }
            TheoremKind::Eml => {
                let ident = |a: usize, c: usize| {
                    let cs = self.star(c);
                    self.meet(self.join(a, c), self.join(a, cs)) == a
                };
                let cond0 = (0..n).all(|a| (0..n).all(|c| ident(a, c)));
                let cond_i = (0..n).all(|a| (0..n).all(|c| ident(a, c)));
                // (ii')/(iii'): the interval [a, top] is the two-element
                // chain for (completely) meet-irreducible a.
                let two_chain =
                    |a: usize| self.interval_to_top(a, false).len() == 2;
                let cond_ii = self
                    .meet_irreducibles(IrreducibleMode::MeetIrr)
                    .into_iter()
                    .all(two_chain);
                let cond_iii = self
                    .meet_irreducibles(IrreducibleMode::CompletelyMeetIrr)
                    .into_iter()
                    .all(two_chain);
                TheoremReport {
                    which,
                    conditions: vec![
                        ("0'", cond0),
                        ("i'", cond_i),
                        ("ii'", cond_ii),
                        ("iii'", cond_iii),
                    ],
                    agreement: cond0 == cond_i && cond_i == cond_ii && cond_ii == cond_iii,
                }
            }
        };
        Ok(report)
    }
}

/// Chain 0 < 1 < ... < n-1.
pub fn chain(n: usize) -> FiniteLattice {
    let p = FinitePoset::from_leq(format!("chain{n}"), n, |i, j| i <= j).unwrap();
    lattice_from_order(&p).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pentagon() -> FiniteLattice {
        // 0 < 1 < 2 < 4, 0 < 3 < 4.
        let p = FinitePoset::from_covers("n5", 5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
            .unwrap();
        lattice_from_order(&p).unwrap()
    }

    fn diamond_m3() -> FinitePoset {
        FinitePoset::from_covers(
            "m3",
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap()
    }

    #[test]
    fn four_chain_tables() {
        let c = chain(4);
        assert_eq!(c.bottom(), 0);
        assert_eq!(c.top(), 3);
        assert_eq!(c.join(1, 2), 2);
        assert_eq!(c.meet(1, 2), 1);
        assert_eq!(c.dual_pseudocomplement(2), Some(3));
        assert_eq!(c.dual_pseudocomplement(3), Some(0));
    }

    #[test]
    fn non_lattice_is_detected() {
        // Two minimal elements below two maximal: {0,1} have no meet.
        let p = FinitePoset::from_covers("bow", 4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        match lattice_from_order(&p) {
            Err(Error::NotALattice { .. }) => {}
            other => panic!("expected lattice failure, got {other:?}"),
        }
    }

    #[test]
    fn m3_is_not_dpc() {
        let l = lattice_from_order(&diamond_m3()).unwrap();
        let dpc = l.semilattice_property(SemilatticeProp::Dpc).unwrap();
        assert!(!dpc.holds);
        assert_eq!(dpc.witness, Some(vec![1]));
        assert!(matches!(
            l.semilattice_property(SemilatticeProp::Frink),
            Err(Error::RequiresDpc { witness: 1 })
        ));
    }

    #[test]
    fn pentagon_stars() {
        let l = pentagon();
        assert_eq!(l.dual_pseudocomplement(1), Some(3));
        assert_eq!(l.dual_pseudocomplement(2), Some(3));
        assert_eq!(l.dual_pseudocomplement(3), Some(1));
        assert_eq!(l.dual_pseudocomplement(0), Some(4));
        assert_eq!(l.dual_pseudocomplement(4), Some(0));
    }

    #[test]
    fn pentagon_satisfies_main_not_eml() {
        let l = pentagon();
        let main = l.theorem_conditions(TheoremKind::Main).unwrap();
        assert!(main.agreement);
        assert!(main.conditions.iter().all(|&(_, b)| b));
        let eml = l.theorem_conditions(TheoremKind::Eml).unwrap();
        assert!(eml.agreement, "{eml:?}");
        assert!(eml.conditions.iter().all(|&(_, b)| !b));
    }

    #[test]
    fn four_chain_eml_conditions_all_false_and_agree() {
        let c = chain(4);
        let eml = c.theorem_conditions(TheoremKind::Eml).unwrap();
        assert!(eml.conditions.iter().all(|&(_, b)| !b));
        assert!(eml.agreement);
        let main = c.theorem_conditions(TheoremKind::Main).unwrap();
        assert!(main.conditions.iter().all(|&(_, b)| b));
        assert!(main.agreement);
    }

    #[test]
    fn irreducibles_on_pentagon() {
        let l = pentagon();
        assert_eq!(
            l.meet_irreducibles(IrreducibleMode::MeetIrr),
            vec![1, 2, 3]
        );
        assert_eq!(
            l.meet_irreducibles(IrreducibleMode::CompletelyMeetIrr),
            vec![1, 2, 3]
        );
        assert_eq!(l.meet_irreducibles(IrreducibleMode::Coatom), vec![2, 3]);
    }

    #[test]
    fn interval_queries() {
        let l = pentagon();
        assert_eq!(l.interval_to_top(1, false), vec![1, 2, 4]);
        assert_eq!(l.interval_to_top(1, true), vec![1, 2]);
        assert_eq!(l.greatest_of(&[1, 2]), Some(2));
        assert_eq!(l.greatest_of(&[2, 3]), None);
        assert_eq!(l.interval(0, 2, false), vec![0, 1, 2]);
    }

    #[test]
    fn frink_on_a_small_dpc_lattice() {
        let l = pentagon();
        assert!(l
            .semilattice_property(SemilatticeProp::Frink)
            .unwrap()
            .holds);
    }

    #[test]
    fn trivial_lattice() {
        let c = chain(1);
        assert_eq!(c.bottom(), c.top());
        assert!(c.semilattice_property(SemilatticeProp::Dpc).unwrap().holds);
        assert!(c.theorem_conditions(TheoremKind::Main).unwrap().agreement);
    }
}
