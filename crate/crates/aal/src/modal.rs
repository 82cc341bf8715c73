//! Kripke frames, their complex algebras, and the bounded-iteration
//! modal conditions (box-plus towers, the inconsistency conditional,
//! the excluded-middle disjunction, convergence, and the S4 axioms).

use crate::algebra::{assignments, FiniteAlgebra};
use crate::demorgan::{sweep, AxiomCheck};
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureKind {
    None,
    Reflexive,
    Transitive,
    Preorder,
}

impl ClosureKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "none" => Some(ClosureKind::None),
            "reflexive" => Some(ClosureKind::Reflexive),
            "transitive" => Some(ClosureKind::Transitive),
            "preorder" => Some(ClosureKind::Preorder),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    name: String,
    points: usize,
    /// succ[w] = bitmask of points seen from w.
    succ: Vec<u32>,
}

impl KripkeFrame {
    pub fn new(
        name: impl Into<String>,
        points: usize,
        edges: &[(usize, usize)],
        closure: ClosureKind,
    ) -> Result<Self> {
        if points == 0 || points > 16 {
            return Err(Error::Budget {
                what: "frame points",
                size: points,
                cap: 16,
            });
        }
        let mut succ = vec![0u32; points];
        for &(w, u) in edges {
            if w >= points || u >= points {
                return Err(Error::ElementRange {
                    elem: w.max(u),
                    size: points,
                });
            }
            succ[w] |= 1 << u;
        }
        if matches!(closure, ClosureKind::Reflexive | ClosureKind::Preorder) {
            for (w, row) in succ.iter_mut().enumerate() {
                *row |= 1 << w;
            }
        }
        if matches!(closure, ClosureKind::Transitive | ClosureKind::Preorder) {
            for k in 0..points {
                for w in 0..points {
                    if succ[w] >> k & 1 != 0 {
                        succ[w] |= succ[k];
                    }
                }
            }
        }
        Ok(KripkeFrame {
            name: name.into(),
            points,
            succ,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn sees(&self, w: usize, u: usize) -> bool {
        self.succ[w] >> u & 1 != 0
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for w in 0..self.points {
            for u in 0..self.points {
                if self.sees(w, u) {
                    out.push((w, u));
                }
            }
        }
        out
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.points).all(|w| self.sees(w, w))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.points).all(|w| {
            (0..self.points).all(|u| !self.sees(w, u) || self.succ[u] & !self.succ[w] == 0)
        })
    }

    /// Any two successors of a point share a successor.
    pub fn is_up_directed(&self) -> bool {
        for w in 0..self.points {
            for u in 0..self.points {
                for v in 0..self.points {
                    if self.sees(w, u) && self.sees(w, v) && self.succ[u] & self.succ[v] == 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameProperties {
    pub reflexive: bool,
    pub transitive: bool,
    pub up_directed: bool,
}

pub fn frame_properties(frame: &KripkeFrame) -> FrameProperties {
    FrameProperties {
        reflexive: frame.is_reflexive(),
        transitive: frame.is_transitive(),
        up_directed: frame.is_up_directed(),
    }
}

pub fn modal_signature() -> Signature {
    Signature::new([
        ("meet", 2),
        ("join", 2),
        ("neg", 1),
        ("box", 1),
        ("bot", 0),
        ("top", 0),
    ])
    .expect("fixed signature is well formed")
}

/// Power-set algebra of the frame; element i is the subset with
/// bitmask i, so bot = 0 and top = 2^points - 1.
pub fn complex_algebra(frame: &KripkeFrame) -> Result<FiniteAlgebra> {
    if frame.points > 5 {
        return Err(Error::Budget {
            what: "complex algebra base frame",
            size: frame.points,
            cap: 5,
        });
    }
    let n = 1usize << frame.points;
    let all = n - 1;
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = a & b;
            join[a * n + b] = a | b;
        }
    }
    let neg: Vec<usize> = (0..n).map(|a| all & !a).collect();
    let boxed: Vec<usize> = (0..n)
        .map(|a| {
            (0..frame.points)
                .filter(|&w| frame.succ[w] as usize & !a == 0)
                .fold(0usize, |m, w| m | 1 << w)
        })
        .collect();
    FiniteAlgebra::new(
        format!("P({})", frame.name),
        modal_signature(),
        n,
        vec![meet, join, neg, boxed, vec![0], vec![all]],
    )
}

/// Exhaustive axiom report for the modal signature: Boolean lattice
/// reduct plus box normality.
pub fn validate_modal(a: &FiniteAlgebra) -> Result<Vec<AxiomCheck>> {
    let n = a.size();
    let meet = a.require("modal", "meet", 2)?;
    let join = a.require("modal", "join", 2)?;
    let neg = a.require("modal", "neg", 1)?;
    let boxsym = a.require("modal", "box", 1)?;
    let bot = a.op(a.require("modal", "bot", 0)?, &[]);
    let top = a.op(a.require("modal", "top", 0)?, &[]);
    let m = |x: usize, y: usize| a.op(meet, &[x, y]);
    let j = |x: usize, y: usize| a.op(join, &[x, y]);
    let ng = |x: usize| a.op(neg, &[x]);
    let bx = |x: usize| a.op(boxsym, &[x]);
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
        sweep("complementation", n, 1, |t| {
            m(t[0], ng(t[0])) == bot && j(t[0], ng(t[0])) == top
        }),
        sweep("box-top", n, 0, |_| bx(top) == top),
        sweep("box-meet", n, 2, |t| bx(m(t[0], t[1])) == m(bx(t[0]), bx(t[1]))),
    ])
}

fn box_iter(t: Term, k: usize) -> Term {
    (0..k).fold(t, |acc, _| Term::app("box", vec![acc]))
}

fn fold_right(op: &str, parts: Vec<Term>) -> Term {
    let mut it = parts.into_iter().rev();
    let last = it.next().expect("nonempty fold");
    it.fold(last, |acc, t| Term::app(op, vec![t, acc]))
}

/// t ∧ □t ∧ ... ∧ □^n t, folded to the right.
pub fn box_plus(n: usize, t: &Term) -> Term {
    fold_right("meet", (0..=n).map(|k| box_iter(t.clone(), k)).collect())
}

pub fn diamond(t: Term) -> Term {
    Term::app("neg", vec![Term::app("box", vec![Term::app("neg", vec![t])])])
}

/// ¬⊞^n ¬t, the dual of the box tower.
pub fn diamond_plus_dual(n: usize, t: &Term) -> Term {
    Term::app(
        "neg",
        vec![box_plus(n, &Term::app("neg", vec![t.clone()]))],
    )
}

/// t ∨ ◇t ∨ ... ∨ ◇^n t, with ◇ spelled ¬□¬.
pub fn diamond_plus_direct(n: usize, t: &Term) -> Term {
    let mut parts = Vec::with_capacity(n + 1);
    let mut cur = t.clone();
    for _ in 0..=n {
        parts.push(cur.clone());
        cur = diamond(cur);
    }
    fold_right("join", parts)
}

fn implies(lhs: Term, rhs: Term) -> Term {
    Term::app("join", vec![Term::app("neg", vec![lhs]), rhs])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModalTermKind {
    BoxPlus(usize),
    DiamondPlus(usize),
    IlCond(usize),
    WemlCond(usize, usize),
    Convergence,
    S4Ax,
}

/// The named condition as a one-variable term over v1.
pub fn modal_term(kind: ModalTermKind) -> Term {
    let v = Term::var(1);
    match kind {
        ModalTermKind::BoxPlus(n) => box_plus(n, &v),
        ModalTermKind::DiamondPlus(n) => diamond_plus_dual(n, &v),
        ModalTermKind::IlCond(n) => implies(
            box_plus(n, &v),
            diamond_plus_dual(n, &box_plus(n + 1, &v)),
        ),
        ModalTermKind::WemlCond(m, n) => {
            let nbp = Term::app("neg", vec![box_plus(n, &v)]);
            let nbp2 = Term::app("neg", vec![box_plus(n, &nbp)]);
            Term::app(
                "join",
                vec![box_plus(m, &nbp), box_plus(m, &nbp2)],
            )
        }
        ModalTermKind::Convergence => implies(
            diamond(Term::app("box", vec![v.clone()])),
            Term::app("box", vec![diamond(v)]),
        ),
        ModalTermKind::S4Ax => Term::app(
            "meet",
            vec![
                implies(Term::app("box", vec![v.clone()]), v.clone()),
                implies(
                    Term::app("box", vec![v.clone()]),
                    box_iter(v, 2),
                ),
            ],
        ),
    }
}

#[derive(Debug, Clone)]
pub struct Validity {
    pub valid: bool,
    /// (algebra index, assignment) at which the term misses top.
    pub witness: Option<(usize, crate::algebra::Assignment)>,
}

/// Validity of a term across a class of algebras: every assignment
/// evaluates to top.
pub fn valid_in_class(algebras: &[&FiniteAlgebra], t: &Term) -> Result<Validity> {
    let vars: Vec<u32> = t.vars().into_iter().collect();
    for (ai, a) in algebras.iter().enumerate() {
        let top = a.op(a.require("modal", "top", 0)?, &[]);
        for asg in assignments(&vars, a.size()) {
            if a.eval(t, &asg)? != top {
                return Ok(Validity {
                    valid: false,
                    witness: Some((ai, asg)),
                });
            }
        }
    }
    Ok(Validity {
        valid: true,
        witness: None,
    })
}

/// Least m with ⊞^{m+1} x = ⊞^m x for every x; once the tower is
/// pointwise stable it stays stable because each level is a function
/// of the one before.
pub fn stabilization_index(a: &FiniteAlgebra) -> Result<usize> {
    let meet = a.require("modal", "meet", 2)?;
    let boxsym = a.require("modal", "box", 1)?;
    let mut level: Vec<usize> = (0..a.size()).collect();
    let cap = a.size() * a.size() + 2;
    for m in 0..cap {
        let next: Vec<usize> = (0..a.size())
            .map(|x| a.op(meet, &[x, a.op(boxsym, &[level[x]])]))
            .collect();
        if next == level {
            return Ok(m);
        }
        level = next;
    }
    Err(Error::Budget {
        what: "box tower stabilization",
        size: cap,
        cap,
    })
}

#[derive(Debug, Clone)]
pub struct ModalReport {
    /// Largest stabilization index across the class; bounds the
    /// universal m in the excluded-middle sweep.
    pub stabilization: usize,
    /// Least n <= nmax validating the inconsistency conditional on the
    /// whole class.
    pub il_n: Option<usize>,
    /// At n = il_n: the excluded-middle disjunction for every m up to
    /// the stabilization bound. Absent when il_n is.
    pub weml_at_n: Option<bool>,
    pub s4: bool,
    pub convergence: bool,
    /// On S4-validating classes, weml_at_n must equal convergence.
    pub crosscheck: bool,
}

pub fn modal_condition_report(algebras: &[&FiniteAlgebra], nmax: usize) -> Result<ModalReport> {
    let mut stabilization = 0;
    for a in algebras {
        stabilization = stabilization.max(stabilization_index(a)?);
    }
    let mut il_n = None;
    for n in 0..=nmax {
        if valid_in_class(algebras, &modal_term(ModalTermKind::IlCond(n)))?.valid {
            il_n = Some(n);
            break;
        }
    }
    let weml_at_n = match il_n {
        None => None,
        Some(n) => {
            let mut all = true;
            for m in 0..=stabilization {
                if !valid_in_class(algebras, &modal_term(ModalTermKind::WemlCond(m, n)))?.valid {
                    all = false;
                    break;
                }
            }
            Some(all)
        }
    };
    let s4 = valid_in_class(algebras, &modal_term(ModalTermKind::S4Ax))?.valid;
    let convergence = valid_in_class(algebras, &modal_term(ModalTermKind::Convergence))?.valid;
    let crosscheck = !s4 || weml_at_n == Some(convergence);
    Ok(ModalReport {
        stabilization,
        il_n,
        weml_at_n,
        s4,
        convergence,
        crosscheck,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_chain() -> KripkeFrame {
        KripkeFrame::new("two_chain", 2, &[(0, 1)], ClosureKind::Preorder).unwrap()
    }

    fn fork_frame() -> KripkeFrame {
        KripkeFrame::new("fork", 3, &[(0, 1), (0, 2)], ClosureKind::Preorder).unwrap()
    }

    #[test]
    fn closure_kinds() {
        let f = KripkeFrame::new("f", 3, &[(0, 1), (1, 2)], ClosureKind::None).unwrap();
        assert!(!f.is_reflexive());
        assert!(!f.is_transitive());
        let g = KripkeFrame::new("g", 3, &[(0, 1), (1, 2)], ClosureKind::Preorder).unwrap();
        assert!(g.is_reflexive());
        assert!(g.is_transitive());
        assert!(g.sees(0, 2));
    }

    #[test]
    fn complex_algebra_of_the_two_chain() {
        let a = complex_algebra(&two_chain()).unwrap();
        assert_eq!(a.size(), 4);
        let boxsym = a.signature().index_of("box").unwrap();
        // box {1} = {w : succ(w) ⊆ {1}} = {1}; box {0} = {}.
        assert_eq!(a.op(boxsym, &[0b10]), 0b10);
        assert_eq!(a.op(boxsym, &[0b01]), 0b00);
        assert_eq!(a.op(boxsym, &[0b11]), 0b11);
    }

    #[test]
    fn box_plus_term_shape() {
        let t = modal_term(ModalTermKind::BoxPlus(2));
        assert_eq!(t.to_string(), "meet(v1, meet(box(v1), box(box(v1))))");
        let z = modal_term(ModalTermKind::BoxPlus(0));
        assert_eq!(z.to_string(), "v1");
    }

    #[test]
    fn dual_and_direct_diamond_towers_agree_on_complex_algebras() {
        for frame in [two_chain(), fork_frame()] {
            let a = complex_algebra(&frame).unwrap();
            for n in 0..=2 {
                let dual = diamond_plus_dual(n, &Term::var(1));
                let direct = diamond_plus_direct(n, &Term::var(1));
                for x in 0..a.size() {
                    let asg = crate::algebra::Assignment::from([(1u32, x)]);
                    assert_eq!(a.eval(&dual, &asg).unwrap(), a.eval(&direct, &asg).unwrap());
                }
            }
        }
    }

    #[test]
    fn identity_box_validates_il_at_zero() {
        let f = KripkeFrame::new("disc", 1, &[], ClosureKind::Reflexive).unwrap();
        let a = complex_algebra(&f).unwrap();
        let report = modal_condition_report(&[&a], 3).unwrap();
        assert_eq!(report.il_n, Some(0));
        assert_eq!(report.stabilization, 0);
    }

    #[test]
    fn fork_frame_report() {
        let a = complex_algebra(&fork_frame()).unwrap();
        let report = modal_condition_report(&[&a], 3).unwrap();
        assert_eq!(report.il_n, Some(1));
        assert_eq!(report.weml_at_n, Some(false));
        assert!(report.s4);
        assert!(!report.convergence);
        assert!(report.crosscheck);
        let props = frame_properties(&fork_frame());
        assert!(props.reflexive && props.transitive && !props.up_directed);
    }

    #[test]
    fn two_chain_report() {
        let a = complex_algebra(&two_chain()).unwrap();
        let report = modal_condition_report(&[&a], 3).unwrap();
        assert_eq!(report.il_n, Some(1));
        assert_eq!(report.weml_at_n, Some(true));
        assert!(report.s4);
        assert!(report.convergence);
        assert!(report.crosscheck);
        assert_eq!(report.stabilization, 1);
    }
}
