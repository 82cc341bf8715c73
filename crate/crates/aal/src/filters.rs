//! Deductive filters: closure systems over an algebra given by rules or
//! by a builtin logic, their filter lattices, and the inconsistency-
//! sequence checks.
//!
//! Filters are manipulated as u64 masks internally (the universe cap
//! keeps sizes comfortably below 32) and exposed as sorted element
//! vectors.

use std::collections::BTreeMap;

use crate::algebra::{assignments, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::lattice::{lattice_from_order, FiniteLattice, PropertyCheck, SemilatticeProp};
use crate::limits::Caps;
use crate::parse::CONJ_MARKER;
use crate::poset::FinitePoset;
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Least lattice filter containing the seed and top.
    Heyting,
    /// Least box-closed (Boolean) lattice filter containing the seed and top.
    ModalGlobal,
    /// Least lattice filter containing the seed and the monoid unit e.
    Dmm,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::Heyting => "heyting",
            Builtin::ModalGlobal => "modal",
            Builtin::Dmm => "dmm",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub premises: Vec<Term>,
    pub conclusion: Term,
}

#[derive(Debug, Clone)]
pub enum FilterSystem {
    RuleClosure {
        name: String,
        axioms: Vec<Term>,
        rules: Vec<Rule>,
    },
    Builtin(Builtin),
}

impl FilterSystem {
    pub fn name(&self) -> &str {
        match self {
            FilterSystem::RuleClosure { name, .. } => name,
            FilterSystem::Builtin(b) => b.name(),
        }
    }

    pub fn is_standard_builtin(&self) -> bool {
        matches!(
            self,
            FilterSystem::Builtin(Builtin::Heyting | Builtin::ModalGlobal)
        )
    }
}

fn closure_mask(a: &FiniteAlgebra, sys: &FilterSystem, seed: u64) -> Result<u64> {
    let n = a.size();
    match sys {
        FilterSystem::Builtin(b) => {
            let meet = a.require("builtin", "meet", 2)?;
            let unit = match b {
                Builtin::Heyting | Builtin::ModalGlobal => a.require("builtin", "top", 0)?,
                Builtin::Dmm => a.require("builtin", "e", 0)?,
            };
            let boxsym = match b {
                Builtin::ModalGlobal => Some(a.require("builtin", "box", 1)?),
                _ => None,
            };
            let mut mask = seed | 1 << a.op(unit, &[]);
            loop {
                let before = mask;
                // meet-closure
                let mut xs = mask;
                while xs != 0 {
                    let x = xs.trailing_zeros() as usize;
                    xs &= xs - 1;
                    let mut ys = mask;
                    while ys != 0 {
                        let y = ys.trailing_zeros() as usize;
                        ys &= ys - 1;
                        mask |= 1 << a.op(meet, &[x, y]);
                    }
                    // upward closure: meet(x, z) = x puts z above x
                    for z in 0..n {
                        if a.op(meet, &[x, z]) == x {
                            mask |= 1 << z;
                        }
                    }
                    if let Some(bx) = boxsym {
                        mask |= 1 << a.op(bx, &[x]);
                    }
                }
                if mask == before {
                    return Ok(mask);
                }
            }
        }
        FilterSystem::RuleClosure { axioms, rules, .. } => {
            let mut mask = seed;
            for ax in axioms {
                let vars: Vec<u32> = ax.vars().into_iter().collect();
                for asg in assignments(&vars, n) {
                    mask |= 1 << a.eval(ax, &asg)?;
                }
            }
            loop {
                let before = mask;
                for rule in rules {
                    let mut vars = std::collections::BTreeSet::new();
                    for p in &rule.premises {
                        vars.extend(p.vars());
                    }
                    vars.extend(rule.conclusion.vars());
                    let vars: Vec<u32> = vars.into_iter().collect();
                    for asg in assignments(&vars, n) {
                        let mut fire = true;
                        for p in &rule.premises {
                            if mask >> a.eval(p, &asg)? & 1 == 0 {
                                fire = false;
                                break;
                            }
                        }
                        if fire {
                            mask |= 1 << a.eval(&rule.conclusion, &asg)?;
                        }
                    }
                }
                if mask == before {
                    return Ok(mask);
                }
            }
        }
    }
}

fn mask_to_vec(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 != 0).collect()
}

fn vec_to_mask(v: &[usize]) -> u64 {
    v.iter().fold(0u64, |m, &i| m | 1 << i)
}

/// Least filter of the system containing the seed elements.
pub fn filter_generate(a: &FiniteAlgebra, sys: &FilterSystem, seed: &[usize]) -> Result<Vec<usize>> {
    for &e in seed {
        if e >= a.size() {
            return Err(Error::ElementRange {
                elem: e,
                size: a.size(),
            });
        }
    }
    if a.size() > 63 {
        return Err(Error::UniverseCap {
            size: a.size(),
            cap: 63,
        });
    }
    Ok(mask_to_vec(
        closure_mask(a, sys, vec_to_mask(seed))?,
        a.size(),
    ))
}

#[derive(Debug, Clone)]
pub struct FilterLatticeResult {
    /// Filters as sorted element vectors, ascending by mask value.
    pub filters: Vec<Vec<usize>>,
    /// Inclusion order; meets are intersections.
    pub lattice: FiniteLattice,
}

impl FilterLatticeResult {
    pub fn index_of(&self, filter: &[usize]) -> Option<usize> {
        self.filters.iter().position(|f| f == filter)
    }
}

/// All filters by direct subset closure: the closure of every one of
/// the 2^n subsets, deduplicated.
pub fn filter_lattice(
    a: &FiniteAlgebra,
    sys: &FilterSystem,
    caps: &Caps,
) -> Result<FilterLatticeResult> {
    caps.check_universe(a.size())?;
    let n = a.size();
    let mut masks: Vec<u64> = Vec::new();
    for seed in 0u64..1 << n {
        let m = closure_mask(a, sys, seed)?;
        if !masks.contains(&m) {
            masks.push(m);
        }
    }
    build_filter_lattice(masks, n, caps)
}

/// Self-oracle construction: closures of singletons (and of the empty
/// set) closed under pairwise join.
pub fn filter_lattice_principal_join(
    a: &FiniteAlgebra,
    sys: &FilterSystem,
    caps: &Caps,
) -> Result<FilterLatticeResult> {
    caps.check_universe(a.size())?;
    let n = a.size();
    let mut masks: Vec<u64> = vec![closure_mask(a, sys, 0)?];
    for e in 0..n {
        let m = closure_mask(a, sys, 1 << e)?;
        if !masks.contains(&m) {
            masks.push(m);
        }
    }
    loop {
        let mut grew = false;
        let snapshot = masks.clone();
        for (i, &x) in snapshot.iter().enumerate() {
            for &y in &snapshot[i + 1..] {
                let j = closure_mask(a, sys, x | y)?;
                if !masks.contains(&j) {
                    masks.push(j);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    build_filter_lattice(masks, n, caps)
}

fn build_filter_lattice(mut masks: Vec<u64>, n: usize, caps: &Caps) -> Result<FilterLatticeResult> {
    masks.sort_unstable();
    if masks.len() > caps.family_cap {
        return Err(Error::Budget {
            what: "filter family",
            size: masks.len(),
            cap: caps.family_cap,
        });
    }
    let order = FinitePoset::from_leq("filters", masks.len(), |i, j| masks[i] & !masks[j] == 0)?;
    let lattice = lattice_from_order(&order)?;
    Ok(FilterLatticeResult {
        filters: masks.iter().map(|&m| mask_to_vec(m, n)).collect(),
        lattice,
    })
}

/// A family of finite premise sets indexed by arity: explicit entries
/// plus an optional schematic template over the `vconj` marker.
#[derive(Debug, Clone)]
pub struct IlSequence {
    pub name: String,
    pub entries: BTreeMap<usize, Vec<Term>>,
    pub template: Option<Vec<Term>>,
    pub conj_symbol: String,
}

impl IlSequence {
    pub fn new(name: impl Into<String>) -> Self {
        IlSequence {
            name: name.into(),
            entries: BTreeMap::new(),
            template: None,
            conj_symbol: "meet".to_string(),
        }
    }

    /// Builtin sequence for the relevant-logic shadow:
    /// psi_n = { (v1 ∧ ... ∧ vn ∧ e) -> (f ∧ ¬f²) } over the De Morgan
    /// signature, with -> and f spelled out in primitives.
    pub fn rt_builtin() -> Self {
        // (x -> y) = neg(fuse(x, neg(y))), f = neg(e), f² = fuse(f, f).
        let f = || Term::app("neg", vec![Term::constant("e")]);
        let f2 = Term::app("fuse", vec![f(), f()]);
        let rhs = Term::app("meet", vec![f(), Term::app("neg", vec![f2])]);
        let lhs = Term::app(CONJ_MARKER, vec![Term::constant("e")]);
        let arrow = Term::app(
            "neg",
            vec![Term::app("fuse", vec![lhs, Term::app("neg", vec![rhs])])],
        );
        let mut s = IlSequence::new("rt");
        s.template = Some(vec![arrow]);
        s
    }

    /// Same shape but over a signature carrying `arrow` and `f` as
    /// primitives (used for display and parse examples).
    pub fn rt_sugared() -> Self {
        let f = Term::constant("f");
        let f2 = Term::app("fuse", vec![f.clone(), f.clone()]);
        let rhs = Term::app("meet", vec![f, Term::app("neg", vec![f2])]);
        let lhs = Term::app(CONJ_MARKER, vec![Term::constant("e")]);
        let mut s = IlSequence::new("rt-sugared");
        s.template = Some(vec![Term::app("arrow", vec![lhs, rhs])]);
        s
    }

    /// Builtin sequence for S4-style modal algebras:
    /// psi_k = { ¬□(v1 ∧ ... ∧ vk) }.
    pub fn s4_builtin() -> Self {
        let mut s = IlSequence::new("s4");
        s.template = Some(vec![Term::app(
            "neg",
            vec![Term::app("box", vec![Term::constant(CONJ_MARKER)])],
        )]);
        s
    }

    /// Right-folded conjunction v1 ∧ v2 ∧ ... ∧ vn (∧ tail).
    fn fold_conj(&self, n: usize, tail: Option<&Term>) -> Term {
        let mut parts: Vec<Term> = (1..=n as u32).map(Term::Var).collect();
        if let Some(t) = tail {
            parts.push(t.clone());
        }
        let last = parts.pop().expect("n >= 1 or tail present");
        parts.into_iter().rev().fold(last, |acc, v| {
            Term::app(&self.conj_symbol, vec![v, acc])
        })
    }

    fn expand(&self, t: &Term, n: usize) -> Term {
        match t {
            Term::Var(_) => t.clone(),
            Term::App(name, args) if name == CONJ_MARKER => {
                let tail = args.first().map(|a| self.expand(a, n));
                self.fold_conj(n, tail.as_ref())
            }
            Term::App(name, args) => Term::App(
                name.clone(),
                args.iter().map(|a| self.expand(a, n)).collect(),
            ),
        }
    }

    /// The premise set for arity n, members in canonical (printed) order.
    pub fn psi(&self, n: usize) -> Result<Vec<Term>> {
        let mut terms = match (self.entries.get(&n), &self.template) {
            (Some(ts), _) => ts.clone(),
            (None, Some(template)) if n >= 1 => {
                template.iter().map(|t| self.expand(t, n)).collect()
            }
            _ => {
                return Err(Error::PsiUndefined {
                    name: self.name.clone(),
                    n,
                })
            }
        };
        terms.sort_by_key(|t| t.to_string());
        terms.dedup();
        Ok(terms)
    }
}

/// psi_{#n} applied to the members of psi_n (substituted for v1..v#n in
/// canonical order).
pub fn psi_iterate(seq: &IlSequence, n: usize) -> Result<Vec<Term>> {
    let psi_n = seq.psi(n)?;
    let hash_n = psi_n.len();
    let psi_hash = seq.psi(hash_n)?;
    let map: BTreeMap<u32, Term> = psi_n
        .iter()
        .enumerate()
        .map(|(i, t)| (i as u32 + 1, t.clone()))
        .collect();
    let mut out: Vec<Term> = psi_hash.iter().map(|t| t.subst(&map)).collect();
    out.sort_by_key(|t| t.to_string());
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IlLeg {
    /// Fg(psi_n(ā)) differs from the dual pseudocomplement of Fg(ā).
    StarMismatch,
    /// Fg(psi_n(ā) ∪ ā) is not the whole algebra.
    InconsistencyMismatch,
    /// Some generated filter has no dual pseudocomplement.
    NoStar,
}

#[derive(Debug, Clone)]
pub struct IlFailure {
    pub n: usize,
    pub tuple: Vec<usize>,
    pub leg: IlLeg,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct IlVerdict {
    pub ok: bool,
    pub failure: Option<IlFailure>,
}

/// Checks, for every n <= nmax and every tuple ā, that
/// Fg(ā)* = Fg(psi_n(ā)) and that ā together with psi_n(ā) generates
/// the improper filter.
pub fn verify_il_sequence(
    a: &FiniteAlgebra,
    sys: &FilterSystem,
    seq: &IlSequence,
    nmax: usize,
    caps: &Caps,
) -> Result<IlVerdict> {
    let fl = filter_lattice(a, sys, caps)?;
    // the sequence laws presuppose a dually pseudo-complemented filter
    // semilattice; a missing star is itself the failure
    let dpc = fl.lattice.semilattice_property(SemilatticeProp::Dpc)?;
    if !dpc.holds {
        let bad = dpc.witness.expect("failed check carries a witness")[0];
        return Ok(IlVerdict {
            ok: false,
            failure: Some(IlFailure {
                n: 0,
                tuple: Vec::new(),
                leg: IlLeg::NoStar,
                detail: format!(
                    "filter {:?} has no dual pseudocomplement",
                    fl.filters[bad]
                ),
            }),
        });
    }
    let full: Vec<usize> = (0..a.size()).collect();
    for n in 1..=nmax {
        let psi = seq.psi(n)?;
        for tuple_idx in 0..a.size().pow(n as u32) {
            let mut tuple = vec![0usize; n];
            let mut rest = tuple_idx;
            for slot in (0..n).rev() {
                tuple[slot] = rest % a.size();
                rest /= a.size();
            }
            let fg_tuple = filter_generate(a, sys, &tuple)?;
            let ti = fl
                .index_of(&fg_tuple)
                .expect("generated filter is in the filter lattice");
            let psi_values = eval_psi(a, &psi, &tuple)?;
            let fg_psi = filter_generate(a, sys, &psi_values)?;
            let Some(star) = fl.lattice.dual_pseudocomplement(ti) else {
                return Ok(IlVerdict {
                    ok: false,
                    failure: Some(IlFailure {
                        n,
                        tuple,
                        leg: IlLeg::NoStar,
                        detail: format!("Fg{fg_tuple:?} has no dual pseudocomplement"),
                    }),
                });
            };
            if fl.filters[star] != fg_psi {
                return Ok(IlVerdict {
                    ok: false,
                    failure: Some(IlFailure {
                        n,
                        tuple: tuple.clone(),
                        leg: IlLeg::StarMismatch,
                        detail: format!(
                            "Fg(tuple)* = {:?} but Fg(psi) = {:?}",
                            fl.filters[star], fg_psi
                        ),
                    }),
                });
            }
            let mut both = psi_values.clone();
            both.extend_from_slice(&tuple);
            if filter_generate(a, sys, &both)? != full {
                return Ok(IlVerdict {
                    ok: false,
                    failure: Some(IlFailure {
                        n,
                        tuple,
                        leg: IlLeg::InconsistencyMismatch,
                        detail: "tuple plus psi values fail to generate everything".to_string(),
                    }),
                });
            }
        }
    }
    Ok(IlVerdict {
        ok: true,
        failure: None,
    })
}

/// Values of the psi members at v1..vn = tuple, sorted and deduplicated.
pub fn eval_psi(a: &FiniteAlgebra, psi: &[Term], tuple: &[usize]) -> Result<Vec<usize>> {
    let asg: crate::algebra::Assignment = tuple
        .iter()
        .enumerate()
        .map(|(i, &e)| (i as u32 + 1, e))
        .collect();
    let mut out = Vec::with_capacity(psi.len());
    for t in psi {
        out.push(a.eval(t, &asg)?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct GenerationInstance {
    pub join_is_full: bool,
    pub psi_in_filter: bool,
}

impl GenerationInstance {
    pub fn agrees(&self) -> bool {
        self.join_is_full == self.psi_in_filter
    }
}

/// One instance of the generation equivalence: the join of F with
/// Fg(ā) is everything iff all psi_n(ā) values lie in F.
pub fn verify_filter_generation_theorem(
    a: &FiniteAlgebra,
    sys: &FilterSystem,
    seq: &IlSequence,
    filter: &[usize],
    tuple: &[usize],
) -> Result<GenerationInstance> {
    let psi = seq.psi(tuple.len())?;
    let psi_values = eval_psi(a, &psi, tuple)?;
    let mut seed = filter.to_vec();
    seed.extend_from_slice(tuple);
    let join = filter_generate(a, sys, &seed)?;
    Ok(GenerationInstance {
        join_is_full: join.len() == a.size(),
        psi_in_filter: psi_values.iter().all(|v| filter.contains(v)),
    })
}

#[derive(Debug, Clone)]
pub struct PsiIterateCheck {
    pub star_star_matches: bool,
    pub derivable_from_tuple: bool,
    pub witness: Option<(usize, Vec<usize>)>,
}

/// The second-iterate laws: Fg(ā)** = Fg(psi_#n psi_n(ā)) and
/// psi_#n psi_n(ā) ⊆ Fg(ā), for all tuples with n <= nmax.
pub fn verify_psi_iterate(
    a: &FiniteAlgebra,
    sys: &FilterSystem,
    seq: &IlSequence,
    nmax: usize,
    caps: &Caps,
) -> Result<PsiIterateCheck> {
    let fl = filter_lattice(a, sys, caps)?;
    for n in 1..=nmax {
        let iterated = psi_iterate(seq, n)?;
        for tuple_idx in 0..a.size().pow(n as u32) {
            let mut tuple = vec![0usize; n];
            let mut rest = tuple_idx;
            for slot in (0..n).rev() {
                tuple[slot] = rest % a.size();
                rest /= a.size();
            }
            let fg_tuple = filter_generate(a, sys, &tuple)?;
            let ti = fl.index_of(&fg_tuple).expect("filter in lattice");
            let Some(star) = fl.lattice.dual_pseudocomplement(ti) else {
                return Ok(PsiIterateCheck {
                    star_star_matches: false,
                    derivable_from_tuple: false,
                    witness: Some((n, tuple)),
                });
            };
            let Some(star2) = fl.lattice.dual_pseudocomplement(star) else {
                return Ok(PsiIterateCheck {
                    star_star_matches: false,
                    derivable_from_tuple: false,
                    witness: Some((n, tuple)),
                });
            };
            let values = eval_psi(a, &iterated, &tuple)?;
            if fl.filters[star2] != filter_generate(a, sys, &values)? {
                return Ok(PsiIterateCheck {
                    star_star_matches: false,
                    derivable_from_tuple: true,
                    witness: Some((n, tuple)),
                });
            }
            if !values.iter().all(|v| fg_tuple.contains(v)) {
                return Ok(PsiIterateCheck {
                    star_star_matches: true,
                    derivable_from_tuple: false,
                    witness: Some((n, tuple)),
                });
            }
        }
    }
    Ok(PsiIterateCheck {
        star_star_matches: true,
        derivable_from_tuple: true,
        witness: None,
    })
}

#[derive(Debug, Clone)]
pub struct FilterWemlRecord {
    pub dpc: PropertyCheck,
    /// None when the DPC gate fails.
    pub weml_id: Option<PropertyCheck>,
    pub eml_id: Option<PropertyCheck>,
    pub distributive: PropertyCheck,
    pub filter_count: usize,
}

/// The star identities evaluated on the filter lattice itself.
pub fn weml_eml_on_filters(
    a: &FiniteAlgebra,
    sys: &FilterSystem,
    caps: &Caps,
) -> Result<FilterWemlRecord> {
    let fl = filter_lattice(a, sys, caps)?;
    let dpc = fl.lattice.semilattice_property(SemilatticeProp::Dpc)?;
    let (weml_id, eml_id) = if dpc.holds {
        (
            Some(fl.lattice.semilattice_property(SemilatticeProp::WemlId)?),
            Some(fl.lattice.semilattice_property(SemilatticeProp::EmlId)?),
        )
    } else {
        (None, None)
    };
    Ok(FilterWemlRecord {
        dpc,
        weml_id,
        eml_id,
        distributive: fl.lattice.is_distributive(),
        filter_count: fl.filters.len(),
    })
}
