//! De Morgan monoids: axiom validation with per-law witnesses, the four
//! named examples with fusion tables recovered by constraint search,
//! structural flags, the filter-congruence isomorphism, and the
//! inconsistency/excluded-middle checks for lattice filters around e.

use std::collections::BTreeMap;

use crate::algebra::FiniteAlgebra;
use crate::congruence::{
    classify_identity, congruence_lattice, greatest_proper_congruence, leibniz_congruence,
    IdentityClass,
};
use crate::error::{Error, Result};
use crate::filters::{filter_lattice, weml_eml_on_filters, Builtin, FilterSystem, IlSequence};
use crate::lattice::{lattice_from_order, FiniteLattice};
use crate::limits::Caps;
use crate::partition::{Partition, UnionFind};
use crate::poset::FinitePoset;
use crate::signature::Signature;

pub fn dmm_signature() -> Signature {
    Signature::new([("fuse", 2), ("meet", 2), ("join", 2), ("neg", 1), ("e", 0)])
        .expect("fixed signature is well formed")
}

#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct DmmReport {
    pub checks: Vec<AxiomCheck>,
}

impl DmmReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

struct Ops {
    fuse: usize,
    meet: usize,
    join: usize,
    neg: usize,
    e: usize,
}

fn ops(a: &FiniteAlgebra) -> Result<Ops> {
    Ok(Ops {
        fuse: a.require("dmm", "fuse", 2)?,
        meet: a.require("dmm", "meet", 2)?,
        join: a.require("dmm", "join", 2)?,
        neg: a.require("dmm", "neg", 1)?,
        e: a.require("dmm", "e", 0)?,
    })
}

/// Exhaustive k-variable axiom sweep; the witness is the
/// lexicographically first failing tuple.
pub(crate) fn sweep(
    name: &'static str,
    n: usize,
    k: usize,
    test: impl Fn(&[usize]) -> bool,
) -> AxiomCheck {
    for args in crate::algebra::tuples_over(&(0..n).collect::<Vec<_>>(), k) {
        if !test(&args) {
            return AxiomCheck {
                name,
                holds: false,
                witness: Some(args),
            };
        }
    }
    AxiomCheck {
        name,
        holds: true,
        witness: None,
    }
}

/// Every defining axiom plus the derived laws, checked exhaustively;
/// witnesses are lexicographically first.
pub fn validate_dmm(a: &FiniteAlgebra) -> Result<DmmReport> {
    let o = ops(a)?;
    let n = a.size();
    let fuse = |x: usize, y: usize| a.op(o.fuse, &[x, y]);
    let meet = |x: usize, y: usize| a.op(o.meet, &[x, y]);
    let join = |x: usize, y: usize| a.op(o.join, &[x, y]);
    let neg = |x: usize| a.op(o.neg, &[x]);
    let e = a.op(o.e, &[]);
    let leq = |x: usize, y: usize| meet(x, y) == x;
    let arrow = |x: usize, y: usize| neg(fuse(x, neg(y)));

    let checks = vec![
        sweep("lattice-commutative", n, 2, |a| {
            meet(a[0], a[1]) == meet(a[1], a[0]) && join(a[0], a[1]) == join(a[1], a[0])
        }),
        sweep("lattice-associative", n, 3, |a| {
            meet(meet(a[0], a[1]), a[2]) == meet(a[0], meet(a[1], a[2]))
                && join(join(a[0], a[1]), a[2]) == join(a[0], join(a[1], a[2]))
        }),
        sweep("lattice-absorption", n, 2, |a| {
            meet(a[0], join(a[0], a[1])) == a[0] && join(a[0], meet(a[0], a[1])) == a[0]
        }),
        sweep("lattice-distributive", n, 3, |a| {
            meet(a[0], join(a[1], a[2])) == join(meet(a[0], a[1]), meet(a[0], a[2]))
        }),
        sweep("monoid-associative", n, 3, |a| {
            fuse(fuse(a[0], a[1]), a[2]) == fuse(a[0], fuse(a[1], a[2]))
        }),
        sweep("monoid-commutative", n, 2, |a| {
            fuse(a[0], a[1]) == fuse(a[1], a[0])
        }),
        sweep("monoid-unit", n, 1, |a| fuse(e, a[0]) == a[0]),
        sweep("square-increasing", n, 1, |a| leq(a[0], fuse(a[0], a[0]))),
        sweep("involution", n, 1, |a| neg(neg(a[0])) == a[0]),
        sweep("contraposition", n, 3, |a| {
            leq(fuse(a[0], a[1]), a[2]) == leq(fuse(a[0], neg(a[2])), neg(a[1]))
        }),
        // derived laws; failures here indicate table corruption even
        // when the axioms above were individually scanned first
        sweep("residuation", n, 3, |a| {
            leq(fuse(a[0], a[1]), a[2]) == leq(a[1], arrow(a[0], a[2]))
        }),
        sweep("order-equation", n, 2, |a| {
            leq(a[0], a[1]) == leq(e, arrow(a[0], a[1]))
        }),
        sweep("e-arrow-identity", n, 1, |a| arrow(e, a[0]) == a[0]),
        sweep("de-morgan-laws", n, 2, |a| {
            neg(join(a[0], a[1])) == meet(neg(a[0]), neg(a[1]))
                && neg(meet(a[0], a[1])) == join(neg(a[0]), neg(a[1]))
        }),
    ];
    let mut checks = checks;

    let e_least = (0..n).all(|x| leq(e, x));
    checks.push(AxiomCheck {
        name: "e-not-least-unless-trivial",
        holds: n == 1 || !e_least,
        witness: None,
    });

    Ok(DmmReport { checks })
}

#[derive(Debug, Clone)]
pub struct DerivedDmm {
    pub f: usize,
    pub f2: usize,
    pub neg_f2: usize,
    /// Dense tables in the ambient indexing.
    pub arrow: Vec<usize>,
    pub biarrow: Vec<usize>,
    pub bottom: Option<usize>,
    pub top: Option<usize>,
}

/// f = ¬e, x→y = ¬(x·¬y), x↔y = (x→y)∧(y→x), bounds from the lattice.
pub fn derived(a: &FiniteAlgebra) -> Result<DerivedDmm> {
    let o = ops(a)?;
    let n = a.size();
    let neg = |x: usize| a.op(o.neg, &[x]);
    let fuse = |x: usize, y: usize| a.op(o.fuse, &[x, y]);
    let meet = |x: usize, y: usize| a.op(o.meet, &[x, y]);
    let join = |x: usize, y: usize| a.op(o.join, &[x, y]);
    let e = a.op(o.e, &[]);
    let f = neg(e);
    let arrow_at = |x: usize, y: usize| neg(fuse(x, neg(y)));
    let mut arrow = vec![0usize; n * n];
    let mut biarrow = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            arrow[x * n + y] = arrow_at(x, y);
        }
    }
    for x in 0..n {
        for y in 0..n {
            biarrow[x * n + y] = meet(arrow[x * n + y], arrow[y * n + x]);
        }
    }
    let bottom = (0..n).fold(0, meet);
    let top = (0..n).fold(0, join);
    let is_bounded =
        (0..n).all(|x| meet(bottom, x) == bottom) && (0..n).all(|x| join(top, x) == top);
    Ok(DerivedDmm {
        f,
        f2: fuse(f, f),
        neg_f2: neg(fuse(f, f)),
        arrow,
        biarrow,
        bottom: is_bounded.then_some(bottom),
        top: is_bounded.then_some(top),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedDmm {
    B2,
    S3,
    C4,
    D4,
}

impl NamedDmm {
    pub fn all() -> [NamedDmm; 4] {
        [NamedDmm::B2, NamedDmm::S3, NamedDmm::C4, NamedDmm::D4]
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedDmm::B2 => "B2",
            NamedDmm::S3 => "S3",
            NamedDmm::C4 => "C4",
            NamedDmm::D4 => "D4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "B2" | "2" => Some(NamedDmm::B2),
            "S3" => Some(NamedDmm::S3),
            "C4" => Some(NamedDmm::C4),
            "D4" => Some(NamedDmm::D4),
            _ => None,
        }
    }
}

struct Diagram {
    size: usize,
    covers: &'static [(usize, usize)],
    neg: &'static [usize],
    e: usize,
    labels: &'static [(usize, &'static str)],
}

fn diagram(which: NamedDmm) -> Diagram {
    match which {
        // f below e
        NamedDmm::B2 => Diagram {
            size: 2,
            covers: &[(0, 1)],
            neg: &[1, 0],
            e: 1,
            labels: &[(0, "f"), (1, "e")],
        },
        // three-element chain, e = f in the middle
        NamedDmm::S3 => Diagram {
            size: 3,
            covers: &[(0, 1), (1, 2)],
            neg: &[2, 1, 0],
            e: 1,
            labels: &[(1, "e")],
        },
        // chain negf2 < e < f < f2
        NamedDmm::C4 => Diagram {
            size: 4,
            covers: &[(0, 1), (1, 2), (2, 3)],
            neg: &[3, 2, 1, 0],
            e: 1,
            labels: &[(0, "negf2"), (1, "e"), (2, "f"), (3, "f2")],
        },
        // diamond with incomparable e, f
        NamedDmm::D4 => Diagram {
            size: 4,
            covers: &[(0, 1), (0, 2), (1, 3), (2, 3)],
            neg: &[3, 2, 1, 0],
            e: 1,
            labels: &[(0, "negf2"), (1, "e"), (2, "f"), (3, "f2")],
        },
    }
}

/// All fusion tables completing the diagram to a De Morgan monoid.
/// The unit row/column is forced; the free entries are the unordered
/// pairs of non-unit elements, swept exhaustively.
pub fn named_solutions(which: NamedDmm) -> Vec<FiniteAlgebra> {
    let d = diagram(which);
    let n = d.size;
    let order = FinitePoset::from_covers(which.name(), n, d.covers).expect("diagram is a poset");
    let lat = lattice_from_order(&order).expect("diagram is a lattice");
    let mut meet = vec![0usize; n * n];
    let mut join = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            meet[x * n + y] = lat.meet(x, y);
            join[x * n + y] = lat.join(x, y);
        }
    }
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (x..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != d.e && y != d.e)
        .collect();
    let mut solutions = Vec::new();
    for candidate in 0..n.pow(free.len() as u32) {
        let mut fuse = vec![0usize; n * n];
        for x in 0..n {
            fuse[d.e * n + x] = x;
            fuse[x * n + d.e] = x;
        }
        let mut rest = candidate;
        for &(x, y) in &free {
            let v = rest % n;
            rest /= n;
            fuse[x * n + y] = v;
            fuse[y * n + x] = v;
        }
        let alg = FiniteAlgebra::new(
            which.name(),
            dmm_signature(),
            n,
            vec![fuse, meet.clone(), join.clone(), d.neg.to_vec(), vec![d.e]],
        )
        .expect("tables are well formed");
        if validate_dmm(&alg).expect("signature matches").all_pass() {
            let labels: BTreeMap<usize, String> = d
                .labels
                .iter()
                .map(|&(i, s)| (i, s.to_string()))
                .collect();
            solutions.push(alg.with_labels(labels).expect("labels in range"));
        }
    }
    solutions
}

/// The named algebra; the Hasse diagram determines the fusion table
/// uniquely, which the constraint search re-establishes every time.
pub fn named(which: NamedDmm) -> FiniteAlgebra {
    let mut solutions = named_solutions(which);
    assert_eq!(
        solutions.len(),
        1,
        "{} fusion table is not unique over its diagram",
        which.name()
    );
    solutions.pop().unwrap()
}

#[derive(Debug, Clone)]
pub struct StructureFlags {
    pub bounded: bool,
    /// None when the algebra is unbounded (not at this scale).
    pub rigorously_compact: Option<bool>,
    pub idempotent: bool,
    pub anti_idempotent: bool,
    /// Identity congruence meet-irreducible.
    pub fsi_proxy: bool,
}

/// The two equivalent formulations of rigorous compactness,
/// (a·⊤ = ⊤ for a ≠ ⊥) and (a→⊥ = ⊥ for a ≠ ⊥).
pub fn rigorous_compactness_formulations(a: &FiniteAlgebra) -> Result<(bool, bool)> {
    let o = ops(a)?;
    let d = derived(a)?;
    let (Some(bot), Some(top)) = (d.bottom, d.top) else {
        return Err(Error::BadSignature("unbounded lattice reduct".to_string()));
    };
    let by_fusion = (0..a.size())
        .filter(|&x| x != bot)
        .all(|x| a.op(o.fuse, &[x, top]) == top);
    let by_arrow = (0..a.size())
        .filter(|&x| x != bot)
        .all(|x| d.arrow[x * a.size() + bot] == bot);
    Ok((by_fusion, by_arrow))
}

pub fn structure_flags(a: &FiniteAlgebra, caps: &Caps) -> Result<StructureFlags> {
    let o = ops(a)?;
    let n = a.size();
    let d = derived(a)?;
    let bounded = d.bottom.is_some();
    let rigorously_compact = if bounded {
        let (by_fusion, by_arrow) = rigorous_compactness_formulations(a)?;
        Some(by_fusion && by_arrow)
    } else {
        None
    };
    let idempotent = (0..n).all(|x| a.op(o.fuse, &[x, x]) == x);
    let anti_idempotent = (0..n).all(|x| a.op(o.meet, &[x, d.f2]) == x);
    let con = congruence_lattice(a, caps)?;
    let fsi_proxy = matches!(
        classify_identity(&con),
        IdentityClass::Rs | IdentityClass::Rsi | IdentityClass::Rfsi
    );
    Ok(StructureFlags {
        bounded,
        rigorously_compact,
        idempotent,
        anti_idempotent,
        fsi_proxy,
    })
}

/// Leibniz congruences of all e-filters computed two ways (generic
/// refinement versus the a↔b formula), then the two displayed maps
/// checked to be mutually inverse order isomorphisms.
pub fn filter_congruence_iso_check(a: &FiniteAlgebra, caps: &Caps) -> Result<bool> {
    let o = ops(a)?;
    let d = derived(a)?;
    let n = a.size();
    let e = a.op(o.e, &[]);
    let fl = filter_lattice(a, &FilterSystem::Builtin(Builtin::Dmm), caps)?;
    let cl = congruence_lattice(a, caps)?;
    let mut image = Vec::with_capacity(fl.filters.len());
    for filter in &fl.filters {
        let generic = leibniz_congruence(a, filter)?;
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for y in 0..n {
                if filter.contains(&d.biarrow[x * n + y]) {
                    uf.union(x, y);
                }
            }
        }
        let formula = uf.into_partition();
        // the displayed relation must itself be transitive: membership
        // in a block has to coincide with the biarrow test
        for x in 0..n {
            for y in 0..n {
                if formula.same(x, y) != filter.contains(&d.biarrow[x * n + y]) {
                    return Ok(false);
                }
            }
        }
        if generic != formula {
            return Ok(false);
        }
        let Some(ci) = cl.index_of(&generic) else {
            return Ok(false);
        };
        image.push(ci);
    }
    // bijective
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != fl.filters.len() || fl.filters.len() != cl.congruences.len() {
        return Ok(false);
    }
    // biorder: F ⊆ G iff ΩF refines ΩG
    for (i, fi) in fl.filters.iter().enumerate() {
        for (j, fj) in fl.filters.iter().enumerate() {
            let sub = fi.iter().all(|x| fj.contains(x));
            let refines = cl.congruences[image[i]].refines(&cl.congruences[image[j]]);
            if sub != refines {
                return Ok(false);
            }
        }
    }
    // inverse map θ ↦ {a : a∧e ≡ e}
    for (i, filter) in fl.filters.iter().enumerate() {
        let theta = &cl.congruences[image[i]];
        let back: Vec<usize> = (0..n)
            .filter(|&x| theta.same(a.op(o.meet, &[x, e]), e))
            .collect();
        if &back != filter {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The sublattice (e] = {a : a <= e} with its element map back into A.
pub fn interval_below_e(a: &FiniteAlgebra) -> Result<(FiniteLattice, Vec<usize>)> {
    let o = ops(a)?;
    let e = a.op(o.e, &[]);
    let members: Vec<usize> = (0..a.size())
        .filter(|&x| a.op(o.meet, &[x, e]) == x)
        .collect();
    let order = FinitePoset::from_leq(
        format!("{}-below-e", a.name()),
        members.len(),
        |i, j| a.op(o.meet, &[members[i], members[j]]) == members[i],
    )?;
    Ok((lattice_from_order(&order)?, members))
}

#[derive(Debug, Clone)]
pub struct RtIlWemlCheck {
    pub il_ok: bool,
    /// f ∧ ¬f² is the least element.
    pub least_is_fmeet: bool,
    pub weml_id: bool,
    /// Bounded nontrivial FSI implies a greatest proper congruence.
    pub greatest_proper_when_fsi: bool,
}

impl RtIlWemlCheck {
    pub fn all_pass(&self) -> bool {
        self.il_ok && self.least_is_fmeet && self.weml_id && self.greatest_proper_when_fsi
    }
}

pub fn rt_il_weml_check(a: &FiniteAlgebra, nmax: usize, caps: &Caps) -> Result<RtIlWemlCheck> {
    let o = ops(a)?;
    let d = derived(a)?;
    let sys = FilterSystem::Builtin(Builtin::Dmm);
    let seq = IlSequence::rt_builtin();
    let il_ok = crate::filters::verify_il_sequence(a, &sys, &seq, nmax, caps)?.ok;
    let fmeet = a.op(o.meet, &[d.f, d.neg_f2]);
    let least_is_fmeet = (0..a.size()).all(|x| a.op(o.meet, &[fmeet, x]) == fmeet);
    let weml_id = weml_eml_on_filters(a, &sys, caps)?
        .weml_id
        .map(|c| c.holds)
        .unwrap_or(false);
    let con = congruence_lattice(a, caps)?;
    let fsi = matches!(
        classify_identity(&con),
        IdentityClass::Rs | IdentityClass::Rsi | IdentityClass::Rfsi
    );
    let applicable = d.bottom.is_some() && a.size() > 1 && fsi;
    let greatest_proper_when_fsi =
        !applicable || greatest_proper_congruence(&con).is_some();
    Ok(RtIlWemlCheck {
        il_ok,
        least_is_fmeet,
        weml_id,
        greatest_proper_when_fsi,
    })
}

/// Exhaustive description of e-filters as meet-closed up-sets
/// containing e; used as the oracle against the closure engine.
pub fn efilters_by_definition(a: &FiniteAlgebra) -> Result<Vec<Vec<usize>>> {
    let o = ops(a)?;
    let n = a.size();
    if n > 20 {
        return Err(Error::UniverseCap { size: n, cap: 20 });
    }
    let e = a.op(o.e, &[]);
    let leq = |x: usize, y: usize| a.op(o.meet, &[x, y]) == x;
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let has = |x: usize| mask >> x & 1 != 0;
        if !has(e) {
            continue;
        }
        let upset = (0..n).all(|x| !has(x) || (0..n).all(|y| !leq(x, y) || has(y)));
        let meet_closed = (0..n).all(|x| {
            !has(x) || (0..n).all(|y| !has(y) || has(a.op(o.meet, &[x, y])))
        });
        if upset && meet_closed {
            out.push((0..n).filter(|&x| has(x)).collect());
        }
    }
    Ok(out)
}

/// Partition induced on a filter-closed relation; exposed for tests.
pub fn partition_from_biarrow(a: &FiniteAlgebra, filter: &[usize]) -> Result<Partition> {
    let d = derived(a)?;
    let n = a.size();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        for y in 0..n {
            if filter.contains(&d.biarrow[x * n + y]) {
                uf.union(x, y);
            }
        }
    }
    Ok(uf.into_partition())
}
