//! Finite algebras with dense operation tables.
//!
//! Elements are `0..size`. A table for a k-ary symbol stores `size^k`
//! values indexed in mixed radix, most significant argument first:
//! `idx(args) = fold(0, |acc, a| acc * size + a)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::signature::Signature;
use crate::term::Term;

/// Variable index -> element.
pub type Assignment = BTreeMap<u32, usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    sig: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        sig: Signature,
        size: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: "universe must be nonempty".to_string(),
            });
        }
        if tables.len() != sig.len() {
            return Err(Error::BadTable {
                symbol: String::new(),
                msg: format!("{} tables for {} symbols", tables.len(), sig.len()),
            });
        }
        for (idx, table) in tables.iter().enumerate() {
            let want = size.pow(sig.arity(idx) as u32);
            if table.len() != want {
                return Err(Error::BadTable {
                    symbol: sig.name(idx).to_string(),
                    msg: format!("expected {want} entries, got {}", table.len()),
                });
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::BadTable {
                    symbol: sig.name(idx).to_string(),
                    msg: format!("value {bad} out of range for size {size}"),
                });
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            sig,
            size,
            tables,
            labels: BTreeMap::new(),
        })
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        for &e in labels.keys() {
            if e >= self.size {
                return Err(Error::ElementRange {
                    elem: e,
                    size: self.size,
                });
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label_of(&self, e: usize) -> Option<&str> {
        self.labels.get(&e).map(|s| s.as_str())
    }

    /// Element carrying the given label, if any.
    pub fn labeled(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(&e, _)| e)
    }

    pub fn table(&self, sym: usize) -> &[usize] {
        &self.tables[sym]
    }

    pub fn op(&self, sym: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.sig.arity(sym));
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.tables[sym][idx]
    }

    pub fn op_by_name(&self, name: &str, args: &[usize]) -> Option<usize> {
        self.sig.index_of(name).map(|i| self.op(i, args))
    }

    /// Required-symbol lookup for the builtin interpretations.
    pub fn require(&self, system: &'static str, symbol: &'static str, arity: usize) -> Result<usize> {
        match self.sig.index_of(symbol) {
            Some(i) if self.sig.arity(i) == arity => Ok(i),
            _ => Err(Error::MissingSymbol {
                system,
                symbol,
                arity,
            }),
        }
    }

    pub fn eval(&self, t: &Term, asg: &Assignment) -> Result<usize> {
        match t {
            Term::Var(i) => match asg.get(i) {
                Some(&e) if e < self.size => Ok(e),
                Some(&e) => Err(Error::ElementRange {
                    elem: e,
                    size: self.size,
                }),
                None => Err(Error::Unassigned(*i)),
            },
            Term::App(name, args) => {
                let Some(sym) = self.sig.index_of(name) else {
                    return Err(Error::UnknownSymbol {
                        name: name.clone(),
                        pos: 0,
                    });
                };
                if args.len() != self.sig.arity(sym) {
                    return Err(Error::Arity {
                        name: name.clone(),
                        expected: self.sig.arity(sym),
                        got: args.len(),
                        pos: 0,
                    });
                }
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval(a, asg)?);
                }
                Ok(self.op(sym, &vals))
            }
        }
    }

    /// Smallest subuniverse containing `seed` (constants always included).
    pub fn subuniverse_generated(&self, seed: &[usize]) -> Result<Vec<usize>> {
        for &e in seed {
            if e >= self.size {
                return Err(Error::ElementRange {
                    elem: e,
                    size: self.size,
                });
            }
        }
        let mut inside = vec![false; self.size];
        let mut members: Vec<usize> = Vec::new();
        let push = |e: usize, inside: &mut Vec<bool>, members: &mut Vec<usize>| {
            if !inside[e] {
                inside[e] = true;
                members.push(e);
            }
        };
        for &e in seed {
            push(e, &mut inside, &mut members);
        }
        for sym in 0..self.sig.len() {
            if self.sig.arity(sym) == 0 {
                push(self.tables[sym][0], &mut inside, &mut members);
            }
        }
        // Worklist closure: combine each new member with all current ones.
        let mut next = 0;
        while next < members.len() {
            let fresh = members[next];
            next += 1;
            for sym in 0..self.sig.len() {
                let k = self.sig.arity(sym);
                if k == 0 {
                    continue;
                }
                let snapshot = members.clone();
                for args in tuples_over(&snapshot, k) {
                    if !args.contains(&fresh) {
                        continue;
                    }
                    let v = self.op(sym, &args);
                    push(v, &mut inside, &mut members);
                }
            }
        }
        members.sort_unstable();
        Ok(members)
    }

    /// First element (ascending) whose singleton is a subuniverse.
    pub fn has_trivial_subalgebra(&self) -> Result<Option<usize>> {
        for a in 0..self.size {
            if self.subuniverse_generated(&[a])? == vec![a] {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }

    /// Quotient by a compatible partition; errors with the violating
    /// tuple when the partition is not a congruence.
    pub fn quotient(&self, theta: &Partition) -> Result<FiniteAlgebra> {
        if theta.size() != self.size {
            return Err(Error::BadPartition {
                size: self.size,
                msg: format!("partition covers 0..{}", theta.size()),
            });
        }
        self.check_compatible(theta)?;
        let blocks = theta.blocks();
        let m = blocks.len();
        let mut tables = Vec::with_capacity(self.sig.len());
        for sym in 0..self.sig.len() {
            let k = self.sig.arity(sym);
            let mut table = vec![0usize; m.pow(k as u32)];
            let mut args = vec![0usize; k];
            for idx in 0..table.len() {
                let mut rest = idx;
                for slot in (0..k).rev() {
                    args[slot] = blocks[rest % m][0];
                    rest /= m;
                }
                table[idx] = theta.block_of(self.op(sym, &args));
            }
            tables.push(table);
        }
        FiniteAlgebra::new(
            format!("{}/{}", self.name, theta),
            self.sig.clone(),
            m,
            tables,
        )
    }

    /// Verifies compatibility coordinatewise; single-coordinate
    /// substitutions suffice because multi-coordinate changes chain.
    pub fn check_compatible(&self, theta: &Partition) -> Result<()> {
        for sym in 0..self.sig.len() {
            let k = self.sig.arity(sym);
            if k == 0 {
                continue;
            }
            for (u, v) in related_pairs(theta) {
                let all: Vec<usize> = (0..self.size).collect();
                for coord in 0..k {
                    for ctx in tuples_over(&all, k - 1) {
                        let mut lhs = Vec::with_capacity(k);
                        let mut rhs = Vec::with_capacity(k);
                        for (slot, &c) in ctx.iter().enumerate() {
                            if slot == coord {
                                lhs.push(u);
                                rhs.push(v);
                            }
                            lhs.push(c);
                            rhs.push(c);
                        }
                        if coord == k - 1 {
                            lhs.push(u);
                            rhs.push(v);
                        }
                        let (a, b) = (self.op(sym, &lhs[..k]), self.op(sym, &rhs[..k]));
                        if !theta.same(a, b) {
                            return Err(Error::NotACongruence {
                                symbol: self.sig.name(sym).to_string(),
                                lhs: lhs[..k].to_vec(),
                                rhs: rhs[..k].to_vec(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// All k-tuples over the listed elements, lexicographic in list order.
pub fn tuples_over(elems: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total = elems.len().pow(k as u32);
    (0..total).map(move |mut idx| {
        let mut out = vec![0usize; k];
        for slot in (0..k).rev() {
            out[slot] = elems[idx % elems.len()];
            idx /= elems.len();
        }
        out
    })
}

fn related_pairs(theta: &Partition) -> Vec<(usize, usize)> {
    theta.pairs()
}

/// All assignments to the given variables (ascending), lexicographic.
pub fn assignments(vars: &[u32], size: usize) -> impl Iterator<Item = Assignment> + '_ {
    let total = size.pow(vars.len() as u32);
    (0..total).map(move |mut idx| {
        let mut asg = Assignment::new();
        for &v in vars.iter().rev() {
            asg.insert(v, idx % size);
            idx /= size;
        }
        asg
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiEquation {
    pub premises: Vec<(Term, Term)>,
    pub conclusion: (Term, Term),
}

impl QuasiEquation {
    pub fn equation(lhs: Term, rhs: Term) -> Self {
        QuasiEquation {
            premises: Vec::new(),
            conclusion: (lhs, rhs),
        }
    }

    pub fn vars(&self) -> Vec<u32> {
        let mut set = std::collections::BTreeSet::new();
        for (l, r) in self.premises.iter().chain(std::iter::once(&self.conclusion)) {
            set.extend(l.vars());
            set.extend(r.vars());
        }
        set.into_iter().collect()
    }
}

/// Universally quantified satisfaction; on failure returns the first
/// violating assignment in lexicographic order.
pub fn satisfies_quasiequation(
    a: &FiniteAlgebra,
    q: &QuasiEquation,
) -> Result<(bool, Option<Assignment>)> {
    let vars = q.vars();
    for asg in assignments(&vars, a.size()) {
        let mut premises_hold = true;
        for (l, r) in &q.premises {
            if a.eval(l, &asg)? != a.eval(r, &asg)? {
                premises_hold = false;
                break;
            }
        }
        if !premises_hold {
            continue;
        }
        let (l, r) = &q.conclusion;
        if a.eval(l, &asg)? != a.eval(r, &asg)? {
            return Ok((false, Some(asg)));
        }
    }
    Ok((true, None))
}
