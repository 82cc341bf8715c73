//! Terms over a signature, with the canonical printer.
//!
//! The printed form is the interchange format: no whitespace anywhere
//! except exactly one space after each argument comma. Tests compare
//! printed terms byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// Variable `v{index}`; indices start at 1.
    Var(u32),
    /// Application of a named symbol. Constants carry an empty argument list.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        debug_assert!(i >= 1);
        Term::Var(i)
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }

    pub fn constant(name: &str) -> Term {
        Term::App(name.to_string(), Vec::new())
    }

    /// Variable indices occurring in the term, ascending.
    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    /// Simultaneous substitution; variables absent from the map stay put.
    pub fn subst(&self, map: &BTreeMap<u32, Term>) -> Term {
        match self {
            Term::Var(i) => map.get(i).cloned().unwrap_or_else(|| self.clone()),
            Term::App(name, args) => {
                Term::App(name.clone(), args.iter().map(|a| a.subst(map)).collect())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "v{i}"),
            Term::App(name, args) => {
                write!(f, "{name}")?;
                if !args.is_empty() {
                    write!(f, "(")?;
                    for (k, a) in args.iter().enumerate() {
                        if k > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}
