//! A finite-model workbench for lattice-based logics.
//!
//! The crate revolves around three interlocking views of the same small
//! structures:
//!
//! * **algebras** — finite universes `0..n` with dense operation tables
//!   ([`algebra`]), congruences and Leibniz congruences ([`congruence`]);
//! * **orders** — finite posets and lattices, dual pseudocomplements,
//!   and the equational/irreducibility conditions the acceptance oracle
//!   sweeps over all small lattices ([`poset`], [`lattice`],
//!   [`enumerate`]);
//! * **deductive filters** — closure systems over an algebra picked out
//!   by rules or by one of the builtin logics, their filter lattices,
//!   and inconsistency-sequence verification ([`filters`]).
//!
//! On top sit three worked families: Heyting algebras from up-sets of
//! posets ([`heyting`]), modal algebras from Kripke frames ([`modal`]),
//! and De Morgan monoids ([`demorgan`]).

pub mod algebra;
pub mod bitset;
pub mod congruence;
pub mod demorgan;
pub mod enumerate;
pub mod error;
pub mod files;
pub mod filters;
pub mod heyting;
pub mod lattice;
pub mod limits;
pub mod modal;
pub mod parse;
pub mod partition;
pub mod poset;
pub mod signature;
pub mod term;

pub use error::{Error, Result};
