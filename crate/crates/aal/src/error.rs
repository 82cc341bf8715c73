use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown symbol `{name}` at byte {pos}")]
    UnknownSymbol { name: String, pos: usize },

    #[error("symbol `{name}` takes {expected} argument(s), got {got} (byte {pos})")]
    Arity {
        name: String,
        expected: usize,
        got: usize,
        pos: usize,
    },

    #[error("variable v{0} has no assigned value")]
    Unassigned(u32),

    #[error("element {elem} out of range for a universe of size {size}")]
    ElementRange { elem: usize, size: usize },

    #[error("bad signature: {0}")]
    BadSignature(String),

    #[error("bad operation table for `{symbol}`: {msg}")]
    BadTable { symbol: String, msg: String },

    #[error("{file}:{line}: {msg}")]
    FileFormat {
        file: String,
        line: usize,
        msg: String,
    },

    #[error("not a poset: {0}")]
    NotAPoset(String),

    #[error("not a lattice: elements {x} and {y} have no {bound}")]
    NotALattice { x: usize, y: usize, bound: Bound },

    #[error("lattice is not dual pseudocomplemented (witness element {witness}); property requires DPC")]
    RequiresDpc { witness: usize },

    #[error("lattice is not distributive (witness ({x}, {y}, {z}))")]
    NotDistributive { x: usize, y: usize, z: usize },

    #[error("partition is not compatible with `{symbol}`: arguments {lhs:?} ~ {rhs:?} give values in distinct blocks")]
    NotACongruence {
        symbol: String,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },

    #[error("partition is not an equivalence on 0..{size}: {msg}")]
    BadPartition { size: usize, msg: String },

    #[error("universe size {size} exceeds the cap {cap} (override with AAL_MAX_UNIVERSE)")]
    UniverseCap { size: usize, cap: usize },

    #[error("{what} of size {size} exceeds the budget {cap}")]
    Budget {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("no quasi-equation of K may fail on the trivial algebra, yet `{0}` does")]
    KExcludesTrivial(String),

    #[error("builtin system `{system}` needs symbol `{symbol}/{arity}` in the algebra's signature")]
    MissingSymbol {
        system: &'static str,
        symbol: &'static str,
        arity: usize,
    },

    #[error("psi sequence `{name}` has no entry or template for n = {n}")]
    PsiUndefined { name: String, n: usize },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Join,
    Meet,
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Join => write!(f, "least upper bound"),
            Bound::Meet => write!(f, "greatest lower bound"),
        }
    }
}
