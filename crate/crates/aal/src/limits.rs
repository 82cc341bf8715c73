//! Size caps guarding the exhaustive loops.
//!
//! Everything in this crate enumerates: assignments, subsets, partitions,
//! labeled orders. The caps keep accidental large inputs from looking like
//! hangs. They are overridable per call site and, for the universe cap,
//! via the `AAL_MAX_UNIVERSE` environment variable.

pub const DEFAULT_MAX_UNIVERSE: usize = 12;
pub const DEFAULT_ENUM_CAP: usize = 8;
/// Largest congruence/filter family we will build an explicit lattice for.
pub const DEFAULT_FAMILY_CAP: usize = 512;
/// Hard ceiling: element sets are manipulated as u64 masks.
pub const HARD_MAX_UNIVERSE: usize = 32;

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Universe-size cap for the 2^n subset loops (filter lattices) and
    /// congruence-lattice construction.
    pub max_universe: usize,
    /// Largest n for lattice enumeration.
    pub enum_cap: usize,
    /// Largest congruence/filter family turned into an explicit lattice.
    pub family_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_universe: DEFAULT_MAX_UNIVERSE,
            enum_cap: DEFAULT_ENUM_CAP,
            family_cap: DEFAULT_FAMILY_CAP,
        }
    }
}

impl Caps {
    /// Default caps with `AAL_MAX_UNIVERSE` applied when set and parseable.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Ok(v) = std::env::var("AAL_MAX_UNIVERSE") {
            if let Ok(n) = v.trim().parse::<usize>() {
                caps.max_universe = n.min(HARD_MAX_UNIVERSE);
            }
        }
        caps
    }

    pub fn check_universe(&self, size: usize) -> crate::error::Result<()> {
        let cap = self.max_universe.min(HARD_MAX_UNIVERSE);
        if size > cap {
            return Err(crate::error::Error::UniverseCap { size, cap });
        }
        Ok(())
    }
}
