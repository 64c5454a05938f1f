//! Size guards for the powerset and closure constructions.
//!
//! Transition reversal builds full powersets and the transition-semigroup
//! closure is worst-case doubly exponential, so every construction that can
//! blow up takes a [`Caps`] and refuses (with [`crate::Error::CapExceeded`])
//! instead of allocating unboundedly.

/// Limits for the constructions that can explode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of subset states per sort when reversing transitions (default 2^20).
    pub subset_states: u64,
    /// Maximum number of elements in a semigroup closure (default 10^6).
    pub closure_elems: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            subset_states: 1 << 20,
            closure_elems: 1_000_000,
        }
    }
}

impl Caps {
    /// One value for both guards, as set by the CLI `--cap` flag or `LASSOKIT_CAP`.
    pub fn uniform(cap: u64) -> Self {
        Caps {
            subset_states: cap,
            closure_elems: cap,
        }
    }
}
