//! Lasso automata, lasso semigroups and Wilke algebras over finite alphabets,
//! with the language-reversing transformations between them.
//!
//! The crate provides:
//!
//! - [`lasso`]: words, lassos (finite representations of ultimately periodic
//!   words), canonical forms, and bounded language samples used as ground
//!   truth.
//! - [`automaton`]: deterministic lasso automata with acceptance,
//!   reachability, transition reversal, complement, morphisms, behavioral
//!   partitions, the transition semigroup, and exact decision procedures for
//!   the circularity/coherence conditions and their reverse variants.
//! - [`semigroup`]: finite lasso semigroups and Wilke-algebra axiom checks,
//!   plus extended structures (quotients of the free lasso semigroup with a
//!   recognizing set) and their morphisms.
//! - [`functors`]: the transformations `aut` and `alg` between the two
//!   worlds, Brzozowski-style minimization, the syntactic recognizer, the
//!   algebraic circularity/coherence check, and the adjunction probe.
//! - [`json`]: the file schemas used by the CLI.
//! - [`corpus`] and [`oracle`]: the fixed verification corpus and the
//!   independent reference implementations the test suites check against.
//! - [`selftest`]: the runnable verification suite behind `lassokit selftest`.
//!
//! Bounded sampling and the corpus sweeps run data-parallel via rayon when
//! the `parallel` feature (default) is enabled; without it the same code
//! paths run sequentially.

pub mod automaton;
pub mod caps;
pub mod corpus;
pub mod error;
pub mod functors;
pub mod json;
pub mod lasso;
pub mod oracle;
mod par;
pub mod selftest;
pub mod semigroup;

pub use caps::Caps;
pub use error::{Error, Result};
pub use lasso::{enumerate_lassos, Alphabet, LanguageSample, Lasso, Word};
