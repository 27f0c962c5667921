//! Solvers for covering finite integer sets by arithmetic progressions.
//!
//! * [`cap`]: minimum cover by progressions contained in the set, via a
//!   bounded search tree with `2^O(k^2)` nodes.
//! * [`xcap`]: the disjoint (exact) variant, `2^O(k^3)` nodes.
//! * [`zp`]: modular progressions, the suitable-prime reduction and
//!   three-term-progression preservation checks.
//! * [`below`]: `t`-uniform set cover below the `ceil(n/t)` guarantee by
//!   greedy selection plus color coding, and its progression special case.
//! * [`oracle`] and [`theorems`]: brute-force references and falsification
//!   harnesses used by the test suites.
//! * [`generate`]: seeded instance generators.
//! * [`checks`]: randomized property suites with counterexample shrinking.

pub mod ap;
pub mod below;
pub mod cap;
pub mod checks;
pub mod error;
pub mod generate;
pub mod instance;
pub mod oracle;
pub mod setcover;
pub mod solution;
pub mod theorems;
pub mod xcap;
pub mod zp;

pub use ap::{intersect, is_ap, Ap};
pub use error::{Error, Result};
pub use instance::{
    enumerate_all_aps, enumerate_maximal_aps, has_three_term_ap, make_ap, prefix_meet, Instance,
};
pub use num_bigint::BigInt;
pub use solution::{verify_solution, CoverKind, Solution, Violation};
