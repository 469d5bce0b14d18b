//! WalkSAT-style stochastic local search for CNF satisfiability.
//!
//! The default strategy computes break values lazily: a first pass over the
//! candidates' true-literal clause lists looks only for a 0-break variable,
//! and the full minimum-break count runs only when none exists, resuming
//! where the first pass stopped and pruning as soon as a candidate cannot
//! beat the incumbent. Fully counting and fully caching baselines share the
//! same selection rule so that the three can be compared directly.
//!
//! ```
//! use walksnc::{cnf, solver};
//!
//! let f = cnf::parse_dimacs("p cnf 2 2\n1 -2 0\n-1 2 0\n").unwrap();
//! let out = solver::solve(&f, &solver::SolverConfig::default()).unwrap();
//! assert!(out.is_sat());
//! ```

pub mod bench;
pub mod cnf;
pub mod error;
pub mod pickers;
pub mod rng;
pub mod solver;
pub mod state;

pub use cnf::{Formula, Lit, Var};
pub use error::{Error, ParseError, Result};
pub use pickers::{PickStats, PickStrategy};
pub use solver::{solve, SolveOutcome, SolveStatus, SolverConfig};
pub use state::{Assignment, SolverState};
