//! Depth functions `k ↦ depth S/I^k` of monomial ideals.
//!
//! The crate pairs formula-driven depth computations (linear quotients,
//! Rees-algebra Gröbner bounds, closed formulas for combinatorial families)
//! with an independent multigraded Betti-number oracle.

pub mod constructions;
pub mod error;
pub mod linquot;
pub mod monomial;
pub mod par;
pub mod resolution;
pub mod sweep;
pub mod text;
pub mod toric;

pub use error::{Error, Result};
pub use monomial::{minimalize, Monomial, MonomialIdeal, MultidegreeSet, VariableSet};
pub use par::Execution;
pub use resolution::{BettiTable, DepthProfile, Field, Oracle};
