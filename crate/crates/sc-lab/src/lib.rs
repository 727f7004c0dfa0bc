//! State-complexity laboratory for combined operations on regular languages.
//!
//! The crate builds complete DFAs for combinations of catenation and boolean
//! operations (union, intersection, symmetric difference), generates the
//! Brzozowski-style witness families for the five combination shapes, and
//! verifies closed-form state-complexity bounds by explicit construction,
//! minimization, and counting.
//!
//! Module layout:
//! * [`dfa`] - complete DFAs, word actions, permutation utilities, Hopcroft
//!   minimization with canonical breadth-first numbering.
//! * [`json`] - the on-disk DFA format.
//! * [`construct`] - the catenation product, the boolean product, and
//!   expression trees combining them, with structured state labels.
//! * [`witness`] - Brzozowski automata X_n(σ1,σ2,σ3;rest) and the five
//!   named witness families.
//! * [`bounds`] - closed-form state-complexity formulas.
//! * [`tableau`] - the n×p tableau model of states (i,T) in A·(B∘C):
//!   saturation, rectangle/right-triangle detection, class counting, and the
//!   xor indistinguishability demonstration.
//! * [`harness`] - verify/sweep/search experiment drivers and report output,
//!   shared by the `sc-lab` binary.

pub mod bitset;
pub mod bounds;
pub mod construct;
pub mod dfa;
mod error;
pub mod harness;
pub mod json;
pub mod tableau;
pub mod witness;

pub use error::{Error, Result};
