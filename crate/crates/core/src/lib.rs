//! Exact deciders, oracles and proof-step verifiers for even perfect
//! numbers written as sums of two m-th powers.
//!
//! The crate answers questions of the form "is this even perfect number a
//! sum of two m-th powers, and why" with exact integer arithmetic only.
//! Two independent decision routes (exhaustive scan and divisor-driven
//! bisection) are kept separate so they can cross-check each other, and
//! every inequality chain used to rule cases out is replayed on concrete
//! instances rather than trusted.

pub mod abc;
pub mod bigmath;
pub(crate) mod decimal;
pub mod mersenne;
pub mod par;
pub mod powersum;
pub mod proofcheck;
