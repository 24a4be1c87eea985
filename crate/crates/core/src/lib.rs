//! Exact-arithmetic certificates for a convex counterexample.
//!
//! The library builds machine-checkable certificates around a single convex,
//! finite, lower semicontinuous function on the incomplete space `c_c` (the
//! real sequences with finite support, under the `l2` norm) whose
//! subdifferential is empty at every point. Everything downstream of that
//! fact is certified with exact rational arithmetic:
//!
//! - pointwise refutation of every candidate subgradient, with an exact
//!   positive margin ([`func::refute_subgradient`]),
//! - failure of the subdifferential sum and chain rules
//!   ([`duality::certify_sum_rule_failure`], [`duality::certify_chain_rule_failure`]),
//! - a primal/dual pair with a positive duality gap whose value is enclosed
//!   in a certified rational interval ([`duality::certify_duality_gap`]),
//! - non-exactness of the infimal convolution of the conjugates
//!   ([`duality::infimal_convolution_enclosure`]).
//!
//! Values that involve the constant `zeta(s)` are carried symbolically by
//! [`exact_number::ExactValue`] and only compared through certified rational
//! enclosures; no floating point participates in any verdict.
//!
//! With the default `parallel` feature the seeded verification sweeps and
//! enclosure partial sums run on rayon; disabling the feature falls back to
//! equivalent sequential code with bit-identical results.

pub mod certificate;
pub mod duality;
pub mod exact_number;
pub mod func;
pub mod operator;
mod par;
pub mod rational;
pub mod seq;
pub mod seqgen;
pub mod suite;

pub use certificate::{Certificate, Verdict, VerificationReport};
pub use exact_number::{Enclosure, ExactValue, RefinementBudget};
pub use rational::Rational;
pub use seq::FiniteSeq;
