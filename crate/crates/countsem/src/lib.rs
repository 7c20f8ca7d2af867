//! Numerical and boolean semantics for abstract argumentation frameworks.
//!
//! The crate models directed attack graphs and evaluates them three ways:
//!
//! * [`counting`] assigns every argument a strength in `[0, 1]` as the fixed
//!   point of `v = e - alpha * A~ * v`, where `A~` is the attack matrix scaled
//!   by its infinity norm and `alpha` is a damping factor that discounts long
//!   attack/defense walks.
//! * [`boolean`] computes classical extensions with packed boolean matrix
//!   algebra (grounded fixpoint, stable operator).
//! * [`enumerate`] brute-forces the classical extensions directly from their
//!   definitions and serves as the oracle for the boolean route.
//!
//! [`ranking`] turns strength vectors into total preorders and audits them
//! against a catalogue of ranking axioms; [`io`] covers the APX/TGF formats,
//! JSON/CSV reports and the seeded random framework generator.

pub mod af;
pub mod boolean;
pub mod cli;
pub mod counting;
pub mod enumerate;
pub mod io;
pub mod matrix;
pub mod ranking;

#[cfg(test)]
pub(crate) mod testutil;

pub use af::{ArgSet, ArgumentationFramework};
pub use counting::StrengthVector;
pub use matrix::AttackMatrix;
