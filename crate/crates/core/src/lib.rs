//! Exact computations for cubic fourfolds with finite groups of symplectic
//! automorphisms.
//!
//! - [`cyclo`]: arithmetic in cyclotomic fields and the literal grammar.
//! - [`linalg`]: exact row reduction, kernels, spans, commutants.
//! - [`group`]: matrix-group closure, spectra, linear characters, and the
//!   symplectic normal-form classifier.
//! - [`invariants`]: polynomials, semi-invariant spaces, Molien series and
//!   moduli bookkeeping.
//! - [`smooth`]: smoothness certificates by reduction modulo a prime.
//! - [`catalog`]: the bundled group data and the reproduction harness.

pub mod cyclo;
pub mod catalog;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod smooth;

pub use cyclo::{parse_cyclotomic, Cyclotomic, Rational};
