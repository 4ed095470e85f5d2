//! Numerical companion to the critical-point geometry of degree-9
//! polynomials with zeros in the closed unit disk (the Sendov problem):
//!
//! * complex polynomial arithmetic with a simultaneous root finder,
//! * the instance model for a distinguished zero and its distance statistics,
//!   with unconditional identity checks and hypothesis-gated lemma checks,
//! * the bisector/extremal geometry behind the half-plane critical-point
//!   bound,
//! * Mahler measures, binomially weighted composition, and the
//!   sorted-product inequality they imply,
//! * an outward-rounded interval certifier that proves the scalar
//!   inequality chain (claims C1-C8) by branch and bound,
//! * deterministic generators, a multistart extremal search, and the
//!   property-suite harness behind the CLI.

pub mod certify;
pub mod claims;
pub mod error;
pub mod generate;
pub mod halfplane;
pub mod interval;
pub mod mahler;
pub mod metrics;
pub mod poly;
pub mod search;
pub mod suite;

pub use error::{Error, Result};
pub use poly::{Polynomial, RootFindResult, C64};
