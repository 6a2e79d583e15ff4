//! Exact-arithmetic Burnside-ring invariants for finite permutation groups,
//! and height-1 cardinality expressions built on top of them.
//!
//! The crate is organized around four layers:
//!
//! * [`poset`] — finite posets, their incidence algebra, and the Möbius
//!   function with both inversion formulas.
//! * [`group`] — concrete permutation groups: element enumeration, the full
//!   subgroup lattice, conjugacy classes of subgroups, Sylow subgroups,
//!   residual subgroups, and finite G-sets.
//! * [`burnside`] — the Burnside ring of a group: table of marks, the mark
//!   homomorphism and its inverse, ring arithmetic in ghost coordinates,
//!   congruence checks, and primitive idempotents (rational and p-local).
//! * [`cardinality`] — Laurent polynomials in the formal symbol `x = |BC_p|`
//!   and the cardinality formulas for classifying spaces and π-finite spaces.
//!
//! All arithmetic is exact: integers where the theory gives integers,
//! arbitrary-precision rationals everywhere else. No floating point.
//!
//! Heavy per-class work (lattice enumeration, table-of-marks rows, Möbius
//! rows, idempotent assembly) runs data-parallel via rayon when the
//! `parallel` feature is enabled (the default); see [`parallel`] for the
//! runtime switch used by the benchmarks.

pub mod burnside;
pub mod cardinality;
pub mod group;
pub mod parallel;
pub mod poset;

pub mod rational;

mod arith;
mod bits;
mod error;

pub use error::{Error, Result};
pub use rational::Rat;
