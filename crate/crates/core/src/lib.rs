//! Exact subgroup calculus for the lamplighter groups `(ℤ/p)ⁿ ≀ ℤ`.
//!
//! Subgroups are handled through triples `(s, V₀, v)`: the projection
//! generator `s`, the base part `V₀` (a submodule of `Rⁿ` with finite
//! invariance exponent) and a witness `v` with `(v, s)` in the subgroup.

pub mod completion;
pub mod counting;
pub mod error;
pub mod gradient;
pub mod group;
pub mod normal_lattice;
pub mod ring;
pub mod rmodule;
pub mod tree;

pub use error::{Error, Result};
