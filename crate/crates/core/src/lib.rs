//! Exact computations with monomial ideals of Borel type.
//!
//! The crate provides the underlying monomial-ideal arithmetic (minimal
//! generators, intersections, colons, saturations, irreducible
//! decompositions), the sequential chain of a Borel type ideal together
//! with three independent routes to its Castelnuovo-Mumford regularity,
//! an exact Stanley depth solver over interval partitions of the
//! characteristic poset, and a small laboratory for generating families
//! of such ideals and checking the sharp sdepth bounds against them.

mod bitset;
pub mod borel;
pub mod error;
pub mod family;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod poset;
pub mod regularity;
pub mod solver;
pub mod stanley;

pub use error::{Error, Result};
pub use ideal::{IrreducibleIdeal, MonomialIdeal};
pub use monomial::Monomial;
