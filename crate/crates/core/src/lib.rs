//! Finite-model toolkit for generalized effect algebras.
//!
//! A model is a [`GeaTable`]: a partial commutative sum on `n` named
//! elements. On top of it the crate computes the exocenter, hull systems,
//! SK-congruences with their splitting maps, and the type decomposition of
//! dimension equivalence relations.

pub mod canon;
pub mod congruence;
pub mod dimension;
pub mod elemset;
pub mod error;
pub mod exocenter;
pub mod fixtures;
pub mod gea;
pub mod hull;

pub use elemset::ElemSet;
pub use error::{Axiom, CoreError, Result};
pub use exocenter::{ExoMap, ExoSet};
pub use gea::GeaTable;
pub use congruence::{EquivRel, SkContext, SkReport};
pub use hull::HullSystem;
