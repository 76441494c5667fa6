//! Finite-instance engine for internal reflexive graphs and precategories
//! relative to classes of split epimorphisms.

pub mod actions;
pub mod additive;
pub mod corpus;
pub mod epic;
pub mod format;
pub mod campaign;
pub mod error;
pub mod graphs;
pub mod halfrefl;
pub mod homs;
pub mod morphism;
pub mod ops;
pub mod par;
pub mod ptset_models;
pub mod points;
pub mod structure;
pub mod verdict;

pub use error::{IcatError, Result};
pub use morphism::Morphism;
pub use structure::{Kind, Obj, Structure};
