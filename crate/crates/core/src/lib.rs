//! Finite category theory engine: comma objects, lax slices, change of base,
//! Kan extensions and coequalizers, checked exhaustively on small instances.

pub mod base_change;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod fincat;
pub mod kan;
pub mod lax_slice;
pub mod search;
pub mod thin2;

pub use error::{Error, Report, Result, Violation};
