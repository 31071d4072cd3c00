//! Rings of functions on finite p-groups that restrict to endomorphisms on
//! every cell of an abelian cover.

pub mod analysis;
pub mod cover;
pub mod error;
pub mod funcring;
pub mod graph;
pub mod group;
pub mod mask;
pub mod ring;
pub mod structure;
pub mod subgroup;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use mask::Mask;
pub use subgroup::Subgroup;
