//! Finite permutation groups, class functions and character tables.

mod chartable;
mod classfn;
mod group;
mod linalg;
mod perm;

pub use chartable::{character_table_oracle, CharacterTable};
pub use classfn::{induce, permutation_character, ClassFunction, Decomposition, Verdict};
pub(crate) use group::reduce_generators;
pub use group::PermGroup;
pub use perm::{Perm, Permutation};
