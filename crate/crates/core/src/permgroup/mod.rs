//! Permutation groups: stabilizer chains, classes and subgroup constructions.

pub mod builders;
mod chain;
pub mod classes;
pub mod enumerate;
pub mod group;
pub mod io;
pub mod perm;
pub mod subgroups;

pub use classes::{conjugacy_classes, ClassStructure, ConjugacyClass};
pub use enumerate::ElementIndex;
pub use group::{ElementKey, PermGroup};
pub use io::GroupFile;
pub use perm::{pprime_decomposition, Permutation};
pub use subgroups::{subgroup_class_data, subgroup_classes, DEFAULT_SUBGROUP_CAP};

/// Builds a group from generators of a common degree.
pub fn build_group(degree: usize, generators: Vec<Permutation>) -> crate::Result<PermGroup> {
    PermGroup::new(degree, generators)
}
