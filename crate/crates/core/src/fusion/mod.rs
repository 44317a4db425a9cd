//! Fusion systems of blocks on their defect groups.

pub mod algebra;
pub mod focal;
pub mod system;

pub use algebra::{
    block_idempotent, block_idempotents_mod_p, brauer_homomorphism, centralizer_of_subgroup,
    GroupAlgebraElement, IDEMPOTENT_BOUND,
};
pub use focal::{
    direct_factor_check, focal_subgroup, hyperfocal_subgroup, is_nilpotent_fusion,
    principal_oracles,
};
pub use system::{block_fusion_system, group_fusion_system, AutData, FusionKind, FusionSystem};
