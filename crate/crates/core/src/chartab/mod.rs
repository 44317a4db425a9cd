//! Exact ordinary character tables.

pub mod dixon;
pub mod modular;
pub mod table;

pub use dixon::class_mult_coefficients;
pub use table::{character_table, CharacterTable, CLASS_COUNT_BOUND};
