pub mod analyze;
pub mod catalog;
pub mod suite;
