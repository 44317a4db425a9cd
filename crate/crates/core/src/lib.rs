pub mod blocks;
pub mod chartab;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod fusion;
pub mod permgroup;
pub mod star;
pub mod verdicts;

pub use error::{Error, Result};
