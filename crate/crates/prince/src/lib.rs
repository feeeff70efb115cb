//! IO, serialization and command-line plumbing around `prince-core`.

pub mod bench;
pub mod cli;
pub mod document;
pub mod export;
pub mod fimi;
pub mod random;

pub use prince_core as core;
