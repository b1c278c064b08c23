//! Command line, file formats and experiment runner built on `incmat-core`.

pub mod cli;
pub mod formats;
pub mod suite;
pub mod sweep;
