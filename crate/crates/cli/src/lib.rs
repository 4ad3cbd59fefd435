//! Command-line front end for `zosc-core`.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod output;
