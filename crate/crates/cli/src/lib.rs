//! Configuration, orchestration and file output behind the `mayerfield`
//! binary.

pub mod commands;
pub mod config;
pub mod output;
