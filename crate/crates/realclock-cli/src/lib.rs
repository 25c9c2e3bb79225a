//! Library surface of the scenario runner, kept separate from the binary
//! so integration tests can drive validation, tables and manifests
//! directly.

pub mod config;
pub mod error;
pub mod manifest;
pub mod scenarios;
pub mod table;
