//! CLI plumbing: file formats, batch search, catalogs and reports.

pub mod catalog;
pub mod commands;
pub mod io;
pub mod recount;
pub mod search;
pub mod serde_bigint;
