//! File formats, exports and report rendering for the `bdncg` CLI.

pub mod export;
pub mod format;
pub mod output;
