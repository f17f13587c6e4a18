//! File formats, result cache, per-case pipeline and command-line driver.

pub mod cache;
pub mod cli;
pub mod format;
pub mod pipeline;
