//! File formats, threaded enumeration and the `wpos` command line on top of
//! `wpos-core`.

pub mod cli;
pub mod dot;
pub mod format;
pub mod numfmt;
pub mod parallel;

pub use format::{load_game, GameFile, LoadError, ResourceSpec};
pub use parallel::enumerate_parallel;
